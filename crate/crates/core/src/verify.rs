//! The built-in verification suite: every check the toolkit promises, with
//! pinned tolerances, runnable end to end via `verify_all`. Each criterion
//! returns a pass flag and a deterministic detail string, so two runs with
//! the same seed serialize identically.

use crate::bargmann::{invariance_report, verify_osp_relations_diff, RealizationKind};
use crate::error::Result;
use crate::fock::FockSpace;
use crate::group_theory::{finite_symmetric_square, so3_symmetric_square, table_by_name};
use crate::hamiltonian::{
    build_angular_momentum, build_hamiltonian, build_hamiltonian_algebraic, sector_spectrum,
    JTParams, SectorLabel,
};
use crate::poly::Polynomial;
use crate::qes::{
    build_recurrence_system, closed_form_energies, determinant_polynomial, explore_half_integer,
    qes_full_run, RootClass,
};
use crate::superalgebra::{build_generators, verify_relations};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_CUTOFF: usize = 12;
pub const DEFAULT_MARGIN: usize = 1;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub all_pass: bool,
}

fn rng_for(seed: u64, criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(criterion.wrapping_mul(0x9E3779B97F4A7C15)))
}

/// Run every criterion; the report is byte-deterministic for a fixed seed.
pub fn verify_all(seed: u64) -> Result<VerifyReport> {
    let criteria = vec![
        criterion_01_algebra_table(seed)?,
        criterion_02_hamiltonian_identity(seed)?,
        criterion_03_uncoupled_limit(seed)?,
        criterion_04_closed_form_consistency(seed)?,
        criterion_05_kappa_zero_roots(seed)?,
        criterion_06_half_integer_report(seed)?,
        criterion_07_bargmann_patterns(seed)?,
        criterion_08_invariance_diagnostic(seed)?,
        criterion_09_oracle_classification(seed)?,
        criterion_10_group_theory(seed)?,
    ];
    let all_pass = criteria.iter().all(|c| c.pass);
    Ok(VerifyReport {
        schema: 1,
        seed,
        criteria,
        all_pass,
    })
}

/// Criterion 1: all 26 sign-expanded relations on the cutoff-8 interior with
/// residual < 1e-12, plus the nilpotent anticommutators and [N, su(1,1)] = 0.
pub fn criterion_01_algebra_table(_seed: u64) -> Result<CriterionResult> {
    let space = FockSpace::new(8)?;
    let gens = build_generators(&space);
    let report = verify_relations(&gens, &space, DEFAULT_MARGIN)?;
    let core_count = report.relations.len();
    let max_core = report
        .relations
        .iter()
        .fold(0.0f64, |m, c| m.max(c.residual));
    let max_supp = report
        .supplementary
        .iter()
        .fold(0.0f64, |m, c| m.max(c.residual));
    let pass = core_count == 26 && report.all_pass;
    Ok(CriterionResult {
        id: 1,
        name: "algebra table: 26 relations + nilpotents + [N, su(1,1)] on cutoff-8 interior",
        pass,
        details: format!(
            "relations={core_count}, max residual {max_core:e}, supplementary max {max_supp:e}, tolerance 1e-12"
        ),
    })
}

/// Criterion 2: raw vs algebraized Hamiltonian entrywise < 1e-13 at 20 random
/// parameter points; [H, J1] interior residual < 1e-12.
pub fn criterion_02_hamiltonian_identity(seed: u64) -> Result<CriterionResult> {
    let mut rng = rng_for(seed, 2);
    let space = FockSpace::new(8)?;
    let gens = build_generators(&space);
    let proj = space.interior_projection(DEFAULT_MARGIN)?;
    let mut max_diff = 0.0f64;
    let mut max_comm = 0.0f64;
    for _ in 0..20 {
        let params = JTParams::new(
            rng.random_range(-2.0..=2.0),
            rng.random_range(-2.0..=2.0),
        )?;
        let h = build_hamiltonian(&space, &params);
        let h_alg = build_hamiltonian_algebraic(&gens, &params);
        max_diff = max_diff.max(h.sub(&h_alg)?.max_abs());
        let j1 = build_angular_momentum(&space);
        let comm = h.bracket(&j1, crate::fock::BracketKind::Commutator)?;
        max_comm = max_comm.max(proj.mul(&comm)?.mul(&proj)?.max_abs());
    }
    let pass = max_diff < 1e-13 && max_comm < 1e-12;
    Ok(CriterionResult {
        id: 2,
        name: "Hamiltonian identity: algebraized form entrywise, [H, J1] = 0",
        pass,
        details: format!(
            "entrywise max {max_diff:e} (tol 1e-13), commutator max {max_comm:e} (tol 1e-12), 20 points"
        ),
    })
}

/// Criterion 3: the j = 0 sector spectrum at kappa = 0 equals the analytic
/// multiset {2k + 3/2 + 2mu} U {2k + 3/2 - 2mu} to 1e-12; at mu = 0 the
/// eigenvalues pair up as {1.5, 1.5, 3.5, 3.5, ...}.
pub fn criterion_03_uncoupled_limit(seed: u64) -> Result<CriterionResult> {
    let mut rng = rng_for(seed, 3);
    let space = FockSpace::new(DEFAULT_CUTOFF)?;
    let j0 = SectorLabel::from_integer(0);
    let mut max_err = 0.0f64;
    let mut mus = vec![0.25, -0.6];
    mus.push(rng.random_range(-1.0..=1.0));
    for mu in &mus {
        let params = JTParams::new(*mu, 0.0)?;
        let report = sector_spectrum(&space, &params, j0)?;
        // independent analytic multiset
        let cutoff = space.cutoff();
        let mut analytic: Vec<f64> = (0..=cutoff)
            .map(|k| 2.0 * k as f64 + 1.5 + 2.0 * mu)
            .collect();
        analytic.extend((0..cutoff).map(|k| 2.0 * k as f64 + 1.5 - 2.0 * mu));
        analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if analytic.len() != report.eigenvalues.len() {
            max_err = f64::INFINITY;
            continue;
        }
        for (a, b) in report.eigenvalues.iter().zip(&analytic) {
            max_err = max_err.max((a - b).abs());
        }
    }
    // mu = 0 pairing
    let params = JTParams::new(0.0, 0.0)?;
    let report = sector_spectrum(&space, &params, j0)?;
    let mut pair_err = 0.0f64;
    for (i, expect) in [1.5, 1.5, 3.5, 3.5, 5.5, 5.5].iter().enumerate() {
        pair_err = pair_err.max((report.eigenvalues[i] - expect).abs());
    }
    let pass = max_err < 1e-12 && pair_err < 1e-12;
    Ok(CriterionResult {
        id: 3,
        name: "uncoupled limit: analytic j = 0 spectrum and mu = 0 pairing",
        pass,
        details: format!("analytic max err {max_err:e}, pairing max err {pair_err:e}, tol 1e-12"),
    })
}

/// Criterion 4: at 100 seeded (mu, kappa) in [-2,2] x (0,2], both closed-form
/// j = 0 energies are determinant roots (scaled |det| < 1e-8) and the
/// deflated quadratic factor matches E^2 + (2mu - 5/2)E - (3/2 + 6mu + 4k^2)
/// to 1e-10.
pub fn criterion_04_closed_form_consistency(seed: u64) -> Result<CriterionResult> {
    let mut rng = rng_for(seed, 4);
    let j0 = SectorLabel::from_integer(0);
    let mut max_det = 0.0f64;
    let mut max_coeff = 0.0f64;
    for _ in 0..100 {
        let mu = rng.random_range(-2.0..=2.0);
        let kappa = loop {
            let k: f64 = rng.random_range(0.0..=2.0);
            if k > 0.0 {
                break k;
            }
        };
        let params = JTParams::new(mu, kappa)?;
        let system = build_recurrence_system(RealizationKind::S, j0, &params)?;
        let det = determinant_polynomial(&system.system)?;
        for e in closed_form_energies(j0, &params)? {
            max_det = max_det.max(det.eval(e).abs() / det.eval_scale(e));
        }
        // deflate the (1 - E) factor: det = (1 - E) Q => Q = -det / (E - 1)
        let (q, rem) = Polynomial::new(det.coeffs.clone()).div_linear(1.0);
        let q = q.scale(-1.0);
        max_coeff = max_coeff.max(rem.abs());
        let target = [
            -(1.5 + 6.0 * mu + 4.0 * kappa * kappa),
            2.0 * mu - 2.5,
            1.0,
        ];
        for (i, t) in target.iter().enumerate() {
            let err = (q.coeff(i) - t).abs() / t.abs().max(1.0);
            max_coeff = max_coeff.max(err);
        }
    }
    let pass = max_det < 1e-8 && max_coeff < 1e-10;
    Ok(CriterionResult {
        id: 4,
        name: "closed-form/recurrence consistency at 100 random points (j = 0)",
        pass,
        details: format!(
            "scaled |det| max {max_det:e} (tol 1e-8), quadratic coeff err max {max_coeff:e} (tol 1e-10)"
        ),
    })
}

/// Criterion 5: the kappa = 0 root set for j = 0 is {1, 3, -1/2 - 2mu} to
/// 1e-10, and roots are continuous as kappa -> 0 (kappa = 1e-6 within 1e-5).
pub fn criterion_05_kappa_zero_roots(seed: u64) -> Result<CriterionResult> {
    let mut rng = rng_for(seed, 5);
    let j0 = SectorLabel::from_integer(0);
    let mut max_exact = 0.0f64;
    let mut max_cont = 0.0f64;
    for _ in 0..5 {
        let mu = rng.random_range(-1.5..=1.5);
        let zero = build_recurrence_system(RealizationKind::S, j0, &JTParams::new(mu, 0.0)?)?;
        let roots0 = determinant_polynomial(&zero.system)?.sorted_real_values();
        let mut expect = vec![1.0, 3.0, -0.5 - 2.0 * mu];
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if roots0.len() != 3 {
            max_exact = f64::INFINITY;
            continue;
        }
        for (r, e) in roots0.iter().zip(&expect) {
            max_exact = max_exact.max((r - e).abs());
        }
        let tiny = build_recurrence_system(RealizationKind::S, j0, &JTParams::new(mu, 1e-6)?)?;
        let roots_tiny = determinant_polynomial(&tiny.system)?.sorted_real_values();
        for (r, e) in roots_tiny.iter().zip(&roots0) {
            max_cont = max_cont.max((r - e).abs());
        }
    }
    let pass = max_exact < 1e-10 && max_cont < 1e-5;
    Ok(CriterionResult {
        id: 5,
        name: "kappa = 0 root set {1, 3, -1/2 - 2mu} and kappa -> 0 continuity",
        pass,
        details: format!(
            "exact-set max err {max_exact:e} (tol 1e-10), continuity max {max_cont:e} (tol 1e-5)"
        ),
    })
}

/// Criterion 6: the half-integer exploration at j = 1/2 runs for both kinds,
/// is deterministic, and reports (not asserts) closed-form matching.
pub fn criterion_06_half_integer_report(_seed: u64) -> Result<CriterionResult> {
    let j = SectorLabel::from_twice(1);
    let params = JTParams::new(0.0, 1.0)?;
    let mut deterministic = true;
    let mut matches = Vec::new();
    for kind in [RealizationKind::S, RealizationKind::T] {
        let report = explore_half_integer(kind, j, &params)?;
        let again = explore_half_integer(kind, j, &params)?;
        deterministic &= serde_json::to_string(&report).expect("serializable")
            == serde_json::to_string(&again).expect("serializable");
        matches.push(format!("{kind}: any_grid_match={}", report.any_grid_match));
        // every candidate must expose its determinant coefficients
        deterministic &= report.candidates.iter().all(|c| !c.det_coeffs.is_empty());
    }
    Ok(CriterionResult {
        id: 6,
        name: "half-integer candidate report at j = 1/2: produced, deterministic",
        pass: deterministic,
        details: matches.join("; "),
    })
}

/// Criterion 7: the per-relation pass/fail pattern of the differential
/// realizations is identical across j in {0, 1/2, 1, 3/2, 2}; trivially-true
/// relations pass with residual exactly zero.
pub fn criterion_07_bargmann_patterns(_seed: u64) -> Result<CriterionResult> {
    let js = [0i64, 1, 2, 3, 4].map(SectorLabel::from_twice);
    let mut details = Vec::new();
    let mut pass = true;
    for kind in [RealizationKind::S, RealizationKind::T] {
        let reports: Vec<_> = js
            .iter()
            .map(|&j| verify_osp_relations_diff(kind, j, 12))
            .collect();
        let pattern = reports[0].pattern.clone();
        let stable = reports.iter().all(|r| r.pattern == pattern);
        pass &= stable;
        // {V+,V+} = 0 must hold with residual exactly zero
        let trivial_exact = reports.iter().all(|r| {
            r.nilpotent
                .iter()
                .find(|c| c.relation.starts_with("{V+,V+}"))
                .map(|c| c.residual == 0.0)
                .unwrap_or(false)
        });
        pass &= trivial_exact;
        details.push(format!(
            "{kind}: pattern {pattern} (stable={stable}, trivial-exact={trivial_exact})"
        ));
    }
    Ok(CriterionResult {
        id: 7,
        name: "Bargmann realizations: relation pattern identical across five j",
        pass,
        details: details.join("; "),
    })
}

/// Criterion 8: invariance verdicts — invariant at kappa = 0 for j in
/// {0, 1, 2}; at kappa != 0 the j = 0 H1 leakage is present and the leading
/// term equals 2 kappa exactly (a finding about the printed operators).
pub fn criterion_08_invariance_diagnostic(_seed: u64) -> Result<CriterionResult> {
    let mut pass = true;
    let mut notes = Vec::new();
    for jj in [0i64, 1, 2] {
        let report = invariance_report(&JTParams::new(0.37, 0.0)?, SectorLabel::from_integer(jj))?;
        let ok = report.operators.iter().all(|o| o.invariant);
        pass &= ok;
        notes.push(format!("kappa=0 j={jj}: invariant={ok}"));
    }
    let kappa = 1.25;
    let report = invariance_report(&JTParams::new(0.0, kappa)?, SectorLabel::from_integer(0))?;
    let h1 = &report.operators[0];
    let leak = h1
        .leakage
        .iter()
        .find(|l| l.source == "top x^0" && l.component == "bottom" && l.degree == 1);
    let leak_ok = match leak {
        Some(l) => (l.coeff - 2.0 * kappa).abs() < 1e-13 * (2.0 * kappa),
        None => false,
    };
    pass &= !h1.invariant && leak_ok;
    notes.push(format!(
        "kappa={kappa} j=0: H1 invariant={}, leak(top x^0 -> bottom x^1) == 2*kappa: {leak_ok}",
        h1.invariant
    ));
    Ok(CriterionResult {
        id: 8,
        name: "invariance diagnostic: kappa = 0 invariant, kappa != 0 leakage = 2*kappa",
        pass,
        details: notes.join("; "),
    })
}

/// Criterion 9: at 10 seeded points every root classified confirmed has a
/// cutoff-stable oracle partner (< 1e-9 under cutoff + 2); the convention
/// report is emitted for each run.
pub fn criterion_09_oracle_classification(seed: u64) -> Result<CriterionResult> {
    let mut rng = rng_for(seed, 9);
    let j0 = SectorLabel::from_integer(0);
    let mut pass = true;
    let mut confirmed_total = 0usize;
    let mut spurious_total = 0usize;
    let mut worst_stability = 0.0f64;
    for i in 0..10 {
        // include one uncoupled point so the confirmed path is exercised
        let (mu, kappa) = if i == 0 {
            (rng.random_range(-1.0..=1.0), 0.0)
        } else {
            (rng.random_range(-2.0..=2.0), rng.random_range(0.01..=2.0))
        };
        let report = qes_full_run(RealizationKind::S, j0, &JTParams::new(mu, kappa)?, DEFAULT_CUTOFF)?;
        pass &= !report.offset_fit.candidates.is_empty();
        for root in &report.roots {
            match root.class {
                RootClass::Confirmed => {
                    confirmed_total += 1;
                    match root.oracle_match.stability {
                        Some(s) => {
                            worst_stability = worst_stability.max(s);
                            pass &= s < 1e-9;
                        }
                        None => pass = false,
                    }
                }
                RootClass::SpuriousNull => spurious_total += 1,
                RootClass::Unmatched => {}
            }
        }
    }
    Ok(CriterionResult {
        id: 9,
        name: "oracle classification: confirmed roots cutoff-stable, convention reports emitted",
        pass,
        details: format!(
            "confirmed={confirmed_total}, spurious-null={spurious_total}, worst confirmed stability {worst_stability:e} (tol 1e-9)"
        ),
    })
}

/// Criterion 10: the printed group-theory checks.
pub fn criterion_10_group_theory(_seed: u64) -> Result<CriterionResult> {
    let mut pass = true;
    let mut notes = Vec::new();

    let i_table = table_by_name("I")?;
    let h = finite_symmetric_square(&i_table, "H")?;
    let h_ok = h.terms
        == vec![
            ("A".to_string(), 1),
            ("G".to_string(), 1),
            ("H".to_string(), 2),
        ]
        && h.total_dim == 15;
    pass &= h_ok;
    notes.push(format!("I: [H(x)H] = A + 2H + G: {h_ok}"));

    let so3 = so3_symmetric_square(2.0)?;
    let so3_ok = so3 == vec![0, 2, 4];
    pass &= so3_ok;
    notes.push(format!("SO(3) l=2 ladder {{0,2,4}}: {so3_ok}"));

    for name in ["D3", "C3"] {
        let table = table_by_name(name)?;
        let e = finite_symmetric_square(&table, "E")?;
        let ok = e.terms == vec![("A1".to_string(), 1), ("E".to_string(), 1)];
        pass &= ok;
        notes.push(format!("{name}: [E(x)E] = A1 + E: {ok}"));
    }

    // dimension identity for every irrep of every bundled table
    let mut dim_ok = true;
    for name in ["I", "O", "T"] {
        let table = table_by_name(name)?;
        for irrep in &table.irreps {
            let result = finite_symmetric_square(&table, &irrep.label)?;
            dim_ok &= result.total_dim == irrep.dim * (irrep.dim + 1) / 2;
        }
    }
    pass &= dim_ok;
    notes.push(format!("dimension identity d(d+1)/2 for all bundled irreps: {dim_ok}"));

    Ok(CriterionResult {
        id: 10,
        name: "group theory: icosahedral H square, SO(3) ladder, D3/C3, dimensions",
        pass,
        details: notes.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bargmann::build_qes_operator;

    #[test]
    fn verify_all_is_deterministic() {
        let a = verify_all(DEFAULT_SEED).unwrap();
        let b = verify_all(DEFAULT_SEED).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn qes_operator_builds_for_all_kinds() {
        // smoke check placed here to keep the verify module honest about its
        // own imports
        let op = build_qes_operator(
            RealizationKind::S,
            &JTParams::new(0.0, 1.0).unwrap(),
            SectorLabel::from_integer(0),
        );
        assert!(!op.terms.is_empty());
    }
}
