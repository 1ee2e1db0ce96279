//! Cross-checks between the Hamiltonian builders and the sector oracle.

use jtqes_core::fock::FockSpace;
use jtqes_core::hamiltonian::{
    build_hamiltonian, sector_basis, sector_spectrum, JTParams, SectorLabel,
};

#[test]
fn different_sectors_are_exactly_uncoupled() {
    let space = FockSpace::new(6).unwrap();
    let params = JTParams::new(0.7, 1.9).unwrap();
    let h = build_hamiltonian(&space, &params);
    let bases: Vec<Vec<usize>> = (-2..=3)
        .filter_map(|j| {
            sector_basis(&space, SectorLabel::from_integer(j))
                .ok()
                .map(|b| b.iter().map(|&st| space.index_of(st)).collect())
        })
        .collect();
    for (i, a) in bases.iter().enumerate() {
        for b in bases.iter().skip(i + 1) {
            for &row in a {
                for &col in b {
                    assert_eq!(h.get(row, col), 0.0);
                    assert_eq!(h.get(col, row), 0.0);
                }
            }
        }
    }
}

#[test]
fn sector_bases_cover_their_j1_eigenspaces() {
    let space = FockSpace::new(5).unwrap();
    let mut seen = 0usize;
    for j in -6..=6 {
        if let Ok(basis) = sector_basis(&space, SectorLabel::from_integer(j)) {
            seen += basis.len();
        }
    }
    assert_eq!(seen, space.dim());
}

#[test]
fn uncoupled_spectrum_matches_analytic_multiset() {
    let cutoff = 12;
    let space = FockSpace::new(cutoff).unwrap();
    for mu in [0.0, 0.25, -0.8] {
        let params = JTParams::new(mu, 0.0).unwrap();
        let report = sector_spectrum(&space, &params, SectorLabel::from_integer(0)).unwrap();
        let mut analytic: Vec<f64> = (0..=cutoff)
            .map(|k| 2.0 * k as f64 + 1.5 + 2.0 * mu)
            .collect();
        analytic.extend((0..cutoff).map(|k| 2.0 * k as f64 + 1.5 - 2.0 * mu));
        analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(report.eigenvalues.len(), analytic.len());
        for (got, expect) in report.eigenvalues.iter().zip(&analytic) {
            assert!((got - expect).abs() < 1e-12, "mu={mu}: {got} vs {expect}");
        }
    }
}

#[test]
fn low_spectrum_is_cutoff_stable_at_moderate_coupling() {
    // j = 0, mu = 0, kappa = 0.5: the lowest five eigenvalues move by less
    // than 1e-8 between cutoff 12 and 14
    let params = JTParams::new(0.0, 0.5).unwrap();
    let space = FockSpace::new(12).unwrap();
    let report = sector_spectrum(&space, &params, SectorLabel::from_integer(0)).unwrap();
    for i in 0..5 {
        let shift = report.stability[i].expect("lowest eigenvalues are matched");
        assert!(shift < 1e-8, "eigenvalue {i} shifted by {shift:e}");
    }
}

#[test]
fn spectrum_report_serializes_with_expected_fields() {
    let space = FockSpace::new(4).unwrap();
    let params = JTParams::new(0.1, 0.3).unwrap();
    let report = sector_spectrum(&space, &params, SectorLabel::from_integer(1)).unwrap();
    let value: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    for key in ["j", "mu", "kappa", "cutoff", "dim", "eigenvalues", "stability"] {
        assert!(value.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(value["j"], 1.0);
    assert_eq!(
        value["eigenvalues"].as_array().unwrap().len(),
        value["dim"].as_u64().unwrap() as usize
    );
}
