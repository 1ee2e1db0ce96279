//! Polynomial-space realizations: the coupled first-order ODE system in the
//! Bargmann variable, the S- and T-transformed osp(2,2) generators as
//! one-variable differential operators, the QES operators H1 and H2, their
//! matrices on the finite polynomial basis, and subspace-invariance
//! diagnostics.
//!
//! Operators are sums of terms `coeff * x^p (d/dx)^q` carried by one of four
//! spin blocks; application to a two-component polynomial is exact
//! coefficient arithmetic. The printed generator products are expanded by an
//! exact operator composition (a small Weyl-algebra product), which is why
//! terms of derivative order 2 occur: the nested products in the S/T
//! generator lists are genuinely second order after expansion.

use crate::error::{Error, Result};
use crate::hamiltonian::{JTParams, SectorLabel};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::superalgebra::{nilpotent_relations, relation_table, GeneratorName, RelationEntry};
use serde::Serialize;

/// Spin block of a term: (output component, input component).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SpinBlock {
    UpperUpper,
    UpperLower,
    LowerUpper,
    LowerLower,
}

impl SpinBlock {
    fn output_upper(self) -> bool {
        matches!(self, SpinBlock::UpperUpper | SpinBlock::UpperLower)
    }

    fn input_upper(self) -> bool {
        matches!(self, SpinBlock::UpperUpper | SpinBlock::LowerUpper)
    }

    fn compose(self, inner: SpinBlock) -> Option<SpinBlock> {
        if self.input_upper() != inner.output_upper() {
            return None;
        }
        Some(match (self.output_upper(), inner.input_upper()) {
            (true, true) => SpinBlock::UpperUpper,
            (true, false) => SpinBlock::UpperLower,
            (false, true) => SpinBlock::LowerUpper,
            (false, false) => SpinBlock::LowerLower,
        })
    }
}

/// One term `coeff * x^x_pow (d/dx)^d_ord` on a spin block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffTerm {
    pub block: SpinBlock,
    pub coeff: f64,
    pub x_pow: u32,
    pub d_ord: u32,
}

/// Two-component polynomial (top multiplies the spin-up part).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyPair {
    pub top: Polynomial,
    pub bottom: Polynomial,
}

impl PolyPair {
    pub fn zero() -> Self {
        PolyPair {
            top: Polynomial::zero(),
            bottom: Polynomial::zero(),
        }
    }

    pub fn top_monomial(n: usize) -> Self {
        PolyPair {
            top: Polynomial::monomial(1.0, n),
            bottom: Polynomial::zero(),
        }
    }

    pub fn bottom_monomial(n: usize) -> Self {
        PolyPair {
            top: Polynomial::zero(),
            bottom: Polynomial::monomial(1.0, n),
        }
    }

    pub fn add(&self, other: &PolyPair) -> PolyPair {
        PolyPair {
            top: self.top.add(&other.top),
            bottom: self.bottom.add(&other.bottom),
        }
    }

    pub fn sub(&self, other: &PolyPair) -> PolyPair {
        PolyPair {
            top: self.top.sub(&other.top),
            bottom: self.bottom.sub(&other.bottom),
        }
    }

    pub fn scale(&self, s: f64) -> PolyPair {
        PolyPair {
            top: self.top.scale(s),
            bottom: self.bottom.scale(s),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.top.max_abs().max(self.bottom.max_abs())
    }

    /// Largest absolute coefficient at degree <= max_degree.
    pub fn max_abs_through(&self, max_degree: usize) -> f64 {
        let mut m: f64 = 0.0;
        for p in [&self.top, &self.bottom] {
            for d in 0..=max_degree {
                m = m.max(p.coeff(d).abs());
            }
        }
        m
    }
}

/// A linear differential operator with 2x2 spin structure, stored as a
/// normalized term list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearDiffOp {
    pub name: String,
    pub terms: Vec<DiffTerm>,
}

impl LinearDiffOp {
    pub fn zero(name: impl Into<String>) -> Self {
        LinearDiffOp {
            name: name.into(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms(name: impl Into<String>, terms: Vec<DiffTerm>) -> Self {
        let mut op = LinearDiffOp {
            name: name.into(),
            terms,
        };
        op.normalize();
        op
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by_key(|a| (a.block, a.x_pow, a.d_ord));
        let mut merged: Vec<DiffTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last)
                    if last.block == t.block && last.x_pow == t.x_pow && last.d_ord == t.d_ord =>
                {
                    last.coeff += t.coeff
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        self.terms = merged;
    }

    /// Exact application: term-by-term derivative, monomial shift, scale.
    pub fn apply(&self, pair: &PolyPair) -> PolyPair {
        let mut out = PolyPair::zero();
        for t in &self.terms {
            let input = if t.block.input_upper() {
                &pair.top
            } else {
                &pair.bottom
            };
            let mut p = input.clone();
            for _ in 0..t.d_ord {
                p = p.derivative();
            }
            let p = p.shift_up(t.x_pow as usize).scale(t.coeff);
            if t.block.output_upper() {
                out.top = out.top.add(&p);
            } else {
                out.bottom = out.bottom.add(&p);
            }
        }
        out
    }

    pub fn add(&self, other: &LinearDiffOp) -> LinearDiffOp {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        LinearDiffOp::from_terms(format!("{} + {}", self.name, other.name), terms)
    }

    pub fn sub(&self, other: &LinearDiffOp) -> LinearDiffOp {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> LinearDiffOp {
        LinearDiffOp::from_terms(
            self.name.clone(),
            self.terms
                .iter()
                .map(|t| DiffTerm { coeff: t.coeff * s, ..*t })
                .collect(),
        )
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Exact operator product `self * other` (other applied first), expanding
    /// x^p d^q past x^p' with the Leibniz rule.
    pub fn compose(&self, other: &LinearDiffOp) -> LinearDiffOp {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let Some(block) = a.block.compose(b.block) else {
                    continue;
                };
                let kmax = a.d_ord.min(b.x_pow);
                for k in 0..=kmax {
                    let c = binomial(a.d_ord, k) * falling(b.x_pow, k);
                    terms.push(DiffTerm {
                        block,
                        coeff: a.coeff * b.coeff * c,
                        x_pow: a.x_pow + b.x_pow - k,
                        d_ord: a.d_ord + b.d_ord - k,
                    });
                }
            }
        }
        LinearDiffOp::from_terms(format!("{}*{}", self.name, other.name), terms)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.coeff.abs()))
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

fn falling(n: u32, k: u32) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

// ---- construction helpers ------------------------------------------------

fn spin_diag(name: &str, coeff: f64, x_pow: u32, d_ord: u32) -> LinearDiffOp {
    LinearDiffOp::from_terms(
        name,
        vec![
            DiffTerm {
                block: SpinBlock::UpperUpper,
                coeff,
                x_pow,
                d_ord,
            },
            DiffTerm {
                block: SpinBlock::LowerLower,
                coeff,
                x_pow,
                d_ord,
            },
        ],
    )
}

fn mult_x() -> LinearDiffOp {
    spin_diag("x", 1.0, 1, 0)
}

fn deriv() -> LinearDiffOp {
    spin_diag("d/dx", 1.0, 0, 1)
}

fn x_ddx() -> LinearDiffOp {
    spin_diag("x*d/dx", 1.0, 1, 1)
}

fn constant(c: f64) -> LinearDiffOp {
    spin_diag("const", c, 0, 0)
}

/// sigma+ sigma-: projector on the upper component.
fn proj_up() -> LinearDiffOp {
    LinearDiffOp::from_terms(
        "P_up",
        vec![DiffTerm {
            block: SpinBlock::UpperUpper,
            coeff: 1.0,
            x_pow: 0,
            d_ord: 0,
        }],
    )
}

/// sigma- sigma+: projector on the lower component.
fn proj_down() -> LinearDiffOp {
    LinearDiffOp::from_terms(
        "P_dn",
        vec![DiffTerm {
            block: SpinBlock::LowerLower,
            coeff: 1.0,
            x_pow: 0,
            d_ord: 0,
        }],
    )
}

fn sigma_plus() -> LinearDiffOp {
    LinearDiffOp::from_terms(
        "sigma+",
        vec![DiffTerm {
            block: SpinBlock::UpperLower,
            coeff: 1.0,
            x_pow: 0,
            d_ord: 0,
        }],
    )
}

fn sigma_minus() -> LinearDiffOp {
    LinearDiffOp::from_terms(
        "sigma-",
        vec![DiffTerm {
            block: SpinBlock::LowerUpper,
            coeff: 1.0,
            x_pow: 0,
            d_ord: 0,
        }],
    )
}

// ---- coupled ODE system ---------------------------------------------------

/// The coupled first-order system in the Bargmann variable (xi = z1 z2),
/// packaged so that applying the operator to (phi1, phi2) returns the two
/// left-hand sides:
///   row 1: [xi d/dxi - (eps - mu)] phi1 + kappa [xi d/dxi + xi + j + 1] phi2
///   row 2: kappa [d/dxi + 1] phi1 + [xi d/dxi - (eps + mu)] phi2
pub fn build_coupled_ode(params: &JTParams, j: SectorLabel, epsilon: f64) -> LinearDiffOp {
    let jf = j.as_f64();
    let k = params.kappa;
    let terms = vec![
        // row 1 on phi1
        DiffTerm {
            block: SpinBlock::UpperUpper,
            coeff: 1.0,
            x_pow: 1,
            d_ord: 1,
        },
        DiffTerm {
            block: SpinBlock::UpperUpper,
            coeff: -(epsilon - params.mu),
            x_pow: 0,
            d_ord: 0,
        },
        // row 1 on phi2
        DiffTerm {
            block: SpinBlock::UpperLower,
            coeff: k,
            x_pow: 1,
            d_ord: 1,
        },
        DiffTerm {
            block: SpinBlock::UpperLower,
            coeff: k,
            x_pow: 1,
            d_ord: 0,
        },
        DiffTerm {
            block: SpinBlock::UpperLower,
            coeff: k * (jf + 1.0),
            x_pow: 0,
            d_ord: 0,
        },
        // row 2 on phi1
        DiffTerm {
            block: SpinBlock::LowerUpper,
            coeff: k,
            x_pow: 0,
            d_ord: 1,
        },
        DiffTerm {
            block: SpinBlock::LowerUpper,
            coeff: k,
            x_pow: 0,
            d_ord: 0,
        },
        // row 2 on phi2
        DiffTerm {
            block: SpinBlock::LowerLower,
            coeff: 1.0,
            x_pow: 1,
            d_ord: 1,
        },
        DiffTerm {
            block: SpinBlock::LowerLower,
            coeff: -(epsilon + params.mu),
            x_pow: 0,
            d_ord: 0,
        },
    ];
    LinearDiffOp::from_terms(format!("coupled_ode(j={j}, eps={epsilon})"), terms)
}

// ---- S and T realizations ---------------------------------------------------

/// Which similarity transformation generated the one-variable realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealizationKind {
    S,
    T,
}

impl std::fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RealizationKind::S => write!(f, "S"),
            RealizationKind::T => write!(f, "T"),
        }
    }
}

impl RealizationKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "S" | "s" => Ok(RealizationKind::S),
            "T" | "t" => Ok(RealizationKind::T),
            other => Err(Error::InvalidParameter(format!(
                "unknown realization kind `{other}` (expected S or T)"
            ))),
        }
    }
}

/// The eight osp(2,2) generators as differential operators.
#[derive(Debug, Clone)]
pub struct DiffGenerators {
    pub kind: RealizationKind,
    pub j: SectorLabel,
    ops: Vec<(GeneratorName, LinearDiffOp)>,
}

impl DiffGenerators {
    pub fn get(&self, name: GeneratorName) -> &LinearDiffOp {
        &self
            .ops
            .iter()
            .find(|(n, _)| *n == name)
            .expect("all generators present")
            .1
    }

    pub fn iter(&self) -> impl Iterator<Item = &(GeneratorName, LinearDiffOp)> {
        self.ops.iter()
    }
}

/// One-variable realizations obtained by the substitutions a1+ -> x,
/// a1 -> d/dx, a2+a2 -> -j-1, with sigma's as spin blocks, stored exactly as
/// the transformed generator products are written, term by term.
pub fn build_realization(kind: RealizationKind, j: SectorLabel) -> DiffGenerators {
    use GeneratorName::*;
    let jf = j.as_f64();
    // a2+a2 -> -j-1 and a1+a1 -> x d/dx
    let boson_number_sum = x_ddx().add(&constant(-jf - 1.0));

    let jzero = x_ddx()
        .add(&constant(-jf / 2.0))
        .add(&proj_up().scale(0.5))
        .rename("J0'");
    let jtotal = constant((jf + 1.0) / 2.0)
        .add(&proj_down().scale(-0.5))
        .rename("J'");
    let vminus = sigma_plus().compose(&deriv()).rename("V-'");
    let wplus = sigma_minus().compose(&mult_x()).rename("W+'");

    let ops = match kind {
        RealizationKind::S => {
            let jplus = mult_x().rename("J+'");
            let jminus = deriv()
                .compose(&boson_number_sum.add(&proj_up()))
                .rename("J-'");
            let vplus = sigma_plus().rename("V+'");
            let wminus = sigma_minus()
                .compose(&boson_number_sum.add(&proj_up()))
                .rename("W-'");
            vec![
                (JPlus, jplus),
                (JMinus, jminus),
                (JZero, jzero),
                (JTotal, jtotal),
                (VPlus, vplus),
                (VMinus, vminus),
                (WPlus, wplus),
                (WMinus, wminus),
            ]
        }
        RealizationKind::T => {
            // J+' = a1+ (a1 a1 + a2+a2 + 1 + sigma+sigma-), with the a1 a1
            // factor kept exactly as written (it substitutes to d^2)
            let jplus = mult_x()
                .compose(
                    &deriv()
                        .compose(&deriv())
                        .add(&constant(-jf))
                        .add(&proj_up()),
                )
                .rename("J+'");
            let jminus = deriv().rename("J-'");
            let vplus = sigma_plus()
                .compose(&x_ddx().add(&constant(-jf)).add(&proj_up()))
                .rename("V+'");
            let wminus = sigma_minus().rename("W-'");
            vec![
                (JPlus, jplus),
                (JMinus, jminus),
                (JZero, jzero),
                (JTotal, jtotal),
                (VPlus, vplus),
                (VMinus, vminus),
                (WPlus, wplus),
                (WMinus, wminus),
            ]
        }
    };

    DiffGenerators { kind, j, ops }
}

// ---- relation verification --------------------------------------------------

pub const DIFF_RELATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct DiffRelationCheck {
    pub relation: String,
    pub residual: f64,
    pub pass: bool,
}

/// Per-relation verification of the osp(2,2) table for a differential
/// realization.
#[derive(Debug, Clone, Serialize)]
pub struct DiffRelationReport {
    pub schema: u32,
    pub kind: RealizationKind,
    pub j: SectorLabel,
    pub max_degree: usize,
    pub tolerance: f64,
    pub relations: Vec<DiffRelationCheck>,
    pub nilpotent: Vec<DiffRelationCheck>,
    /// One character per table relation, in table order: P = pass, F = fail.
    pub pattern: String,
}

fn bracket_apply(
    a: &LinearDiffOp,
    b: &LinearDiffOp,
    kind: crate::fock::BracketKind,
    e: &PolyPair,
) -> PolyPair {
    let ab = a.apply(&b.apply(e));
    let ba = b.apply(&a.apply(e));
    match kind {
        crate::fock::BracketKind::Commutator => ab.sub(&ba),
        crate::fock::BracketKind::Anticommutator => ab.add(&ba),
    }
}

fn relation_residual(
    gens: &DiffGenerators,
    entry: &RelationEntry,
    max_degree: usize,
) -> f64 {
    let a = gens.get(entry.lhs_a);
    let b = gens.get(entry.lhs_b);
    let mut residual: f64 = 0.0;
    for deg in 0..max_degree {
        for e in [PolyPair::top_monomial(deg), PolyPair::bottom_monomial(deg)] {
            let mut diff = bracket_apply(a, b, entry.kind, &e);
            for &(c, g) in &entry.rhs {
                diff = diff.sub(&gens.get(g).apply(&e).scale(c));
            }
            // interior comparison: ignore the top two degrees
            residual = residual.max(diff.max_abs_through(max_degree.saturating_sub(2)));
        }
    }
    residual
}

/// Evaluate every table relation as an identity of operators acting on all
/// basis pairs up to degree max_degree - 1, comparing coefficients up to
/// degree max_degree - 2.
pub fn verify_osp_relations_diff(
    kind: RealizationKind,
    j: SectorLabel,
    max_degree: usize,
) -> DiffRelationReport {
    let gens = build_realization(kind, j);
    let relations: Vec<DiffRelationCheck> = relation_table()
        .iter()
        .map(|entry| {
            let residual = relation_residual(&gens, entry, max_degree);
            DiffRelationCheck {
                relation: entry.name(),
                residual,
                pass: residual < DIFF_RELATION_TOLERANCE,
            }
        })
        .collect();
    let nilpotent: Vec<DiffRelationCheck> = nilpotent_relations()
        .iter()
        .map(|entry| {
            let residual = relation_residual(&gens, entry, max_degree);
            DiffRelationCheck {
                relation: entry.name(),
                residual,
                pass: residual < DIFF_RELATION_TOLERANCE,
            }
        })
        .collect();
    let pattern = relations
        .iter()
        .map(|c| if c.pass { 'P' } else { 'F' })
        .collect();
    DiffRelationReport {
        schema: 1,
        kind,
        j,
        max_degree,
        tolerance: DIFF_RELATION_TOLERANCE,
        relations,
        nilpotent,
        pattern,
    }
}

// ---- QES operators ----------------------------------------------------------

/// The one-variable QES operator for the chosen realization:
///   H1 = (2x d - j + sigma+sigma-) - (1/2 + 2mu) sigma-sigma+
///        + 2kappa [ sigma+ (1 + d) + sigma- (x + x d - j - 1 + sigma+sigma-) ]
///   H2 = (2x d - j + sigma+sigma-) - (1/2 + 2mu) sigma-sigma+
///        + 2kappa [ sigma+ (d + x d - j + sigma+sigma-) + sigma- (1 + x) ]
pub fn build_qes_operator(
    kind: RealizationKind,
    params: &JTParams,
    j: SectorLabel,
) -> LinearDiffOp {
    let jf = j.as_f64();
    let common = x_ddx()
        .scale(2.0)
        .add(&constant(-jf))
        .add(&proj_up())
        .add(&proj_down().scale(-params.level_separation()));
    let coupling = match kind {
        RealizationKind::S => {
            let raise = sigma_plus().compose(&constant(1.0).add(&deriv()));
            let lower = sigma_minus().compose(
                &mult_x()
                    .add(&x_ddx())
                    .add(&constant(-jf - 1.0))
                    .add(&proj_up()),
            );
            raise.add(&lower)
        }
        RealizationKind::T => {
            let raise = sigma_plus().compose(
                &deriv()
                    .add(&x_ddx())
                    .add(&constant(-jf))
                    .add(&proj_up()),
            );
            let lower = sigma_minus().compose(&constant(1.0).add(&mult_x()));
            raise.add(&lower)
        }
    };
    let name = match kind {
        RealizationKind::S => format!("H1(j={j})"),
        RealizationKind::T => format!("H2(j={j})"),
    };
    common
        .add(&coupling.scale(2.0 * params.kappa))
        .rename(name)
}

// ---- matrices on the finite basis -------------------------------------------

/// An image component falling outside the finite monomial basis.
#[derive(Debug, Clone, Serialize)]
pub struct LeakageTerm {
    /// Which basis element generated it, e.g. "top x^0".
    pub source: String,
    /// "top" or "bottom".
    pub component: &'static str,
    pub degree: usize,
    pub coeff: f64,
}

/// Matrix of `op` on span{x^0..x^top_degree} (+) span{x^0..x^bottom_degree}
/// in the monomial basis (top block first), with a record of everything that
/// leaks outside the span.
pub fn operator_matrix_on_basis(
    op: &LinearDiffOp,
    top_degree: usize,
    bottom_degree: usize,
) -> (Matrix, Vec<LeakageTerm>) {
    let top_n = top_degree + 1;
    let n = top_n + bottom_degree + 1;
    let mut matrix = Matrix::zeros(n, n);
    let mut leakage = Vec::new();

    for col in 0..n {
        let (e, source) = if col < top_n {
            (PolyPair::top_monomial(col), format!("top x^{col}"))
        } else {
            let d = col - top_n;
            (PolyPair::bottom_monomial(d), format!("bottom x^{d}"))
        };
        let out = op.apply(&e);
        for (poly, component, span, row0) in [
            (&out.top, "top", top_degree, 0usize),
            (&out.bottom, "bottom", bottom_degree, top_n),
        ] {
            for deg in 0..poly.coeffs().len() {
                let c = poly.coeff(deg);
                if c == 0.0 {
                    continue;
                }
                if deg <= span {
                    matrix[(row0 + deg, col)] = c;
                } else {
                    leakage.push(LeakageTerm {
                        source: source.clone(),
                        component,
                        degree: deg,
                        coeff: c,
                    });
                }
            }
        }
    }
    (matrix, leakage)
}

pub const INVARIANCE_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Serialize)]
pub struct OperatorInvariance {
    pub operator: String,
    pub invariant: bool,
    pub leakage: Vec<LeakageTerm>,
}

/// Invariance diagnostic for H1 and H2 on the basis with top degree j+1 and
/// bottom degree j. A leakage record is a finding about the printed
/// operators, not something to be repaired.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub schema: u32,
    pub j: SectorLabel,
    pub mu: f64,
    pub kappa: f64,
    pub tolerance: f64,
    pub operators: Vec<OperatorInvariance>,
}

pub fn invariance_report(params: &JTParams, j: SectorLabel) -> Result<InvarianceReport> {
    let jj = j
        .integer()
        .ok_or_else(|| Error::NonIntegerSector(j.to_string()))?;
    if jj < 0 {
        return Err(Error::NegativeSector(j.to_string()));
    }
    let top_degree = jj as usize + 1;
    let bottom_degree = jj as usize;

    let operators = [RealizationKind::S, RealizationKind::T]
        .into_iter()
        .map(|kind| {
            let op = build_qes_operator(kind, params, j);
            let (_, leakage) = operator_matrix_on_basis(&op, top_degree, bottom_degree);
            let invariant = leakage.iter().all(|l| l.coeff.abs() < INVARIANCE_TOLERANCE);
            OperatorInvariance {
                operator: match kind {
                    RealizationKind::S => "H1".to_string(),
                    RealizationKind::T => "H2".to_string(),
                },
                invariant,
                leakage,
            }
        })
        .collect();

    Ok(InvarianceReport {
        schema: 1,
        j,
        mu: params.mu,
        kappa: params.kappa,
        tolerance: INVARIANCE_TOLERANCE,
        operators,
    })
}
