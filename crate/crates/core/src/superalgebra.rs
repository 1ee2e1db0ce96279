//! Schwinger su(1,1) generators, their fermionic extension to osp(2,2), and
//! machine verification of the complete (anti)commutation relation table on
//! the truncated Fock space.
//!
//! Sign conventions. With the standard Pauli matrices, `f f+ - f+ f`
//! evaluates to `-sigma0`, so the total number operator is taken as
//! `J = N/2 + sigma0/2` (equivalently `f+ f - f f+ = sigma0`); this is the
//! unique choice under which the algebraized Hamiltonian identity
//! `2J - N = sigma0` holds as matrices. Three relations are commonly
//! misprinted for these generators and are stored here in their
//! matrix-verified form, with the misprinted variant recorded in the entry's
//! `printed_form` field: `[J+,V-] = -V+`, `[J+,W-] = -W+`, and
//! `{V-,W+} = J0 + J` (the last is forced by positivity: `{V-, V-^T}` cannot
//! be negative semidefinite).

use crate::error::Result;
use crate::fock::{BracketKind, FockSpace, LadderKind, Mode, PauliKind, SparseRealOperator};
use serde::Serialize;

/// The ten-operator osp(2,2) family on one Fock space.
#[derive(Debug, Clone)]
pub struct OspGenerators {
    pub jplus: SparseRealOperator,
    pub jminus: SparseRealOperator,
    pub jzero: SparseRealOperator,
    /// Boson number difference n1 - n2.
    pub nop: SparseRealOperator,
    pub vplus: SparseRealOperator,
    pub vminus: SparseRealOperator,
    pub wplus: SparseRealOperator,
    pub wminus: SparseRealOperator,
    /// Total number operator J = N/2 + sigma0/2.
    pub jtotal: SparseRealOperator,
}

/// Abstract generator label, shared between the Fock-space verifier and the
/// Bargmann differential-realization verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorName {
    JPlus,
    JMinus,
    JZero,
    JTotal,
    VPlus,
    VMinus,
    WPlus,
    WMinus,
}

impl GeneratorName {
    pub fn label(self) -> &'static str {
        match self {
            GeneratorName::JPlus => "J+",
            GeneratorName::JMinus => "J-",
            GeneratorName::JZero => "J0",
            GeneratorName::JTotal => "J",
            GeneratorName::VPlus => "V+",
            GeneratorName::VMinus => "V-",
            GeneratorName::WPlus => "W+",
            GeneratorName::WMinus => "W-",
        }
    }
}

/// One relation: bracket(lhs_a, lhs_b) = sum of coeff * generator.
#[derive(Debug, Clone, Serialize)]
pub struct RelationEntry {
    pub lhs_a: GeneratorName,
    pub lhs_b: GeneratorName,
    pub kind: BracketKind,
    pub rhs: Vec<(f64, GeneratorName)>,
    /// Set when a common printed variant differs from the matrix-verified form.
    pub printed_form: Option<&'static str>,
}

impl RelationEntry {
    pub fn name(&self) -> String {
        let (open, close) = match self.kind {
            BracketKind::Commutator => ('[', ']'),
            BracketKind::Anticommutator => ('{', '}'),
        };
        let rhs = if self.rhs.is_empty() {
            "0".to_string()
        } else {
            self.rhs
                .iter()
                .enumerate()
                .map(|(i, &(c, g))| {
                    let sign = if c < 0.0 {
                        "-"
                    } else if i == 0 {
                        ""
                    } else {
                        "+"
                    };
                    let mag = c.abs();
                    if mag == 1.0 {
                        format!("{}{}", sign, g.label())
                    } else {
                        format!("{}{}*{}", sign, fmt_coeff(mag), g.label())
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "{}{},{}{} = {}",
            open,
            self.lhs_a.label(),
            self.lhs_b.label(),
            close,
            rhs
        )
    }
}

fn fmt_coeff(c: f64) -> String {
    if c == 0.5 {
        "1/2".to_string()
    } else if c == 2.0 {
        "2".to_string()
    } else {
        format!("{c}")
    }
}

/// The 26 sign-expanded relations of the osp(2,2) table: 6 su(1,1)/number
/// commutators, 16 mixed boson-fermion commutators, 4 nonzero
/// anticommutators. The nilpotent `{V,V} = {W,W} = 0` family is exposed by
/// [`nilpotent_relations`] and checked alongside the table.
pub fn relation_table() -> Vec<RelationEntry> {
    use BracketKind::{Anticommutator, Commutator};
    use GeneratorName::*;

    let rel = |a, b, kind, rhs: Vec<(f64, GeneratorName)>| RelationEntry {
        lhs_a: a,
        lhs_b: b,
        kind,
        rhs,
        printed_form: None,
    };

    vec![
        // su(1,1) + total number
        rel(JPlus, JMinus, Commutator, vec![(-2.0, JZero)]),
        rel(JZero, JPlus, Commutator, vec![(1.0, JPlus)]),
        rel(JZero, JMinus, Commutator, vec![(-1.0, JMinus)]),
        rel(JTotal, JPlus, Commutator, vec![]),
        rel(JTotal, JMinus, Commutator, vec![]),
        rel(JTotal, JZero, Commutator, vec![]),
        // mixed boson-fermion commutators
        rel(JZero, VPlus, Commutator, vec![(0.5, VPlus)]),
        rel(JZero, VMinus, Commutator, vec![(-0.5, VMinus)]),
        rel(JZero, WPlus, Commutator, vec![(0.5, WPlus)]),
        rel(JZero, WMinus, Commutator, vec![(-0.5, WMinus)]),
        RelationEntry {
            lhs_a: JPlus,
            lhs_b: VMinus,
            kind: Commutator,
            rhs: vec![(-1.0, VPlus)],
            printed_form: Some("[J+,V-] = V+"),
        },
        rel(JMinus, VPlus, Commutator, vec![(1.0, VMinus)]),
        RelationEntry {
            lhs_a: JPlus,
            lhs_b: WMinus,
            kind: Commutator,
            rhs: vec![(-1.0, WPlus)],
            printed_form: Some("[J+,W-] = W+"),
        },
        rel(JMinus, WPlus, Commutator, vec![(1.0, WMinus)]),
        rel(JTotal, WPlus, Commutator, vec![(-0.5, WPlus)]),
        rel(JTotal, WMinus, Commutator, vec![(-0.5, WMinus)]),
        rel(JTotal, VPlus, Commutator, vec![(0.5, VPlus)]),
        rel(JTotal, VMinus, Commutator, vec![(0.5, VMinus)]),
        rel(JPlus, VPlus, Commutator, vec![]),
        rel(JMinus, VMinus, Commutator, vec![]),
        rel(JPlus, WPlus, Commutator, vec![]),
        rel(JMinus, WMinus, Commutator, vec![]),
        // nonzero anticommutators
        rel(VPlus, WPlus, Anticommutator, vec![(1.0, JPlus)]),
        rel(VMinus, WMinus, Anticommutator, vec![(1.0, JMinus)]),
        rel(
            VPlus,
            WMinus,
            Anticommutator,
            vec![(1.0, JZero), (-1.0, JTotal)],
        ),
        RelationEntry {
            lhs_a: VMinus,
            lhs_b: WPlus,
            kind: Anticommutator,
            rhs: vec![(1.0, JZero), (1.0, JTotal)],
            printed_form: Some("{V-,W+} = -J0 - J"),
        },
    ]
}

/// The six vanishing anticommutators among the fermionic generators.
pub fn nilpotent_relations() -> Vec<RelationEntry> {
    use BracketKind::Anticommutator;
    use GeneratorName::*;
    [
        (VPlus, VPlus),
        (VPlus, VMinus),
        (VMinus, VMinus),
        (WPlus, WPlus),
        (WPlus, WMinus),
        (WMinus, WMinus),
    ]
    .into_iter()
    .map(|(a, b)| RelationEntry {
        lhs_a: a,
        lhs_b: b,
        kind: Anticommutator,
        rhs: vec![],
        printed_form: None,
    })
    .collect()
}

/// Build all ten generators:
/// J+ = a1+ a2+, J- = a2 a1, J0 = (n1 + n2 + 1)/2, N = n1 - n2,
/// V+ = sigma+ a2+, V- = sigma+ a1, W+ = sigma- a1+, W- = sigma- a2,
/// J = N/2 + sigma0/2.
pub fn build_generators(space: &FockSpace) -> OspGenerators {
    let a1 = space.ladder_operator(Mode::One, LadderKind::Annihilate);
    let a1dag = space.ladder_operator(Mode::One, LadderKind::Create);
    let a2 = space.ladder_operator(Mode::Two, LadderKind::Annihilate);
    let a2dag = space.ladder_operator(Mode::Two, LadderKind::Create);
    let n1 = space.number_operator(Mode::One);
    let n2 = space.number_operator(Mode::Two);
    let sp = space.pauli_operator(PauliKind::Plus);
    let sm = space.pauli_operator(PauliKind::Minus);
    let s0 = space.pauli_operator(PauliKind::Zero);
    let id = SparseRealOperator::identity(space.dim());

    let jplus = a1dag.mul(&a2dag).expect("same space");
    let jminus = a2.mul(&a1).expect("same space");
    let jzero = n1
        .add(&n2)
        .and_then(|s| s.add(&id))
        .expect("same space")
        .scale(0.5);
    let nop = n1.sub(&n2).expect("same space");
    let vplus = sp.mul(&a2dag).expect("same space");
    let vminus = sp.mul(&a1).expect("same space");
    let wplus = sm.mul(&a1dag).expect("same space");
    let wminus = sm.mul(&a2).expect("same space");
    let jtotal = nop
        .scale(0.5)
        .add(&s0.scale(0.5))
        .expect("same space");

    OspGenerators {
        jplus,
        jminus,
        jzero,
        nop,
        vplus,
        vminus,
        wplus,
        wminus,
        jtotal,
    }
}

impl OspGenerators {
    pub fn get(&self, name: GeneratorName) -> &SparseRealOperator {
        match name {
            GeneratorName::JPlus => &self.jplus,
            GeneratorName::JMinus => &self.jminus,
            GeneratorName::JZero => &self.jzero,
            GeneratorName::JTotal => &self.jtotal,
            GeneratorName::VPlus => &self.vplus,
            GeneratorName::VMinus => &self.vminus,
            GeneratorName::WPlus => &self.wplus,
            GeneratorName::WMinus => &self.wminus,
        }
    }
}

pub const RELATION_TOLERANCE: f64 = 1e-12;

/// One verified relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub kind: &'static str,
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_form: Option<&'static str>,
}

/// JSON-serializable verification report.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub schema: u32,
    pub cutoff: usize,
    pub margin: usize,
    pub tolerance: f64,
    /// The 26 sign-expanded table relations.
    pub relations: Vec<RelationCheck>,
    /// Nilpotent anticommutators and the [N, su(1,1)] commutators.
    pub supplementary: Vec<RelationCheck>,
    pub all_pass: bool,
    pub convention_note: &'static str,
}

const CONVENTION_NOTE: &str = "J = N/2 + sigma0/2 (f+f - ff+ = sigma0). With the standard Pauli \
matrices the variant ff+ - f+f equals -sigma0, so the opposite sign convention fails the \
{V+,W-} = J0 - J anticommutator and the 2J - N = sigma0 Hamiltonian identity. Entries carrying a \
printed_form note are stored in their matrix-verified form; the noted variant does not hold for \
these generators.";

/// Verify every table relation on the interior projector
/// `P = interior_projection(margin)`: residual = max|P(lhs - rhs)P|.
pub fn verify_relations(
    gens: &OspGenerators,
    space: &FockSpace,
    margin: usize,
) -> Result<RelationReport> {
    let proj = space.interior_projection(margin)?;
    let check = |entry: &RelationEntry| -> Result<RelationCheck> {
        let a = gens.get(entry.lhs_a);
        let b = gens.get(entry.lhs_b);
        let mut lhs = a.bracket(b, entry.kind)?;
        for &(c, g) in &entry.rhs {
            lhs = lhs.sub(&gens.get(g).scale(c))?;
        }
        let residual = proj.mul(&lhs)?.mul(&proj)?.max_abs();
        Ok(RelationCheck {
            relation: entry.name(),
            kind: match entry.kind {
                BracketKind::Commutator => "commutator",
                BracketKind::Anticommutator => "anticommutator",
            },
            residual,
            pass: residual < RELATION_TOLERANCE,
            printed_form: entry.printed_form,
        })
    };

    let relations: Vec<RelationCheck> = relation_table()
        .iter()
        .map(check)
        .collect::<Result<_>>()?;

    let mut supplementary: Vec<RelationCheck> = nilpotent_relations()
        .iter()
        .map(check)
        .collect::<Result<_>>()?;

    // N commutes with all three su(1,1) generators
    for (other, label) in [
        (&gens.jplus, "[N,J+] = 0"),
        (&gens.jminus, "[N,J-] = 0"),
        (&gens.jzero, "[N,J0] = 0"),
    ] {
        let comm = gens.nop.bracket(other, BracketKind::Commutator)?;
        let residual = proj.mul(&comm)?.mul(&proj)?.max_abs();
        supplementary.push(RelationCheck {
            relation: label.to_string(),
            kind: "commutator",
            residual,
            pass: residual < RELATION_TOLERANCE,
            printed_form: None,
        });
    }

    let all_pass = relations.iter().chain(&supplementary).all(|c| c.pass);
    Ok(RelationReport {
        schema: 1,
        cutoff: space.cutoff(),
        margin,
        tolerance: RELATION_TOLERANCE,
        relations,
        supplementary,
        all_pass,
        convention_note: CONVENTION_NOTE,
    })
}
