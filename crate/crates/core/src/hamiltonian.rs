//! The E(x)eps Jahn-Teller Hamiltonian, its algebraized form, the conserved
//! angular momentum J1 = n1 - n2 + sigma0/2, the J1-eigenvalue sectors, and
//! the dense-diagonalization oracle spectrum per sector.
//!
//! Energy bookkeeping: this module reports raw eigenvalues of H only; the
//! mapping between recurrence-level energies and physical eigenvalues is
//! owned by the QES solver.

use crate::error::{Error, Result};
use crate::fock::{FockIndex, FockSpace, LadderKind, Mode, PauliKind, Spin, SparseRealOperator};
use crate::linalg::symmetric_eigen;
use crate::superalgebra::OspGenerators;
use serde::Serialize;

/// Model parameters: level separation is `1/2 + 2*mu`, coupling strength `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JTParams {
    pub mu: f64,
    pub kappa: f64,
}

impl JTParams {
    pub fn new(mu: f64, kappa: f64) -> Result<Self> {
        if !mu.is_finite() || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "parameters must be finite (mu = {mu}, kappa = {kappa})"
            )));
        }
        Ok(JTParams { mu, kappa })
    }

    pub fn level_separation(&self) -> f64 {
        0.5 + 2.0 * self.mu
    }
}

/// Sector label j, integer or half-integer, stored as 2j. The conserved
/// angular momentum eigenvalue of the sector is j + 1/2; only integer j
/// label non-empty Fock sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorLabel {
    twice_j: i64,
}

impl SectorLabel {
    pub fn from_twice(twice_j: i64) -> Self {
        SectorLabel { twice_j }
    }

    pub fn from_integer(j: i64) -> Self {
        SectorLabel { twice_j: 2 * j }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad sector label `{text}`")))?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad sector label `{text}`")))?;
            if den == 2 {
                return Ok(SectorLabel { twice_j: num });
            }
            if den == 1 {
                return Ok(SectorLabel { twice_j: 2 * num });
            }
            return Err(Error::InvalidParameter(format!(
                "sector label `{text}`: only integers and half-integers are meaningful"
            )));
        }
        let value: f64 = text
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad sector label `{text}`")))?;
        let twice = value * 2.0;
        if (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "sector label `{text}` is not an integer or half-integer"
            )));
        }
        Ok(SectorLabel {
            twice_j: twice.round() as i64,
        })
    }

    pub fn as_f64(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn twice(&self) -> i64 {
        self.twice_j
    }

    pub fn is_integer(&self) -> bool {
        self.twice_j % 2 == 0
    }

    pub fn integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.twice_j / 2)
    }
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice_j % 2 == 0 {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

impl Serialize for SectorLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

/// Sector specification for the oracle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectorSpec {
    pub j: SectorLabel,
    pub cutoff: usize,
}

/// Oracle spectrum for one sector, with cutoff-stability data.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub schema: u32,
    pub j: SectorLabel,
    pub mu: f64,
    pub kappa: f64,
    pub cutoff: usize,
    pub dim: usize,
    /// Ascending eigenvalues of H restricted to the sector.
    pub eigenvalues: Vec<f64>,
    /// Change of each eigenvalue when the cutoff is raised by 2, matched by
    /// value proximity; `null` on the truncation-polluted upper tail (only
    /// the lowest 60% of the spectrum is matched).
    pub stability: Vec<Option<f64>>,
}

/// H = n1 + n2 + 1 + (1/2 + 2 mu) sigma0
///     + 2 kappa [ (a1 + a2+) sigma+ + (a1+ + a2) sigma- ]
pub fn build_hamiltonian(space: &FockSpace, params: &JTParams) -> SparseRealOperator {
    let a1 = space.ladder_operator(Mode::One, LadderKind::Annihilate);
    let a1dag = space.ladder_operator(Mode::One, LadderKind::Create);
    let a2 = space.ladder_operator(Mode::Two, LadderKind::Annihilate);
    let a2dag = space.ladder_operator(Mode::Two, LadderKind::Create);
    let n1 = space.number_operator(Mode::One);
    let n2 = space.number_operator(Mode::Two);
    let sp = space.pauli_operator(PauliKind::Plus);
    let sm = space.pauli_operator(PauliKind::Minus);
    let id = SparseRealOperator::identity(space.dim());

    let diag = n1
        .add(&n2)
        .and_then(|s| s.add(&id))
        .and_then(|s| s.add(&space.pauli_operator(PauliKind::Zero).scale(params.level_separation())))
        .expect("same space");
    let raise = a1.add(&a2dag).and_then(|s| s.mul(&sp)).expect("same space");
    let lower = a1dag.add(&a2).and_then(|s| s.mul(&sm)).expect("same space");
    let coupling = raise.add(&lower).expect("same space").scale(2.0 * params.kappa);
    diag.add(&coupling).expect("same space")
}

/// H expressed through the osp(2,2) generators:
/// H = 2 J0 + (1/2 + 2 mu)(2J - N) + 2 kappa (V+ + V- + W+ + W-).
/// Under J = N/2 + sigma0/2 the combination 2J - N equals sigma0, and this
/// agrees with [`build_hamiltonian`] entrywise.
pub fn build_hamiltonian_algebraic(gens: &OspGenerators, params: &JTParams) -> SparseRealOperator {
    let two_j_minus_n = gens
        .jtotal
        .scale(2.0)
        .sub(&gens.nop)
        .expect("same space");
    let fermionic = gens
        .vplus
        .add(&gens.vminus)
        .and_then(|s| s.add(&gens.wplus))
        .and_then(|s| s.add(&gens.wminus))
        .expect("same space");
    gens.jzero
        .scale(2.0)
        .add(&two_j_minus_n.scale(params.level_separation()))
        .and_then(|s| s.add(&fermionic.scale(2.0 * params.kappa)))
        .expect("same space")
}

/// J1 = n1 - n2 + sigma0/2, diagonal in the Fock basis.
pub fn build_angular_momentum(space: &FockSpace) -> SparseRealOperator {
    let n1 = space.number_operator(Mode::One);
    let n2 = space.number_operator(Mode::Two);
    let s0 = space.pauli_operator(PauliKind::Zero);
    n1.sub(&n2)
        .and_then(|d| d.add(&s0.scale(0.5)))
        .expect("same space")
}

/// All basis states with J1 eigenvalue j + 1/2: spin-up states with
/// n1 - n2 = j and spin-down states with n1 - n2 = j + 1, ordered by n2 with
/// spin-up first. Half-integer j label no Fock states at all.
pub fn sector_basis(space: &FockSpace, j: SectorLabel) -> Result<Vec<FockIndex>> {
    let mut states = Vec::new();
    if let Some(j) = j.integer() {
        let cutoff = space.cutoff() as i64;
        for n2 in 0..=cutoff {
            let up = n2 + j;
            if (0..=cutoff).contains(&up) {
                states.push(FockIndex {
                    n1: up as usize,
                    n2: n2 as usize,
                    s: Spin::Up,
                });
            }
            let down = n2 + j + 1;
            if (0..=cutoff).contains(&down) {
                states.push(FockIndex {
                    n1: down as usize,
                    n2: n2 as usize,
                    s: Spin::Down,
                });
            }
        }
    }
    if states.is_empty() {
        return Err(Error::EmptySector {
            j: j.to_string(),
            cutoff: space.cutoff(),
        });
    }
    Ok(states)
}

/// Project H onto the sector basis and diagonalize; stability data comes from
/// re-solving at cutoff + 2 and matching eigenvalues by proximity on the
/// lowest 60% of the spectrum.
pub fn sector_spectrum(
    space: &FockSpace,
    params: &JTParams,
    j: SectorLabel,
) -> Result<SpectrumReport> {
    let eigenvalues = sector_eigenvalues(space, params, j)?;

    let bigger = FockSpace::new(space.cutoff() + 2)?;
    let reference = sector_eigenvalues(&bigger, params, j)?;

    let matched = (eigenvalues.len() as f64 * 0.6).ceil() as usize;
    let stability = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &ev)| {
            (i < matched).then(|| {
                reference
                    .iter()
                    .map(|&r| (r - ev).abs())
                    .fold(f64::INFINITY, f64::min)
            })
        })
        .collect();

    Ok(SpectrumReport {
        schema: 1,
        j,
        mu: params.mu,
        kappa: params.kappa,
        cutoff: space.cutoff(),
        dim: eigenvalues.len(),
        eigenvalues,
        stability,
    })
}

fn sector_eigenvalues(space: &FockSpace, params: &JTParams, j: SectorLabel) -> Result<Vec<f64>> {
    let basis = sector_basis(space, j)?;
    let indices: Vec<usize> = basis.iter().map(|&st| space.index_of(st)).collect();
    let h = build_hamiltonian(space, params);
    let block = h.dense_on(&indices);
    let (values, _) = symmetric_eigen(&block)?;
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncoupled_limit_diagonal() {
        let space = FockSpace::new(3).unwrap();
        let params = JTParams::new(0.0, 0.0).unwrap();
        let h = build_hamiltonian(&space, &params);
        let idx = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Up,
        });
        assert_eq!(h.get(idx, idx), 1.5);
    }

    #[test]
    fn single_ladder_matrix_element() {
        let space = FockSpace::new(3).unwrap();
        let kappa = 0.7;
        let params = JTParams::new(0.0, kappa).unwrap();
        let h = build_hamiltonian(&space, &params);
        let from = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Up,
        });
        let to = space.index_of(FockIndex {
            n1: 1,
            n2: 0,
            s: Spin::Down,
        });
        // <1,0,dn| H |0,0,up> = 2 kappa via the a1+ sigma- term
        assert!((h.get(to, from) - 2.0 * kappa).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_is_symmetric() {
        let space = FockSpace::new(4).unwrap();
        let params = JTParams::new(-0.3, 1.7).unwrap();
        let h = build_hamiltonian(&space, &params);
        assert_eq!(h.sub(&h.transpose()).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn algebraic_form_matches() {
        let space = FockSpace::new(4).unwrap();
        let gens = crate::superalgebra::build_generators(&space);
        for (mu, kappa) in [(0.0, 0.0), (0.25, 0.0), (-0.8, 1.3), (0.5, 2.0)] {
            let params = JTParams::new(mu, kappa).unwrap();
            let h = build_hamiltonian(&space, &params);
            let h_alg = build_hamiltonian_algebraic(&gens, &params);
            assert!(
                h.sub(&h_alg).unwrap().max_abs() < 1e-13,
                "mismatch at mu={mu} kappa={kappa}"
            );
        }
    }

    #[test]
    fn algebraic_uncoupled_ground_state() {
        let space = FockSpace::new(3).unwrap();
        let gens = crate::superalgebra::build_generators(&space);
        let params = JTParams::new(0.0, 0.0).unwrap();
        let h = build_hamiltonian_algebraic(&gens, &params);
        let idx = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Down,
        });
        assert_eq!(h.get(idx, idx), 0.5);
    }

    #[test]
    fn angular_momentum_eigenvalues() {
        let space = FockSpace::new(3).unwrap();
        let j1 = build_angular_momentum(&space);
        let up = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Up,
        });
        assert_eq!(j1.get(up, up), 0.5);
        let dn = space.index_of(FockIndex {
            n1: 1,
            n2: 0,
            s: Spin::Down,
        });
        assert_eq!(j1.get(dn, dn), 0.5);
    }

    #[test]
    fn hamiltonian_commutes_with_j1_exactly() {
        let space = FockSpace::new(4).unwrap();
        let params = JTParams::new(0.4, 1.1).unwrap();
        let h = build_hamiltonian(&space, &params);
        let j1 = build_angular_momentum(&space);
        let comm = h
            .bracket(&j1, crate::fock::BracketKind::Commutator)
            .unwrap();
        // H never connects different J1 eigenvalues, even at the truncation
        // boundary, so the commutator vanishes on the whole space
        assert_eq!(comm.max_abs(), 0.0);
    }

    #[test]
    fn sector_basis_enumeration() {
        let space = FockSpace::new(2).unwrap();
        let basis = sector_basis(&space, SectorLabel::from_integer(0)).unwrap();
        let expect = [
            (0, 0, Spin::Up),
            (1, 0, Spin::Down),
            (1, 1, Spin::Up),
            (2, 1, Spin::Down),
            (2, 2, Spin::Up),
        ];
        assert_eq!(basis.len(), expect.len());
        for (st, &(n1, n2, s)) in basis.iter().zip(&expect) {
            assert_eq!((st.n1, st.n2, st.s), (n1, n2, s));
        }

        let space1 = FockSpace::new(1).unwrap();
        let basis1 = sector_basis(&space1, SectorLabel::from_integer(1)).unwrap();
        assert_eq!(basis1.len(), 1);
        assert_eq!((basis1[0].n1, basis1[0].n2, basis1[0].s), (1, 0, Spin::Up));

        // every listed state is a J1 eigenvector with eigenvalue j + 1/2
        let j1 = build_angular_momentum(&space);
        for st in &basis {
            let idx = space.index_of(*st);
            assert_eq!(j1.get(idx, idx), 0.5);
        }

        // half-integer sectors are empty
        assert!(matches!(
            sector_basis(&space, SectorLabel::from_twice(1)),
            Err(Error::EmptySector { .. })
        ));
    }

    #[test]
    fn uncoupled_sector_spectrum_analytic() {
        let space = FockSpace::new(6).unwrap();
        let mu = 0.25;
        let params = JTParams::new(mu, 0.0).unwrap();
        let report = sector_spectrum(&space, &params, SectorLabel::from_integer(0)).unwrap();
        // lowest two: |1,0,dn> at 3/2 - 2mu = 1.0 and |0,0,up> at 3/2 + 2mu = 2.0
        assert!((report.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((report.eigenvalues[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sector_label_parsing() {
        assert_eq!(SectorLabel::parse("0").unwrap().twice(), 0);
        assert_eq!(SectorLabel::parse("1/2").unwrap().twice(), 1);
        assert_eq!(SectorLabel::parse("0.5").unwrap().twice(), 1);
        assert_eq!(SectorLabel::parse("-1").unwrap().twice(), -2);
        assert_eq!(SectorLabel::parse("1.5").unwrap().to_string(), "3/2");
        assert!(SectorLabel::parse("0.3").is_err());
    }
}
