//! Truncated two-boson (x) one-fermion Hilbert space and sparse real
//! operators on it.
//!
//! Basis enumeration is lexicographic in (n1, n2, s) with the spin index
//! fastest, so a dense index is `((n1*(cutoff+1)) + n2)*2 + s`. Creation out
//! of the top boson level maps to zero (truncation convention); operator
//! identities involving `a a+` are therefore checked on the interior
//! projector, where the ladder algebra is exact.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use serde::Serialize;

/// Fermion occupation: `Down` = spin-down (sigma0 eigenvalue -1),
/// `Up` = spin-up (+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn sigma0(self) -> f64 {
        match self {
            Spin::Down => -1.0,
            Spin::Up => 1.0,
        }
    }

    fn as_usize(self) -> usize {
        match self {
            Spin::Down => 0,
            Spin::Up => 1,
        }
    }
}

/// One basis state |n1, n2, s>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FockIndex {
    pub n1: usize,
    pub n2: usize,
    pub s: Spin,
}

impl std::fmt::Display for FockIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arrow = match self.s {
            Spin::Down => "dn",
            Spin::Up => "up",
        };
        write!(f, "|{},{},{}>", self.n1, self.n2, arrow)
    }
}

/// Truncated Hilbert space with a fixed deterministic enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockSpace {
    cutoff: usize,
}

/// Boson mode selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}

/// Ladder operator kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// Pauli operator kind (sigma+, sigma-, sigma0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    Plus,
    Minus,
    Zero,
}

/// Bracket kind for `bracket`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

impl FockSpace {
    /// Build the space. `dim = 2*(cutoff+1)^2`.
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::CutoffTooSmall(cutoff as i64));
        }
        let side = cutoff
            .checked_add(1)
            .ok_or(Error::CutoffTooLarge)?;
        side.checked_mul(side)
            .and_then(|s| s.checked_mul(2))
            .ok_or(Error::CutoffTooLarge)?;
        Ok(FockSpace { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        2 * (self.cutoff + 1) * (self.cutoff + 1)
    }

    pub fn index_of(&self, state: FockIndex) -> usize {
        debug_assert!(state.n1 <= self.cutoff && state.n2 <= self.cutoff);
        (state.n1 * (self.cutoff + 1) + state.n2) * 2 + state.s.as_usize()
    }

    pub fn state_of(&self, index: usize) -> FockIndex {
        debug_assert!(index < self.dim());
        let s = if index.is_multiple_of(2) { Spin::Down } else { Spin::Up };
        let rest = index / 2;
        let n2 = rest % (self.cutoff + 1);
        let n1 = rest / (self.cutoff + 1);
        FockIndex { n1, n2, s }
    }

    pub fn states(&self) -> impl Iterator<Item = FockIndex> + '_ {
        (0..self.dim()).map(|i| self.state_of(i))
    }

    /// <m|a|n> = sqrt(n), <m|a+|n> = sqrt(n+1) on the chosen mode; identity on
    /// the other mode and the fermion. Creation out of n = cutoff maps to zero.
    pub fn ladder_operator(&self, mode: Mode, kind: LadderKind) -> SparseRealOperator {
        let mut entries = Vec::new();
        for (col, st) in self.states().enumerate() {
            let n = match mode {
                Mode::One => st.n1,
                Mode::Two => st.n2,
            };
            let (new_n, value) = match kind {
                LadderKind::Annihilate => {
                    if n == 0 {
                        continue;
                    }
                    (n - 1, (n as f64).sqrt())
                }
                LadderKind::Create => {
                    if n == self.cutoff {
                        continue;
                    }
                    (n + 1, (n as f64 + 1.0).sqrt())
                }
            };
            let dst = match mode {
                Mode::One => FockIndex { n1: new_n, ..st },
                Mode::Two => FockIndex { n2: new_n, ..st },
            };
            entries.push((self.index_of(dst), col, value));
        }
        SparseRealOperator::from_triplets(self.dim(), entries)
    }

    /// sigma+, sigma- or sigma0, tensored with identity on both boson modes.
    /// `f = sigma-`, `f+ = sigma+`.
    pub fn pauli_operator(&self, kind: PauliKind) -> SparseRealOperator {
        let mut entries = Vec::new();
        for (col, st) in self.states().enumerate() {
            match kind {
                PauliKind::Plus => {
                    if st.s == Spin::Down {
                        let dst = FockIndex { s: Spin::Up, ..st };
                        entries.push((self.index_of(dst), col, 1.0));
                    }
                }
                PauliKind::Minus => {
                    if st.s == Spin::Up {
                        let dst = FockIndex { s: Spin::Down, ..st };
                        entries.push((self.index_of(dst), col, 1.0));
                    }
                }
                PauliKind::Zero => {
                    entries.push((col, col, st.s.sigma0()));
                }
            }
        }
        SparseRealOperator::from_triplets(self.dim(), entries)
    }

    /// Diagonal occupation-number operator for one mode.
    pub fn number_operator(&self, mode: Mode) -> SparseRealOperator {
        let entries = self
            .states()
            .enumerate()
            .filter_map(|(i, st)| {
                let n = match mode {
                    Mode::One => st.n1,
                    Mode::Two => st.n2,
                };
                (n > 0).then_some((i, i, n as f64))
            })
            .collect();
        SparseRealOperator::from_triplets(self.dim(), entries)
    }

    /// Orthogonal projector onto states with n1 <= cutoff - margin and
    /// n2 <= cutoff - margin.
    pub fn interior_projection(&self, margin: usize) -> Result<SparseRealOperator> {
        if margin >= self.cutoff {
            return Err(Error::MarginTooLarge {
                margin,
                cutoff: self.cutoff,
            });
        }
        let keep = self.cutoff - margin;
        let entries = self
            .states()
            .enumerate()
            .filter_map(|(i, st)| (st.n1 <= keep && st.n2 <= keep).then_some((i, i, 1.0)))
            .collect();
        Ok(SparseRealOperator::from_triplets(self.dim(), entries))
    }
}

/// Real sparse matrix stored as sorted (row, col, value) triplets with no
/// duplicates and no explicit zeros. All operators in this crate are real,
/// so Hermitian conjugation is the transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseRealOperator {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseRealOperator {
    pub fn from_triplets(dim: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != 0.0);
        SparseRealOperator {
            dim,
            entries: merged,
        }
    }

    pub fn zero(dim: usize) -> Self {
        SparseRealOperator {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseRealOperator {
            dim,
            entries: (0..dim).map(|i| (i, i, 1.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map(|i| self.entries[i].2)
            .unwrap_or(0.0)
    }

    pub fn transpose(&self) -> Self {
        let entries = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        Self::from_triplets(self.dim, entries)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_triplets(
            self.dim,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * s)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self::from_triplets(self.dim, entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        // index other's rows for the product
        let mut row_start = vec![0usize; other.dim + 1];
        for &(r, _, _) in &other.entries {
            row_start[r + 1] += 1;
        }
        for i in 0..other.dim {
            row_start[i + 1] += row_start[i];
        }
        let mut entries = Vec::new();
        for &(r, k, v) in &self.entries {
            for &(_, c, w) in &other.entries[row_start[k]..row_start[k + 1]] {
                entries.push((r, c, v * w));
            }
        }
        Ok(Self::from_triplets(self.dim, entries))
    }

    /// AB - BA or AB + BA.
    pub fn bracket(&self, other: &Self, kind: BracketKind) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        match kind {
            BracketKind::Commutator => ab.sub(&ba),
            BracketKind::Anticommutator => ab.add(&ba),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, &(_, _, v)| m.max(v.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.sub(&self.transpose())
            .map(|d| d.max_abs() <= tol)
            .unwrap_or(false)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for &(r, c, val) in &self.entries {
            out[r] += val * v[c];
        }
        out
    }

    /// Dense submatrix on the given index subset (rows and columns alike).
    pub fn dense_on(&self, subset: &[usize]) -> Matrix {
        let pos: std::collections::HashMap<usize, usize> =
            subset.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut m = Matrix::zeros(subset.len(), subset.len());
        for &(r, c, v) in &self.entries {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                m[(i, j)] = v;
            }
        }
        m
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_roundtrip() {
        assert_eq!(FockSpace::new(1).unwrap().dim(), 8);
        assert_eq!(FockSpace::new(6).unwrap().dim(), 98);
        let space = FockSpace::new(3).unwrap();
        for i in 0..space.dim() {
            assert_eq!(space.index_of(space.state_of(i)), i);
        }
        assert!(matches!(FockSpace::new(0), Err(Error::CutoffTooSmall(0))));
        assert!(matches!(
            FockSpace::new(usize::MAX),
            Err(Error::CutoffTooLarge)
        ));
        assert!(matches!(
            FockSpace::new(usize::MAX / 2),
            Err(Error::CutoffTooLarge)
        ));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = FockSpace::new(4).unwrap();
        let b = FockSpace::new(4).unwrap();
        let ea = a.ladder_operator(Mode::One, LadderKind::Annihilate);
        let eb = b.ladder_operator(Mode::One, LadderKind::Annihilate);
        assert_eq!(ea.entries(), eb.entries());
    }

    #[test]
    fn ladder_action_and_truncation() {
        let space = FockSpace::new(4).unwrap();
        let a1 = space.ladder_operator(Mode::One, LadderKind::Annihilate);
        let src = space.index_of(FockIndex {
            n1: 3,
            n2: 1,
            s: Spin::Up,
        });
        let dst = space.index_of(FockIndex {
            n1: 2,
            n2: 1,
            s: Spin::Up,
        });
        assert!((a1.get(dst, src) - 3f64.sqrt()).abs() < 1e-15);

        // creation out of the top level is annihilated
        let a1dag = space.ladder_operator(Mode::One, LadderKind::Create);
        let top = space.index_of(FockIndex {
            n1: 4,
            n2: 0,
            s: Spin::Down,
        });
        let mut v = vec![0.0; space.dim()];
        v[top] = 1.0;
        assert!(a1dag.apply(&v).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn ladder_matrix_elements_rule() {
        // <m|a|n> nonzero only for m = n-1, value sqrt(n), to full precision
        let space = FockSpace::new(5).unwrap();
        for mode in [Mode::One, Mode::Two] {
            let a = space.ladder_operator(mode, LadderKind::Annihilate);
            for &(r, c, v) in a.entries() {
                let src = space.state_of(c);
                let dst = space.state_of(r);
                let (ns, nd) = match mode {
                    Mode::One => (src.n1, dst.n1),
                    Mode::Two => (src.n2, dst.n2),
                };
                assert_eq!(nd + 1, ns);
                assert_eq!(v, (ns as f64).sqrt());
            }
            let adag = space.ladder_operator(mode, LadderKind::Create);
            assert_eq!(adag.transpose().entries(), a.entries());
        }
    }

    #[test]
    fn cross_mode_commutator_vanishes() {
        let space = FockSpace::new(3).unwrap();
        let a1 = space.ladder_operator(Mode::One, LadderKind::Annihilate);
        let a2dag = space.ladder_operator(Mode::Two, LadderKind::Create);
        let c = a1.bracket(&a2dag, BracketKind::Commutator).unwrap();
        assert_eq!(c.max_abs(), 0.0);
    }

    #[test]
    fn pauli_actions() {
        let space = FockSpace::new(1).unwrap();
        let sp = space.pauli_operator(PauliKind::Plus);
        let sm = space.pauli_operator(PauliKind::Minus);
        let down = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Down,
        });
        let up = space.index_of(FockIndex {
            n1: 0,
            n2: 0,
            s: Spin::Up,
        });
        assert_eq!(sp.get(up, down), 1.0);

        // {f, f+} = 1 exactly
        let anti = sm.bracket(&sp, BracketKind::Anticommutator).unwrap();
        assert_eq!(
            anti.sub(&SparseRealOperator::identity(space.dim()))
                .unwrap()
                .max_abs(),
            0.0
        );

        // sigma+sigma- - sigma-sigma+ = sigma0
        let comm = sp.bracket(&sm, BracketKind::Commutator).unwrap();
        let s0 = space.pauli_operator(PauliKind::Zero);
        assert_eq!(comm.sub(&s0).unwrap().max_abs(), 0.0);

        // nilpotency
        let nil = sp.bracket(&sp, BracketKind::Anticommutator).unwrap();
        assert_eq!(nil.max_abs(), 0.0);
    }

    #[test]
    fn identity_commutes_with_anything() {
        let space = FockSpace::new(2).unwrap();
        let id = SparseRealOperator::identity(space.dim());
        let x = space.ladder_operator(Mode::Two, LadderKind::Create);
        assert_eq!(
            id.bracket(&x, BracketKind::Commutator).unwrap().max_abs(),
            0.0
        );
    }

    #[test]
    fn interior_projection_rank_and_ladder_identity() {
        let space = FockSpace::new(2).unwrap();
        let p = space.interior_projection(1).unwrap();
        assert_eq!(p.nnz(), 8); // 2 * 2^2 surviving states

        let p0 = space.interior_projection(0).unwrap();
        assert_eq!(
            p0.sub(&SparseRealOperator::identity(space.dim()))
                .unwrap()
                .max_abs(),
            0.0
        );
        assert!(space.interior_projection(2).is_err());

        // P [a1, a1+] P = P for margin >= 1: the only boundary defect of
        // [a, a+] sits at n = cutoff. The diagonal entries are sqrt(n+1)^2 -
        // sqrt(n)^2, so the residual is a few ulps, not bitwise zero.
        let a1 = space.ladder_operator(Mode::One, LadderKind::Annihilate);
        let a1dag = space.ladder_operator(Mode::One, LadderKind::Create);
        let comm = a1.bracket(&a1dag, BracketKind::Commutator).unwrap();
        let proj = p.mul(&comm).unwrap().mul(&p).unwrap();
        assert!(proj.sub(&p).unwrap().max_abs() < 1e-13);
    }
}
