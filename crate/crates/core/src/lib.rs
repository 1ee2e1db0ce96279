//! Spectral toolkit for the E(x)eps Jahn-Teller model.
//!
//! The crate builds the truncated two-boson one-fermion Fock space, the
//! osp(2,2) superalgebra generators and their machine-verified relation
//! table, the Jahn-Teller Hamiltonian with its conserved-sector oracle
//! spectra, the Bargmann-space differential realizations with invariance
//! diagnostics, the quasi-exactly-solvable recurrence/determinant machinery
//! with closed-form cross-checks, and symmetric-square decompositions over
//! point-group character tables.
//!
//! Everything is immutable after construction and safe to share across
//! threads; all randomized sweeps take an explicit seed (ChaCha8) so reports
//! are byte-reproducible.

pub mod bargmann;
pub mod error;
pub mod fock;
pub mod group_theory;
pub mod hamiltonian;
pub mod linalg;
pub mod poly;
pub mod qes;
pub mod superalgebra;
pub mod verify;

pub use error::{Error, Result};
