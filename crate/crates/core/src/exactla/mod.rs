//! Exact rational linear algebra and finite-group representations.

pub mod character;
pub mod eigen;
pub(crate) mod elim;
pub mod group;
pub mod matrix;
pub mod rational;
pub mod rep;
pub mod subspace;

pub use character::{branching_check, class_size, multiplicity, BranchingReport, named_character, partitions, trivial_multiplicity, NamedRep};
pub use eigen::{
    check_diamond, divisibility_check, eps_decomposition, simultaneous_eigenspaces, DivisibilityReport,
    EpsDecomposition,
};
pub use group::{GroupDescriptor, GroupKind, GroupWord, Perm};
pub use matrix::RationalMatrix;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use rep::FiniteRep;
pub use subspace::Subspace;

/// Basis of `{v : Mv = 0}`.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    Subspace::kernel(m)
}
