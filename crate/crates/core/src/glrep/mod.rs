//! Representations of `Out(F_n)` induced from the stabiliser of a mod-2
//! functional, built from the action on the homology of the double cover.

pub mod formulas;
pub mod induce;
pub mod psi;
pub mod schreier;

pub use formulas::{partial_conjugation, rho_commutator, verify_closed_formulas, Family, FormulaCase, InnerCheck, FormulaReport};
pub use induce::{
    check_not_factoring, coset_transversal, generator_names, induce, BlockMonomial, CandidateOutcome, Certificate, InducedRep,
    Inducer,
    RelatorCheck,
};
pub use psi::{psi, psi_prime, schur_square, tau_matrix, to_rational, Mu};
pub use schreier::{base_functional, stabilizes_f, stabilizes_f_via_action, SchreierBasis, Symbol};
