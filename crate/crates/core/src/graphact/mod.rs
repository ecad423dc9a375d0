//! Finite graphs, group actions on them, and their homology.

pub mod action;
pub mod admissible;
pub mod collapse;
pub mod double_tree;
pub mod graph;
pub mod lemmas;
pub mod loops;

pub use action::{builtin_action, builtin_graph, builtin_involution, builtin_xi, ActionJson, GraphAction, GraphAut};
pub use admissible::{admissibility, invariant_forests, is_admissible, Admissibility, InvariantForest};
pub use collapse::{collapse, Collapse};
pub use double_tree::{double_tree_decomposition, DoubleTree, DoubleTreeChecks};
pub use graph::{CycleBasis, Graph};
pub use lemmas::{cage_trivial_multiplicity_check, invariant_orientation, CageMultiplicity, OrientationReport};
pub use loops::{
    admissibility_obstruction, flips_all_simple_loops, max_edges, min_loop_through_edge, simple_loops, Obstruction,
    SimpleLoop,
};
