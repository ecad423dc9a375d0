use serde::{Deserialize, Serialize};

use super::action::GraphAction;
use crate::error::{Error, Result};

pub const MAX_ORBITS: usize = 20;

/// An invariant forest, as the orbits it is made of and their edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantForest {
    pub orbits: Vec<usize>,
    pub edges: Vec<usize>,
}

/// All nonempty unions of edge orbits that are forests.
///
/// An invariant edge set is exactly a union of orbits, so this is complete.
pub fn invariant_forests(action: &GraphAction) -> Result<Vec<InvariantForest>> {
    let g = action.graph();
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let orbits = action.edge_orbits();
    if orbits.len() > MAX_ORBITS {
        return Err(Error::TooManyOrbits { orbits: orbits.len(), bound: MAX_ORBITS });
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << orbits.len() {
        let chosen: Vec<usize> = (0..orbits.len()).filter(|k| mask >> k & 1 == 1).collect();
        let mut edges: Vec<usize> = chosen.iter().flat_map(|&k| orbits[k].iter().copied()).collect();
        edges.sort_unstable();
        if g.is_forest(edges.iter().copied()) {
            out.push(InvariantForest { orbits: chosen, edges });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub forests: Vec<InvariantForest>,
    pub valence_two: Vec<usize>,
}

/// No invariant nontrivial forest and no vertex of valence 2.
pub fn admissibility(action: &GraphAction) -> Result<Admissibility> {
    let forests = invariant_forests(action)?;
    let g = action.graph();
    let valence_two: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.valence(v) == 2).collect();
    Ok(Admissibility { admissible: forests.is_empty() && valence_two.is_empty(), forests, valence_two })
}

pub fn is_admissible(action: &GraphAction) -> Result<bool> {
    Ok(admissibility(action)?.admissible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{GroupDescriptor, Perm};
    use crate::graphact::{Graph, GraphAut};

    #[test]
    fn cage_group_is_admissible() {
        for n in 2..=6 {
            assert!(is_admissible(&GraphAction::cage_group(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn trivial_group_on_two_cage() {
        let a = GraphAction::trivial(Graph::cage(2).unwrap(), GroupDescriptor::trivial()).unwrap();
        let r = admissibility(&a).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.forests.len(), 2);
    }

    #[test]
    fn barbell_never_admissible() {
        let a = GraphAction::trivial(Graph::barbell(), GroupDescriptor::trivial()).unwrap();
        let r = admissibility(&a).unwrap();
        assert!(!r.admissible);
        assert!(r.forests.iter().any(|f| f.edges == vec![2]));
        // swapping the two ends still leaves the bridge orbit a forest
        let g = Graph::barbell();
        let swap = GraphAut::new(&g, Perm::transposition(2, 0, 1), Perm::transposition(3, 0, 1), vec![false, false, true])
            .unwrap();
        let a = GraphAction::involution(g, swap).unwrap();
        assert_eq!(a.edge_orbits().len(), 2);
        assert!(!is_admissible(&a).unwrap());
    }

    #[test]
    fn disconnected_is_a_precondition_error() {
        let g = Graph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        let a = GraphAction::trivial(g, GroupDescriptor::trivial()).unwrap();
        assert!(invariant_forests(&a).is_err());
    }
}
