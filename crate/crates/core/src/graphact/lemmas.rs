use serde::{Deserialize, Serialize};

use super::action::GraphAction;
use crate::error::{Error, Result};
use crate::exactla::trivial_multiplicity;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationReport {
    /// Per edge, whether the invariant orientation reverses the stored one;
    /// `None` when some edge stabiliser reverses its edge.
    pub orientation: Option<Vec<bool>>,
    pub orbit_count: usize,
    pub trivial_multiplicity: usize,
}

/// Look for an orientation of a rose's petals preserved by the whole group.
///
/// Oriented petals ("darts") are pushed around by the generators; an orbit
/// admits an invariant orientation exactly when a petal never meets its own
/// reversal.
pub fn invariant_orientation(action: &GraphAction) -> Result<OrientationReport> {
    let g = action.graph();
    if !g.is_rose() {
        return Err(Error::Precondition("invariant orientation is computed on roses".into()));
    }
    let m = g.edge_count();
    let mut sign: Vec<Option<bool>> = vec![None; m];
    let mut consistent = true;
    let mut orbit_count = 0;
    for start in 0..m {
        if sign[start].is_some() {
            continue;
        }
        orbit_count += 1;
        sign[start] = Some(false);
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            let s = sign[e].expect("visited");
            for aut in action.maps() {
                // walk both ways so the orbit of the full group is covered
                for (f, t) in [(aut.edge_perm().apply(e), s ^ aut.flip(e)), {
                    let inv = aut.edge_perm().inverse().apply(e);
                    (inv, s ^ aut.flip(inv))
                }] {
                    match sign[f] {
                        None => {
                            sign[f] = Some(t);
                            stack.push(f);
                        }
                        Some(existing) if existing != t => consistent = false,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let rep = action.homology_rep()?;
    Ok(OrientationReport {
        orientation: consistent.then(|| sign.into_iter().map(|s| s.expect("all visited")).collect()),
        orbit_count,
        trivial_multiplicity: trivial_multiplicity(&rep),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CageMultiplicity {
    pub orbit_count: usize,
    pub trivial_multiplicity: usize,
    pub passed: bool,
}

/// Compare the trivial multiplicity on a cage's homology with `orbits − 1`.
pub fn cage_trivial_multiplicity_check(action: &GraphAction) -> Result<CageMultiplicity> {
    if !action.graph().is_cage() {
        return Err(Error::Precondition("cage multiplicity check needs a cage".into()));
    }
    let orbit_count = action.edge_orbits().len();
    let mult = trivial_multiplicity(&action.homology_rep()?);
    Ok(CageMultiplicity { orbit_count, trivial_multiplicity: mult, passed: mult + 1 == orbit_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, GroupDescriptor, Rational};
    use crate::graphact::{builtin_action, Graph, GraphAut};

    #[test]
    fn alternating_rose_orientation() {
        for n in 4..=7 {
            let r = invariant_orientation(&builtin_action(&format!("rose:{n}"), &format!("A{n}")).unwrap()).unwrap();
            assert!(r.orientation.is_some());
            assert_eq!((r.orbit_count, r.trivial_multiplicity), (1, 1));
        }
    }

    #[test]
    fn orientation_gives_invariant_vectors() {
        let action = GraphAction::signed_rose(3).unwrap();
        // W_3 reverses petals, so no invariant orientation and no invariants
        let r = invariant_orientation(&action).unwrap();
        assert_eq!(r.orientation, None);
        assert_eq!(r.trivial_multiplicity, 0);

        let action = builtin_action("rose:5", "A5").unwrap();
        let r = invariant_orientation(&action).unwrap();
        let orient = r.orientation.unwrap();
        let v: Vec<Rational> = orient.iter().map(|&rev| rat(if rev { -1 } else { 1 })).collect();
        for g in action.maps() {
            assert_eq!(g.edge_matrix().apply(&v), v);
        }
    }

    #[test]
    fn trivial_group_orbits() {
        let a = GraphAction::trivial(Graph::rose(4).unwrap(), GroupDescriptor::trivial()).unwrap();
        let r = invariant_orientation(&a).unwrap();
        assert!(r.orientation.is_some());
        assert_eq!((r.orbit_count, r.trivial_multiplicity), (4, 4));
    }

    #[test]
    fn flipped_petal_has_no_orientation() {
        let g = Graph::rose(1).unwrap();
        let flip = GraphAut::loop_flips(&g, &[0]).unwrap();
        let r = invariant_orientation(&GraphAction::involution(g, flip).unwrap()).unwrap();
        assert_eq!(r.orientation, None);
    }

    #[test]
    fn cage_multiplicities() {
        let transitive = cage_trivial_multiplicity_check(&builtin_action("cage:5", "A5").unwrap()).unwrap();
        assert_eq!((transitive.orbit_count, transitive.trivial_multiplicity), (1, 0));
        assert!(transitive.passed);
        let two = cage_trivial_multiplicity_check(&builtin_action("cage:10", "A5").unwrap()).unwrap();
        assert_eq!((two.orbit_count, two.trivial_multiplicity), (2, 1));
        let fixed = cage_trivial_multiplicity_check(&builtin_action("cage:3", "A5/trivial").unwrap()).unwrap();
        assert_eq!((fixed.orbit_count, fixed.trivial_multiplicity), (3, 2));
        assert!(cage_trivial_multiplicity_check(&builtin_action("rose:3", "S3").unwrap()).is_err());
    }
}
