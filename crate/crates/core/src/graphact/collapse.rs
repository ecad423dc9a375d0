use serde::{Deserialize, Serialize};

use super::graph::{Dsu, Graph};
use crate::error::Result;
use crate::exactla::{rat, RationalMatrix};

/// The result of collapsing a set of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapse {
    pub graph: Graph,
    /// Quotient vertex of each original vertex.
    pub vertex_map: Vec<usize>,
    /// Quotient edge of each original edge, `None` when collapsed.
    pub edge_map: Vec<Option<usize>>,
    /// `|E'| × |E|` projection of edge weights.
    pub edge_projection: RationalMatrix,
    /// The induced map `H_1(X) → H_1(X')` in the standard cycle bases.
    pub homology_map: RationalMatrix,
}

impl Collapse {
    pub fn is_surjective(&self) -> bool {
        self.homology_map.rank() == self.graph.betti()
    }
}

/// Collapse each connected component of the selected edges to a point.
///
/// Quotient vertices are numbered by the smallest original vertex they contain,
/// kept edges stay in their original order.
pub fn collapse(g: &Graph, subset: &[usize]) -> Result<Collapse> {
    let mut selected = vec![false; g.edge_count()];
    for &e in subset {
        if e >= g.edge_count() {
            return Err(crate::error::Error::InvalidGraph(format!("edge {e} out of range")));
        }
        selected[e] = true;
    }
    let mut dsu = Dsu::new(g.vertex_count());
    for (e, &(a, b)) in g.ends().iter().enumerate() {
        if selected[e] {
            dsu.union(a, b);
        }
    }
    // roots are class minima, so numbering roots in order is order-preserving
    let mut class = vec![usize::MAX; g.vertex_count()];
    let mut count = 0;
    for v in 0..g.vertex_count() {
        let r = dsu.find(v);
        if class[r] == usize::MAX {
            class[r] = count;
            count += 1;
        }
        class[v] = class[r];
    }
    let mut ends = Vec::new();
    let mut edge_map = Vec::new();
    for (e, &(a, b)) in g.ends().iter().enumerate() {
        if selected[e] {
            edge_map.push(None);
        } else {
            edge_map.push(Some(ends.len()));
            ends.push((class[a], class[b]));
        }
    }
    let quotient = Graph::new(count, ends)?;
    let mut projection = RationalMatrix::zeros(quotient.edge_count(), g.edge_count());
    for (e, img) in edge_map.iter().enumerate() {
        if let Some(f) = img {
            projection.set(*f, e, rat(1));
        }
    }
    let source = g.h1_basis();
    let target = quotient.h1_basis();
    let homology_map = target.coordinates(&(&projection * &source.basis))?;
    Ok(Collapse { graph: quotient, vertex_map: class, edge_map, edge_projection: projection, homology_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cage_edge_collapses_to_rose() {
        let c = collapse(&Graph::cage(3).unwrap(), &[0]).unwrap();
        assert!(c.graph.is_rose());
        assert_eq!(c.graph.edge_count(), 2);
        assert!(c.is_surjective());
    }

    #[test]
    fn barbell_bridge_collapse_is_an_isomorphism() {
        let c = collapse(&Graph::barbell(), &[2]).unwrap();
        assert!(c.graph.is_rose());
        assert_eq!(c.graph.edge_count(), 2);
        assert_eq!(c.homology_map.rank(), 2);
        assert!(c.homology_map.is_square());
    }

    #[test]
    fn empty_collapse_is_identity() {
        let g = Graph::rose(3).unwrap();
        let c = collapse(&g, &[]).unwrap();
        assert_eq!(c.graph, g);
        assert!(c.homology_map.is_identity());
    }
}
