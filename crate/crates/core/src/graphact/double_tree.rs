use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::action::GraphAut;
use super::graph::{Dsu, Graph};
use super::loops::flips_all_simple_loops;
use crate::error::{Error, Result};
use crate::exactla::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleTreeChecks {
    pub d_is_tree: bool,
    pub d_prime_is_image: bool,
    pub union_is_whole: bool,
    pub intersection_is_fixed_set: bool,
}

impl DoubleTreeChecks {
    pub fn all(&self) -> bool {
        self.d_is_tree && self.d_prime_is_image && self.union_is_whole && self.intersection_is_fixed_set
    }
}

/// `X = D ∪ ξD` with `D` a tree and `D ∩ ξD = Fix(ξ)`, on the subdivision of
/// `X` at midpoints of edges that `ξ` reverses in place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleTree {
    pub subdivided: Graph,
    /// Original edge of each subdivided edge, and which half (`0` from `ι`, `1` to `τ`).
    pub edge_origin: Vec<(usize, Option<u8>)>,
    pub midpoints: Vec<usize>,
    pub fixed_vertices: Vec<usize>,
    pub fixed_edges: Vec<usize>,
    pub d_vertices: Vec<usize>,
    pub d_edges: Vec<usize>,
    pub d_prime_vertices: Vec<usize>,
    pub d_prime_edges: Vec<usize>,
    pub checks: DoubleTreeChecks,
}

/// Subdivided graph, origin of each new edge, midpoint vertices, lifted involution.
type Subdivision = (Graph, Vec<(usize, Option<u8>)>, Vec<usize>, GraphAut);

fn subdivide(g: &Graph, xi: &GraphAut) -> Result<Subdivision> {
    let reversed: Vec<usize> = (0..g.edge_count()).filter(|&e| xi.edge_perm().apply(e) == e && xi.flip(e)).collect();
    let mid = |e: usize| g.vertex_count() + reversed.iter().position(|&r| r == e).expect("reversed edge");
    let mut ends = Vec::new();
    let mut origin = Vec::new();
    let mut first_piece = vec![0; g.edge_count()];
    for (e, piece) in first_piece.iter_mut().enumerate() {
        *piece = ends.len();
        let (a, b) = g.ends()[e];
        if reversed.contains(&e) {
            ends.push((a, mid(e)));
            ends.push((mid(e), b));
            origin.push((e, Some(0)));
            origin.push((e, Some(1)));
        } else {
            ends.push((a, b));
            origin.push((e, None));
        }
    }
    let s = Graph::new(g.vertex_count() + reversed.len(), ends)?;
    let mut vimg: Vec<usize> = (0..g.vertex_count()).map(|v| xi.vertex_perm().apply(v)).collect();
    vimg.extend((0..reversed.len()).map(|k| g.vertex_count() + k));
    let mut eimg = vec![0; s.edge_count()];
    let mut flips = vec![false; s.edge_count()];
    for (k, &(e, half)) in origin.iter().enumerate() {
        match half {
            // the two halves of a reversed edge swap, each reversed
            Some(h) => {
                eimg[k] = first_piece[e] + usize::from(1 - h);
                flips[k] = true;
            }
            None => {
                eimg[k] = first_piece[xi.edge_perm().apply(e)];
                flips[k] = xi.flip(e);
            }
        }
    }
    let xi_s = GraphAut::new(&s, Perm::from_images(vimg)?, Perm::from_images(eimg)?, flips)?;
    let midpoints = (0..reversed.len()).map(|k| g.vertex_count() + k).collect();
    Ok((s, origin, midpoints, xi_s))
}

fn is_tree(s: &Graph, vertices: &[usize], edges: &[usize]) -> bool {
    if vertices.is_empty() || edges.len() + 1 != vertices.len() {
        return false;
    }
    let mut dsu = Dsu::new(s.vertex_count());
    let acyclic = edges.iter().all(|&e| dsu.union(s.iota(e), s.tau(e)));
    let root = dsu.find(vertices[0]);
    acyclic && vertices.iter().all(|&v| dsu.find(v) == root)
}

pub fn double_tree_decomposition(g: &Graph, xi: &GraphAut) -> Result<DoubleTree> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if !flips_all_simple_loops(g, xi)? {
        return Err(Error::Precondition("xi does not flip every simple loop".into()));
    }
    let (s, edge_origin, midpoints, xs) = subdivide(g, xi)?;
    let fixed_v: Vec<bool> = (0..s.vertex_count()).map(|v| xs.vertex_perm().apply(v) == v).collect();
    let fixed_e: Vec<bool> = (0..s.edge_count()).map(|e| xs.edge_perm().apply(e) == e && !xs.flip(e)).collect();

    // components of the complement of the fixed set, as classes of edges
    let mut dsu = Dsu::new(s.edge_count());
    for v in (0..s.vertex_count()).filter(|&v| !fixed_v[v]) {
        let incident: Vec<usize> = (0..s.edge_count()).filter(|&e| s.iota(e) == v || s.tau(e) == v).collect();
        for w in incident.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut d_edges: BTreeSet<usize> = (0..s.edge_count()).filter(|&e| fixed_e[e]).collect();
    for e in (0..s.edge_count()).filter(|&e| !fixed_e[e]) {
        let root = dsu.find(e);
        let partner = dsu.find(xs.edge_perm().apply(e));
        if root == partner {
            return Err(Error::Precondition("xi preserves a component of the complement of its fixed set".into()));
        }
        // class representatives are minimal edges; keep the half with the smaller one
        if root < partner {
            d_edges.insert(e);
        }
    }
    let mut d_vertices: BTreeSet<usize> = (0..s.vertex_count()).filter(|&v| fixed_v[v]).collect();
    for &e in &d_edges {
        d_vertices.insert(s.iota(e));
        d_vertices.insert(s.tau(e));
    }
    let dp_edges: BTreeSet<usize> = d_edges.iter().map(|&e| xs.edge_perm().apply(e)).collect();
    let dp_vertices: BTreeSet<usize> = d_vertices.iter().map(|&v| xs.vertex_perm().apply(v)).collect();

    let fixed_vertices: Vec<usize> = (0..s.vertex_count()).filter(|&v| fixed_v[v]).collect();
    let fixed_edges: Vec<usize> = (0..s.edge_count()).filter(|&e| fixed_e[e]).collect();
    let d_vertices: Vec<usize> = d_vertices.into_iter().collect();
    let d_edges: Vec<usize> = d_edges.into_iter().collect();
    let d_prime_vertices: Vec<usize> = dp_vertices.iter().copied().collect();
    let d_prime_edges: Vec<usize> = dp_edges.iter().copied().collect();

    let union_v: BTreeSet<usize> = d_vertices.iter().chain(&d_prime_vertices).copied().collect();
    let union_e: BTreeSet<usize> = d_edges.iter().chain(&d_prime_edges).copied().collect();
    let meet_v: Vec<usize> = d_vertices.iter().filter(|v| dp_vertices.contains(v)).copied().collect();
    let meet_e: Vec<usize> = d_edges.iter().filter(|e| dp_edges.contains(e)).copied().collect();
    let back: BTreeSet<usize> = d_prime_edges.iter().map(|&e| xs.edge_perm().apply(e)).collect();
    let checks = DoubleTreeChecks {
        d_is_tree: is_tree(&s, &d_vertices, &d_edges),
        d_prime_is_image: back == d_edges.iter().copied().collect() && is_tree(&s, &d_prime_vertices, &d_prime_edges),
        union_is_whole: union_v.len() == s.vertex_count() && union_e.len() == s.edge_count(),
        intersection_is_fixed_set: meet_v == fixed_vertices && meet_e == fixed_edges,
    };
    Ok(DoubleTree {
        subdivided: s,
        edge_origin,
        midpoints,
        fixed_vertices,
        fixed_edges,
        d_vertices,
        d_edges,
        d_prime_vertices,
        d_prime_edges,
        checks,
    })
}
