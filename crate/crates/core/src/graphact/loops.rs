use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::action::GraphAut;
use super::graph::Graph;
use crate::error::{Error, Result};
use crate::exactla::{rat, Rational};

pub const DEFAULT_MAX_EDGES: usize = 32;

/// Edge cap for exhaustive loop enumeration; `OUTFN_MAX_EDGES` overrides it.
pub fn max_edges() -> usize {
    std::env::var("OUTFN_MAX_EDGES").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_EDGES)
}

fn check_cap(g: &Graph) -> Result<()> {
    let cap = max_edges();
    if g.edge_count() > cap {
        return Err(Error::TooManyEdges { edges: g.edge_count(), cap });
    }
    Ok(())
}

/// A simple loop: edge `edges[k]` runs from `vertices[k]` to `vertices[k+1]`
/// (cyclically). Normalised to start at its smallest vertex, with the first
/// edge smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleLoop {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl SimpleLoop {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }

    /// `±1` on each traversed edge according to direction of travel.
    pub fn weights(&self, g: &Graph) -> Vec<Rational> {
        let mut w = vec![rat(0); g.edge_count()];
        for (k, &e) in self.edges.iter().enumerate() {
            w[e] = if g.iota(e) == self.vertices[k] { rat(1) } else { rat(-1) };
        }
        w
    }
}

/// Every simple loop, up to rotation and reversal.
///
/// From each root `r` a DFS walks through vertices larger than `r` and closes
/// at `r`; each loop is then found once per direction and deduplicated by its
/// edge set, which determines a simple loop.
pub fn simple_loops(g: &Graph) -> Result<Vec<SimpleLoop>> {
    check_cap(g)?;
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (e, &(a, b)) in g.ends().iter().enumerate() {
        adjacency[a].push((e, b));
        if a != b {
            adjacency[b].push((e, a));
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for root in 0..g.vertex_count() {
        let mut path_v = vec![root];
        let mut path_e = Vec::new();
        let mut on_path = vec![false; g.vertex_count()];
        on_path[root] = true;
        dfs(root, root, &adjacency, &mut path_v, &mut path_e, &mut on_path, &mut seen, &mut out);
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    root: usize,
    at: usize,
    adjacency: &[Vec<(usize, usize)>],
    path_v: &mut Vec<usize>,
    path_e: &mut Vec<usize>,
    on_path: &mut [bool],
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<SimpleLoop>,
) {
    for &(e, next) in &adjacency[at] {
        if path_e.contains(&e) {
            continue;
        }
        if next == root {
            path_e.push(e);
            let mut key = path_e.clone();
            key.sort_unstable();
            if seen.insert(key) {
                out.push(normalise(path_v.clone(), path_e.clone()));
            }
            path_e.pop();
        } else if next > root && !on_path[next] {
            on_path[next] = true;
            path_v.push(next);
            path_e.push(e);
            dfs(root, next, adjacency, path_v, path_e, on_path, seen, out);
            path_e.pop();
            path_v.pop();
            on_path[next] = false;
        }
    }
}

fn normalise(vertices: Vec<usize>, edges: Vec<usize>) -> SimpleLoop {
    // the root is already the smallest vertex and sits first
    if edges.len() >= 2 && edges[0] > edges[edges.len() - 1] {
        let mut v = vec![vertices[0]];
        v.extend(vertices[1..].iter().rev());
        let e = edges.into_iter().rev().collect();
        SimpleLoop { vertices: v, edges: e }
    } else {
        SimpleLoop { vertices, edges }
    }
}

/// Length of the shortest simple loop through `e`; `None` when `e` separates.
///
/// A shortest path between the endpoints avoiding `e` is simple, so BFS is exact.
pub fn min_loop_through_edge(g: &Graph, e: usize) -> Option<usize> {
    let (a, b) = g.ends()[e];
    if a == b {
        return Some(1);
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for (f, &(x, y)) in g.ends().iter().enumerate() {
            if f == e || x == y {
                continue;
            }
            let w = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (dist[b] != usize::MAX).then(|| dist[b] + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The lemma's hypothesis fails: these edges separate the graph.
    SeparatingEdges { edges: Vec<usize> },
    /// Every other edge at `vertex` has a different shortest-loop length than `edge`.
    Witness { edge: usize, vertex: usize, m: usize },
}

/// The first edge/endpoint pair (in edge order, `ι` before `τ`) witnessing
/// non-admissibility, or `None` when no such pair exists.
///
/// The neighbours compared are all other edges incident to the endpoint,
/// including edges sharing both endpoints; comparing only edges meeting `e`
/// in exactly one point would flag every cage.
pub fn admissibility_obstruction(g: &Graph) -> Option<Obstruction> {
    let separating = g.separating_edges();
    if !separating.is_empty() {
        return Some(Obstruction::SeparatingEdges { edges: separating });
    }
    let m: Vec<usize> = (0..g.edge_count()).map(|e| min_loop_through_edge(g, e).expect("no separating edges")).collect();
    for e in 0..g.edge_count() {
        let (a, b) = g.ends()[e];
        for x in if a == b { vec![a] } else { vec![a, b] } {
            let distinct = (0..g.edge_count())
                .filter(|&f| f != e && (g.iota(f) == x || g.tau(f) == x))
                .all(|f| m[f] != m[e]);
            if distinct {
                return Some(Obstruction::Witness { edge: e, vertex: x, m: m[e] });
            }
        }
    }
    None
}

/// Whether `xi` maps every simple loop to itself with reversed orientation.
pub fn flips_all_simple_loops(g: &Graph, xi: &GraphAut) -> Result<bool> {
    if !xi.is_involution() {
        return Err(Error::Precondition("xi is not an involution".into()));
    }
    let p = xi.edge_matrix();
    for l in simple_loops(g)? {
        let v = l.weights(g);
        let minus: Vec<Rational> = v.iter().map(|x| -x).collect();
        if p.apply(&v) != minus {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Perm;

    #[test]
    fn loop_counts() {
        for n in 1..=6 {
            let cage = simple_loops(&Graph::cage(n).unwrap()).unwrap();
            assert_eq!(cage.len(), n * (n - 1) / 2);
            assert!(cage.iter().all(|l| l.len() == 2));
            let rose = simple_loops(&Graph::rose(n).unwrap()).unwrap();
            assert_eq!(rose.len(), n);
            assert!(rose.iter().all(|l| l.len() == 1));
        }
        for k in 3..=6 {
            let loops = simple_loops(&Graph::daisy_chain(k).unwrap()).unwrap();
            assert_eq!(loops.iter().filter(|l| l.len() == 2).count(), k);
            assert_eq!(loops.iter().filter(|l| l.len() == k).count(), 1 << k);
            assert_eq!(loops.len(), k + (1 << k));
        }
    }

    #[test]
    fn loop_weights_are_cycles() {
        let g = Graph::daisy_chain(4).unwrap();
        let d = g.boundary_matrix();
        for l in simple_loops(&g).unwrap() {
            assert!(d.apply(&l.weights(&g)).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn shortest_loops() {
        assert_eq!(min_loop_through_edge(&Graph::cage(3).unwrap(), 1), Some(2));
        assert_eq!(min_loop_through_edge(&Graph::barbell(), 2), None);
        assert_eq!(min_loop_through_edge(&Graph::rose(3).unwrap(), 0), Some(1));
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(admissibility_obstruction(&Graph::cage(4).unwrap()), None);
        assert_eq!(admissibility_obstruction(&Graph::rose(4).unwrap()), None);
        assert_eq!(
            admissibility_obstruction(&Graph::barbell()),
            Some(Obstruction::SeparatingEdges { edges: vec![2] })
        );
        assert!(matches!(
            admissibility_obstruction(&Graph::triangle_with_doubled_side()),
            Some(Obstruction::Witness { edge: 0, vertex: 1, m: 3 })
        ));
    }

    #[test]
    fn flip_checks() {
        let cage = Graph::cage(4).unwrap();
        assert!(flips_all_simple_loops(&cage, &GraphAut::vertex_swap(&cage).unwrap()).unwrap());
        let rose = Graph::rose(3).unwrap();
        assert!(!flips_all_simple_loops(&rose, &GraphAut::identity(&rose)).unwrap());
        let c = GraphAut::edge_permutation(&cage, Perm::from_cycle(4, &[0, 1, 2])).unwrap();
        assert!(flips_all_simple_loops(&cage, &c).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(simple_loops(&Graph::rose(33).unwrap()), Err(Error::TooManyEdges { edges: 33, .. })));
    }
}
