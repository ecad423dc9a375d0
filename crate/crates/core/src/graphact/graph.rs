use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rat, RationalMatrix, Subspace};

/// A finite multigraph. Vertices and edges are indexed `0..`; every edge is
/// oriented from `iota` to `tau`. Loops and parallel edges are allowed.
///
/// External ids are kept only for JSON; builders use ids equal to indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_ids: Vec<u64>,
    edge_ids: Vec<u64>,
    ends: Vec<(usize, usize)>,
}

/// Union-find with path halving; small and local.
pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl Graph {
    pub fn new(vertices: usize, ends: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some(&(a, b)) = ends.iter().find(|&&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) leaves the {vertices} vertices")));
        }
        Ok(Graph {
            vertex_ids: (0..vertices as u64).collect(),
            edge_ids: (0..ends.len() as u64).collect(),
            ends,
        })
    }

    /// One vertex, `n` loops.
    pub fn rose(n: usize) -> Result<Graph> {
        if n < 1 {
            return Err(Error::SizeOutOfRange(format!("rose({n})")));
        }
        Graph::new(1, vec![(0, 0); n])
    }

    /// Two vertices, `n` parallel edges from vertex 0 to vertex 1.
    pub fn cage(n: usize) -> Result<Graph> {
        if n < 1 {
            return Err(Error::SizeOutOfRange(format!("cage({n})")));
        }
        Graph::new(2, vec![(0, 1); n])
    }

    /// `k` vertices in a cycle, each consecutive pair joined by two parallel edges.
    /// Edges `2i` and `2i+1` join vertex `i` to `i+1 mod k`.
    pub fn daisy_chain(k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::SizeOutOfRange(format!("daisy_chain({k})")));
        }
        let ends = (0..k).flat_map(|i| [(i, (i + 1) % k); 2]).collect();
        Graph::new(k, ends)
    }

    /// Two loops joined by a bridge: loop at 0, loop at 1, then the bridge `0 -> 1`.
    pub fn barbell() -> Graph {
        Graph::new(2, vec![(0, 0), (1, 1), (0, 1)]).expect("valid")
    }

    /// The connected 2-sheeted cover of `rose(n)` in which the last petal lifts
    /// to two edges joining the sheets. Edge order: lifts `x_1..x_{n-1}` (loops
    /// at 0), lifts `y_1..y_{n-1}` (loops at 1), then `0 -> 1` and `1 -> 0`.
    pub fn cover_of_rose(n: usize) -> Result<Graph> {
        if n < 1 {
            return Err(Error::SizeOutOfRange(format!("cover_of_rose({n})")));
        }
        let mut ends = vec![(0, 0); n - 1];
        ends.extend(vec![(1, 1); n - 1]);
        ends.push((0, 1));
        ends.push((1, 0));
        Graph::new(2, ends)
    }

    /// A triangle whose side `1-2` is doubled: edges `0-1`, `1-2`, `1-2`, `2-0`.
    pub fn triangle_with_doubled_side() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (1, 2), (2, 0)]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn iota(&self, e: usize) -> usize {
        self.ends[e].0
    }

    pub fn tau(&self, e: usize) -> usize {
        self.ends[e].1
    }

    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn vertex_id(&self, v: usize) -> u64 {
        self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: usize) -> u64 {
        self.edge_ids[e]
    }

    pub fn vertex_index(&self, id: u64) -> Option<usize> {
        self.vertex_ids.iter().position(|&v| v == id)
    }

    pub fn edge_index(&self, id: u64) -> Option<usize> {
        self.edge_ids.iter().position(|&e| e == id)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.ends[e].0 == self.ends[e].1
    }

    /// Loops count twice.
    pub fn valence(&self, v: usize) -> usize {
        self.ends.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn components(&self) -> usize {
        let mut dsu = Dsu::new(self.vertex_count());
        let merged = self.ends.iter().filter(|&&(a, b)| dsu.union(a, b)).count();
        self.vertex_count() - merged
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components() == 1
    }

    /// `|E| - |V| + components`.
    pub fn betti(&self) -> usize {
        self.edge_count() + self.components() - self.vertex_count()
    }

    pub fn is_rose(&self) -> bool {
        self.vertex_count() == 1 && self.edge_count() >= 1
    }

    pub fn is_cage(&self) -> bool {
        self.vertex_count() == 2 && self.edge_count() >= 1 && self.ends.iter().all(|&(a, b)| a != b)
    }

    /// Whether the edges in `subset` form a forest.
    pub fn is_forest(&self, subset: impl IntoIterator<Item = usize>) -> bool {
        let mut dsu = Dsu::new(self.vertex_count());
        subset.into_iter().all(|e| dsu.union(self.ends[e].0, self.ends[e].1))
    }

    /// `∂` as a `|V| × |E|` matrix: `∂e = τ(e) − ι(e)`.
    pub fn boundary_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.vertex_count(), self.edge_count());
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if a != b {
                m.set(b, e, rat(1));
                m.set(a, e, rat(-1));
            }
        }
        m
    }

    pub fn h1_basis(&self) -> CycleBasis {
        CycleBasis { basis: self.boundary_matrix().kernel_basis() }
    }

    /// Edges whose removal disconnects their component.
    pub fn separating_edges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let mut dsu = Dsu::new(self.vertex_count());
                for (f, &(a, b)) in self.ends.iter().enumerate() {
                    if f != e {
                        dsu.union(a, b);
                    }
                }
                dsu.find(self.ends[e].0) != dsu.find(self.ends[e].1)
            })
            .collect()
    }
}

/// A basis of `H_1` as edge-weight vectors (one column per cycle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasis {
    pub basis: RationalMatrix,
}

impl CycleBasis {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span(&self.basis)
    }

    /// Coordinates of each column of `weights` in this basis.
    pub fn coordinates(&self, weights: &RationalMatrix) -> Result<RationalMatrix> {
        self.basis.solve(weights)?.ok_or_else(|| Error::Precondition("edge weights are not a cycle".into()))
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: u64,
    iota: u64,
    tau: u64,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u64>,
    edges: Vec<EdgeJson>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertex_ids.clone(),
            edges: self
                .ends
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| EdgeJson { id: self.edge_ids[e], iota: self.vertex_ids[a], tau: self.vertex_ids[b] })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GraphJson::deserialize(deserializer)?;
        let index: BTreeMap<u64, usize> = raw.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != raw.vertices.len() {
            return Err(D::Error::custom("duplicate vertex id"));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut ends = Vec::new();
        for e in &raw.edges {
            if !seen.insert(e.id) {
                return Err(D::Error::custom(format!("duplicate edge id {}", e.id)));
            }
            let a = index.get(&e.iota).ok_or_else(|| D::Error::custom(format!("unknown vertex {}", e.iota)))?;
            let b = index.get(&e.tau).ok_or_else(|| D::Error::custom(format!("unknown vertex {}", e.tau)))?;
            ends.push((*a, *b));
        }
        Ok(Graph { vertex_ids: raw.vertices, edge_ids: raw.edges.iter().map(|e| e.id).collect(), ends })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_shapes() {
        let c = Graph::cage(7).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (2, 7));
        let cover = Graph::cover_of_rose(5).unwrap();
        assert_eq!((cover.vertex_count(), cover.edge_count(), cover.betti()), (2, 10, 9));
        let r = Graph::rose(1).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count(), r.betti()), (1, 1, 1));
        assert!(Graph::daisy_chain(1).is_err());
        assert!(Graph::rose(0).is_err());
    }

    #[test]
    fn cycle_space_dimensions() {
        let rose = Graph::rose(4).unwrap().h1_basis();
        assert!(rose.basis.is_identity());
        assert_eq!(Graph::cage(5).unwrap().h1_basis().dim(), 4);
        let barbell = Graph::barbell();
        let b = barbell.h1_basis();
        assert_eq!(b.dim(), 2);
        assert!(b.basis.row(2).iter().all(|x| *x == rat(0)));
        assert_eq!(barbell.separating_edges(), vec![2]);
    }

    #[test]
    fn cage_boundary_kernels() {
        // 3-cage: 2x3 boundary, kernel 2; 4-cage: 2x4 boundary, kernel 3
        let b3 = Graph::cage(3).unwrap().boundary_matrix();
        assert_eq!((b3.rows(), b3.cols(), b3.kernel_basis().cols()), (2, 3, 2));
        let b4 = Graph::cage(4).unwrap().boundary_matrix();
        assert_eq!((b4.rows(), b4.cols(), b4.kernel_basis().cols()), (2, 4, 3));
    }

    #[test]
    fn json_round_trip_with_foreign_ids() {
        let g: Graph = serde_json::from_str(
            r#"{"vertices":[10,20],"edges":[{"id":5,"iota":10,"tau":20},{"id":7,"iota":20,"tau":20}]}"#,
        )
        .unwrap();
        assert_eq!(g.ends(), &[(0, 1), (1, 1)]);
        assert_eq!(g.edge_id(1), 7);
        let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"vertices":[1],"edges":[{"id":0,"iota":1,"tau":2}]}"#).is_err());
    }
}
