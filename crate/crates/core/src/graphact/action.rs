use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graph::{CycleBasis, Dsu, Graph};
use crate::error::{Error, Result};
use crate::exactla::{rat, FiniteRep, GroupDescriptor, GroupKind, Perm, RationalMatrix};

/// A graph automorphism. `flips[e]` is true when `g` reverses the orientation
/// of `e`, i.e. `(ι, τ)(g.e) = (g.τ(e), g.ι(e))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphAut {
    vertices: Perm,
    edges: Perm,
    flips: Vec<bool>,
}

impl GraphAut {
    pub fn new(g: &Graph, vertices: Perm, edges: Perm, flips: Vec<bool>) -> Result<GraphAut> {
        if vertices.degree() != g.vertex_count() || edges.degree() != g.edge_count() || flips.len() != g.edge_count() {
            return Err(Error::InvalidGraphAut("sizes do not match the graph".into()));
        }
        for (e, &flip) in flips.iter().enumerate() {
            let (a, b) = (vertices.apply(g.iota(e)), vertices.apply(g.tau(e)));
            let expected = if flip { (b, a) } else { (a, b) };
            if g.ends()[edges.apply(e)] != expected {
                return Err(Error::InvalidGraphAut(format!("edge {} is not mapped compatibly", g.edge_id(e))));
            }
        }
        Ok(GraphAut { vertices, edges, flips })
    }

    pub fn identity(g: &Graph) -> GraphAut {
        GraphAut {
            vertices: Perm::identity(g.vertex_count()),
            edges: Perm::identity(g.edge_count()),
            flips: vec![false; g.edge_count()],
        }
    }

    /// Permute edges, fixing vertices, without flips.
    pub fn edge_permutation(g: &Graph, edges: Perm) -> Result<GraphAut> {
        GraphAut::new(g, Perm::identity(g.vertex_count()), edges, vec![false; g.edge_count()])
    }

    /// Swap the two vertices of a cage, fixing every edge and reversing it.
    pub fn vertex_swap(g: &Graph) -> Result<GraphAut> {
        if !g.is_cage() {
            return Err(Error::Precondition("vertex swap needs a cage".into()));
        }
        GraphAut::new(g, Perm::transposition(2, 0, 1), Perm::identity(g.edge_count()), vec![true; g.edge_count()])
    }

    /// Reverse the listed loops of a graph, fixing everything else.
    pub fn loop_flips(g: &Graph, loops: &[usize]) -> Result<GraphAut> {
        let mut flips = vec![false; g.edge_count()];
        for &e in loops {
            flips[e] = true;
        }
        GraphAut::new(g, Perm::identity(g.vertex_count()), Perm::identity(g.edge_count()), flips)
    }

    pub fn vertex_perm(&self) -> &Perm {
        &self.vertices
    }

    pub fn edge_perm(&self) -> &Perm {
        &self.edges
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn flip(&self, e: usize) -> bool {
        self.flips[e]
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &GraphAut) -> GraphAut {
        let flips = (0..other.flips.len()).map(|e| other.flips[e] ^ self.flips[other.edges.apply(e)]).collect();
        GraphAut { vertices: self.vertices.compose(&other.vertices), edges: self.edges.compose(&other.edges), flips }
    }

    pub fn inverse(&self) -> GraphAut {
        let edges = self.edges.inverse();
        let mut flips = vec![false; self.flips.len()];
        for (e, &f) in self.flips.iter().enumerate() {
            flips[self.edges.apply(e)] = f;
        }
        GraphAut { vertices: self.vertices.inverse(), edges, flips }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.is_identity() && self.edges.is_identity() && self.flips.iter().all(|&f| !f)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Signed permutation of edge space: `e ↦ ±(g.e)`, minus when flipped.
    ///
    /// This pushes weights forward, `(g f)(g.e) = ±f(e)`, which makes the
    /// assignment `g ↦ matrix` a homomorphism.
    pub fn edge_matrix(&self) -> RationalMatrix {
        let n = self.flips.len();
        let mut m = RationalMatrix::zeros(n, n);
        for e in 0..n {
            m.set(self.edges.apply(e), e, rat(if self.flips[e] { -1 } else { 1 }));
        }
        m
    }

    /// Matrix on `H_1` in the given cycle basis.
    pub fn on_h1(&self, basis: &CycleBasis) -> Result<RationalMatrix> {
        basis
            .coordinates(&(&self.edge_matrix() * &basis.basis))
            .map_err(|_| Error::Precondition("cycle basis is not invariant".into()))
    }
}

/// A presented group acting on a graph, generator by generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAction {
    graph: Graph,
    group: GroupDescriptor,
    maps: Vec<GraphAut>,
}

impl GraphAction {
    pub fn new(graph: Graph, group: GroupDescriptor, maps: Vec<GraphAut>) -> Result<GraphAction> {
        if maps.len() != group.rank() {
            return Err(Error::DimensionMismatch(format!("{} maps for {} generators", maps.len(), group.rank())));
        }
        let inverses: Vec<GraphAut> = maps.iter().map(GraphAut::inverse).collect();
        for r in &group.relations {
            if !r.evaluate(&maps, &inverses, GraphAut::identity(&graph), |a, b| a.compose(b)).is_identity() {
                return Err(Error::RelationFails { group: group.name.clone(), relation: group.relation_name(r) });
            }
        }
        Ok(GraphAction { graph, group, maps })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn maps(&self) -> &[GraphAut] {
        &self.maps
    }

    pub fn map(&self, name: &str) -> Result<&GraphAut> {
        Ok(&self.maps[self.group.generator_index(name)?])
    }

    /// Every generator acts trivially.
    pub fn trivial(graph: Graph, group: GroupDescriptor) -> Result<GraphAction> {
        let maps = vec![GraphAut::identity(&graph); group.rank()];
        GraphAction::new(graph, group, maps)
    }

    /// The group's permutation model acting on consecutive blocks of edges of a
    /// rose or cage: edge `b·k + i` goes to `b·k + π(i)`; leftover edges are fixed.
    pub fn permuting_edges(graph: Graph, group: GroupDescriptor, blocks: usize) -> Result<GraphAction> {
        let (k, perms) = group
            .permutation_model()
            .ok_or_else(|| Error::Precondition(format!("{} has no permutation model", group.name)))?;
        if blocks * k > graph.edge_count() {
            return Err(Error::SizeOutOfRange(format!("{blocks} blocks of {k} edges in {}", graph.edge_count())));
        }
        let maps = perms
            .iter()
            .map(|p| {
                let images = (0..graph.edge_count())
                    .map(|e| if e < blocks * k { e / k * k + p.apply(e % k) } else { e })
                    .collect();
                GraphAut::edge_permutation(&graph, Perm::from_images(images)?)
            })
            .collect::<Result<Vec<_>>>()?;
        GraphAction::new(graph, group, maps)
    }

    /// `W_n` on `rose(n)`: `eps_i` reverses petal `i`, `sigma_i_{i+1}` swaps petals.
    pub fn signed_rose(n: usize) -> Result<GraphAction> {
        let graph = Graph::rose(n)?;
        let group = GroupDescriptor::signed(n)?;
        let mut maps = (0..n).map(|i| GraphAut::loop_flips(&graph, &[i])).collect::<Result<Vec<_>>>()?;
        for k in 0..n - 1 {
            maps.push(GraphAut::edge_permutation(&graph, Perm::transposition(n, k, k + 1))?);
        }
        GraphAction::new(graph, group, maps)
    }

    /// `G_n = Z_2 × S_{n+1}` on the `(n+1)`-cage: `delta` swaps the vertices.
    pub fn cage_group(n: usize) -> Result<GraphAction> {
        let graph = Graph::cage(n + 1)?;
        let group = GroupDescriptor::cage_group(n)?;
        let mut maps = vec![GraphAut::vertex_swap(&graph)?];
        for k in 0..n {
            maps.push(GraphAut::edge_permutation(&graph, Perm::transposition(n + 1, k, k + 1))?);
        }
        GraphAction::new(graph, group, maps)
    }

    /// `Z_2` generated by a single involution.
    pub fn involution(graph: Graph, xi: GraphAut) -> Result<GraphAction> {
        GraphAction::new(graph, GroupDescriptor::cyclic(2)?, vec![xi])
    }

    /// Edge orbits, each sorted, ordered by smallest edge.
    pub fn edge_orbits(&self) -> Vec<Vec<usize>> {
        let m = self.graph.edge_count();
        let mut dsu = Dsu::new(m);
        for g in &self.maps {
            for e in 0..m {
                dsu.union(e, g.edge_perm().apply(e));
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..m {
            classes.entry(dsu.find(e)).or_default().push(e);
        }
        classes.into_values().collect()
    }

    /// Matrix of generator `k` on `H_1` in the graph's standard cycle basis.
    pub fn induced_h1(&self, k: usize) -> Result<RationalMatrix> {
        self.maps[k].on_h1(&self.graph.h1_basis())
    }

    /// The homology representation, in the standard cycle basis.
    pub fn homology_rep(&self) -> Result<FiniteRep> {
        self.homology_rep_in(&self.graph.h1_basis())
    }

    /// The homology representation in a caller-chosen invariant cycle basis.
    pub fn homology_rep_in(&self, basis: &CycleBasis) -> Result<FiniteRep> {
        let matrices = self.maps.iter().map(|g| g.on_h1(basis)).collect::<Result<Vec<_>>>()?;
        FiniteRep::new(self.group.clone(), basis.dim(), matrices)
    }
}

/// `ξ = Δ` for even `n`, `Δσ_12` for odd `n`, on the `(n+1)`-cage.
pub fn builtin_xi(n: usize) -> Result<GraphAut> {
    let graph = Graph::cage(n + 1)?;
    let delta = GraphAut::vertex_swap(&graph)?;
    if n.is_multiple_of(2) {
        Ok(delta)
    } else {
        Ok(delta.compose(&GraphAut::edge_permutation(&graph, Perm::transposition(n + 1, 0, 1))?))
    }
}

/// Parse `rose:N`, `cage:N`, `daisy:K`, `barbell`, `cover:N`, `triangle2`.
pub fn builtin_graph(spec: &str) -> Result<Graph> {
    let bad = || Error::Parse(format!("unknown builtin graph {spec:?}"));
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a.parse::<usize>().map_err(|_| bad())?)),
        None => (spec, None),
    };
    match (kind, arg) {
        ("rose", Some(n)) => Graph::rose(n),
        ("cage", Some(n)) => Graph::cage(n),
        ("daisy", Some(k)) => Graph::daisy_chain(k),
        ("cover", Some(n)) => Graph::cover_of_rose(n),
        ("barbell", None) => Ok(Graph::barbell()),
        ("triangle2", None) => Ok(Graph::triangle_with_doubled_side()),
        _ => Err(bad()),
    }
}

/// The natural action of a named group on a builtin graph.
///
/// `W_n` on `rose:n` reverses and permutes petals; `G_n` on `cage:n+1` is the
/// cage group; permutation groups of degree `k` act on `N / k` blocks of `k`
/// edges when `k` divides the edge count, else on the first `k` edges; the
/// trivial group (or a group whose name ends in `/trivial`) acts trivially.
pub fn builtin_action(graph_spec: &str, group_name: &str) -> Result<GraphAction> {
    let graph = builtin_graph(graph_spec)?;
    if let Some(base) = group_name.strip_suffix("/trivial") {
        return GraphAction::trivial(graph, GroupDescriptor::by_name(base)?);
    }
    let group = GroupDescriptor::by_name(group_name)?;
    match group.kind {
        GroupKind::Trivial => GraphAction::trivial(graph, group),
        GroupKind::Signed(n) if graph.is_rose() && graph.edge_count() == n => GraphAction::signed_rose(n),
        GroupKind::Cage(n) if graph.is_cage() && graph.edge_count() == n + 1 => GraphAction::cage_group(n),
        GroupKind::Symmetric(k) | GroupKind::Alternating(k) | GroupKind::Cyclic(k)
            if graph.is_rose() || graph.is_cage() =>
        {
            let m = graph.edge_count();
            let blocks = if k > 0 && m % k == 0 { m / k } else { 1 };
            GraphAction::permuting_edges(graph, group, blocks)
        }
        _ => Err(Error::Precondition(format!("no builtin action of {group_name} on {graph_spec}"))),
    }
}

/// Parse `vertex-swap`, `delta` (alias), `xi` (the cage involution for `cage:n+1`),
/// `flip-all` (reverse every loop of a rose) or `identity`.
pub fn builtin_involution(graph: &Graph, name: &str) -> Result<GraphAut> {
    match name {
        "vertex-swap" | "delta" => GraphAut::vertex_swap(graph),
        "xi" => {
            if !graph.is_cage() {
                return Err(Error::Precondition("xi is defined on cages".into()));
            }
            builtin_xi(graph.edge_count() - 1)
        }
        "flip-all" => GraphAut::loop_flips(graph, &(0..graph.edge_count()).filter(|&e| graph.is_loop(e)).collect::<Vec<_>>()),
        "identity" => Ok(GraphAut::identity(graph)),
        _ => Err(Error::Parse(format!("unknown involution {name:?}"))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutJson {
    pub vertex_map: BTreeMap<String, u64>,
    pub edge_map: BTreeMap<String, u64>,
    #[serde(default)]
    pub flips: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionJson {
    pub group: GroupDescriptor,
    pub maps: BTreeMap<String, AutJson>,
}

impl AutJson {
    pub fn from_aut(g: &Graph, a: &GraphAut) -> AutJson {
        AutJson {
            vertex_map: (0..g.vertex_count())
                .map(|v| (g.vertex_id(v).to_string(), g.vertex_id(a.vertex_perm().apply(v))))
                .collect(),
            edge_map: (0..g.edge_count()).map(|e| (g.edge_id(e).to_string(), g.edge_id(a.edge_perm().apply(e)))).collect(),
            flips: (0..g.edge_count()).filter(|&e| a.flip(e)).map(|e| (g.edge_id(e).to_string(), true)).collect(),
        }
    }

    pub fn to_aut(&self, g: &Graph) -> Result<GraphAut> {
        let key = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad id {s:?}")));
        let unknown = |what: &str, id: u64| Error::InvalidGraphAut(format!("unknown {what} id {id}"));
        let mut vimg = (0..g.vertex_count()).collect::<Vec<_>>();
        for (k, &v) in &self.vertex_map {
            let k = key(k)?;
            let from = g.vertex_index(k).ok_or_else(|| unknown("vertex", k))?;
            vimg[from] = g.vertex_index(v).ok_or_else(|| unknown("vertex", v))?;
        }
        let mut eimg = (0..g.edge_count()).collect::<Vec<_>>();
        for (k, &e) in &self.edge_map {
            let k = key(k)?;
            let from = g.edge_index(k).ok_or_else(|| unknown("edge", k))?;
            eimg[from] = g.edge_index(e).ok_or_else(|| unknown("edge", e))?;
        }
        let mut flips = vec![false; g.edge_count()];
        for (k, &f) in &self.flips {
            let k = key(k)?;
            flips[g.edge_index(k).ok_or_else(|| unknown("edge", k))?] = f;
        }
        let bad = |e: Error| Error::InvalidGraphAut(e.to_string());
        GraphAut::new(g, Perm::from_images(vimg).map_err(bad)?, Perm::from_images(eimg).map_err(bad)?, flips)
    }
}

impl ActionJson {
    pub fn from_action(a: &GraphAction) -> ActionJson {
        ActionJson {
            group: a.group.clone(),
            maps: a.group.generators.iter().cloned().zip(a.maps.iter().map(|m| AutJson::from_aut(&a.graph, m))).collect(),
        }
    }

    /// Missing generators are read as the identity.
    pub fn to_action(&self, graph: Graph) -> Result<GraphAction> {
        for name in self.maps.keys() {
            self.group.generator_index(name)?;
        }
        let maps = self
            .group
            .generators
            .iter()
            .map(|name| self.maps.get(name).map_or_else(|| Ok(GraphAut::identity(&graph)), |j| j.to_aut(&graph)))
            .collect::<Result<Vec<_>>>()?;
        GraphAction::new(graph, self.group.clone(), maps)
    }
}
