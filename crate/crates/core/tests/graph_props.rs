use std::collections::BTreeSet;

use outfn_core::graphact::{admissibility_obstruction, collapse, Graph, Obstruction};
use proptest::prelude::*;

fn graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |v| {
        prop::collection::vec((0..v, 0..v), 0..=max_e).prop_map(move |ends| Graph::new(v, ends).unwrap())
    })
}

/// Connected: a random spanning tree plus extra edges.
fn connected_graph(max_v: usize, extra: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |v| {
        (prop::collection::vec(any::<prop::sample::Index>(), v - 1), prop::collection::vec((0..v, 0..v), 0..=extra))
            .prop_map(move |(parents, more)| {
                let mut ends: Vec<(usize, usize)> = parents.iter().enumerate().map(|(k, p)| (p.index(k + 1), k + 1)).collect();
                ends.extend(more);
                Graph::new(v, ends).unwrap()
            })
    })
}

fn components(g: &Graph) -> usize {
    let v = g.vertex_count();
    let mut seen = vec![false; v];
    let mut count = 0;
    for s in 0..v {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &(a, b) in g.ends() {
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
    }
    count
}

/// Every edge set forming a simple loop, by scanning all subsets.
fn brute_force_cycles(g: &Graph) -> Vec<BTreeSet<usize>> {
    let m = g.edge_count();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let mut deg = vec![0; g.vertex_count()];
        for &e in &edges {
            let (a, b) = g.ends()[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let sub = Graph::new(g.vertex_count(), edges.iter().map(|&e| g.ends()[e]).collect()).unwrap();
        let used = deg.iter().filter(|&&d| d > 0).count();
        // connected on its support
        if components(&sub) == g.vertex_count() - used + 1 {
            out.push(edges.into_iter().collect());
        }
    }
    out
}

fn brute_force_obstruction(g: &Graph) -> Option<Obstruction> {
    let cycles = brute_force_cycles(g);
    let m: Vec<Option<usize>> = (0..g.edge_count())
        .map(|e| cycles.iter().filter(|c| c.contains(&e)).map(BTreeSet::len).min())
        .collect();
    let separating: Vec<usize> = (0..g.edge_count()).filter(|&e| m[e].is_none()).collect();
    if !separating.is_empty() {
        return Some(Obstruction::SeparatingEdges { edges: separating });
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.ends()[e];
        let ends = if a == b { vec![a] } else { vec![a, b] };
        for x in ends {
            let others = (0..g.edge_count()).filter(|&f| f != e && (g.ends()[f].0 == x || g.ends()[f].1 == x));
            if others.into_iter().all(|f| m[f] != m[e]) {
                return Some(Obstruction::Witness { edge: e, vertex: x, m: m[e].unwrap() });
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_characteristic(g in graph(8, 16)) {
        let expected = g.edge_count() + components(&g) - g.vertex_count();
        prop_assert_eq!(g.h1_basis().dim(), expected);
        prop_assert_eq!(g.betti(), expected);
        prop_assert!((&g.boundary_matrix() * &g.h1_basis().basis).is_zero());
    }
}

proptest! {
    #[test]
    fn obstruction_matches_brute_force(g in connected_graph(5, 6)) {
        prop_assert_eq!(admissibility_obstruction(&g), brute_force_obstruction(&g));
    }

    #[test]
    fn collapses_compose(g in connected_graph(6, 5), split in any::<prop::sample::Index>()) {
        // the first |V| - 1 edges form a spanning tree; collapse a prefix, then the rest
        let tree: Vec<usize> = (0..g.vertex_count() - 1).collect();
        let k = split.index(tree.len() + 1);
        let (first, second) = tree.split_at(k);
        let c1 = collapse(&g, first).unwrap();
        let mapped: Vec<usize> = second.iter().map(|&e| c1.edge_map[e].unwrap()).collect();
        let c2 = collapse(&c1.graph, &mapped).unwrap();
        let direct = collapse(&g, &tree).unwrap();
        prop_assert_eq!(&c2.homology_map * &c1.homology_map, direct.homology_map.clone());
        prop_assert!(direct.is_surjective());
        prop_assert!(direct.graph.is_rose() || direct.graph.edge_count() == 0);
    }
}
