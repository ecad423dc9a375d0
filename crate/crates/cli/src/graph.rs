//! `graph` subactions.

use std::path::Path;

use serde_json::{json, Value};

use outfn_core::exactla::{multiplicity, trivial_multiplicity, GroupKind, NamedRep};
use outfn_core::graphact::{
    admissibility, admissibility_obstruction, builtin_action, builtin_graph, builtin_involution,
    cage_trivial_multiplicity_check, collapse, double_tree_decomposition, flips_all_simple_loops,
    invariant_orientation, ActionJson, DoubleTree, Graph, GraphAction as Action,
};
use outfn_core::report::{Report, Status};

use crate::{usage, Cli, CliResult, GraphAction};

/// Where the graph and its group action come from.
pub struct Source<'a> {
    pub group: &'a str,
    pub graph: Option<&'a Path>,
    pub action: Option<&'a Path>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed {what} in {}: {e}", path.display())))
}

fn load_graph(cli: &Cli, src: &Source) -> CliResult<(String, Graph)> {
    match (&cli.builtin, src.graph) {
        (Some(_), Some(_)) => Err(usage("give either --builtin or --graph, not both")),
        (Some(name), None) => Ok((name.clone(), builtin_graph(name)?)),
        (None, Some(path)) => Ok((path.display().to_string(), read_json(path, "graph")?)),
        (None, None) => Err(usage("graph commands need --builtin or --graph")),
    }
}

fn load_action(cli: &Cli, src: &Source) -> CliResult<(String, Action)> {
    let (label, graph) = load_graph(cli, src)?;
    let action = match (src.action, &cli.builtin) {
        (Some(path), _) => read_json::<ActionJson>(path, "action")?.to_action(graph)?,
        (None, Some(name)) => builtin_action(name, src.group)?,
        (None, None) => return Err(usage("a graph file needs an --action file")),
    };
    Ok((label, action))
}

pub fn run(cli: &Cli, what: GraphAction, src: &Source, xi: &str, subset: &[usize]) -> CliResult<Report> {
    match what {
        GraphAction::Admissible => admissible(cli, src),
        GraphAction::Homology => homology(cli, src),
        GraphAction::RoseLemma => rose_lemma(cli, src),
        GraphAction::CageLemma => cage_lemma(cli, src),
        GraphAction::DoubleTree => double_tree(cli, src, xi),
        GraphAction::Collapse => collapse_cmd(cli, src, subset),
    }
}

fn action_report(command: &str, label: &str, action: &Action) -> Report {
    let g = action.graph();
    Report::new(
        command,
        json!({
            "graph": label,
            "group": action.group().name,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
        }),
    )
}

fn admissible(cli: &Cli, src: &Source) -> CliResult<Report> {
    let (label, action) = load_action(cli, src)?;
    let mut report = action_report("graph admissible", &label, &action);
    let g = action.graph();
    report.check("connected", g.is_connected(), Value::Null);
    if g.is_connected() {
        let adm = admissibility(&action)?;
        report.check("no valence-two vertices", adm.valence_two.is_empty(), json!({ "vertices": adm.valence_two }));
        report.check(
            "no invariant non-trivial forest",
            adm.forests.is_empty(),
            json!({ "orbits": action.edge_orbits(), "forests": adm.forests }),
        );
        report.check("admissible", adm.admissible, json!({ "obstruction": admissibility_obstruction(g) }));
    } else {
        report.push("admissible", Status::Fail, json!("disconnected graphs are not admissible"));
    }
    Ok(report)
}

fn homology(cli: &Cli, src: &Source) -> CliResult<Report> {
    let (label, action) = load_action(cli, src)?;
    let mut report = action_report("graph homology", &label, &action);
    let g = action.graph();
    let h1 = g.h1_basis().dim();
    let expected = g.edge_count() + g.components() - g.vertex_count();
    report.check("dim H_1 = |E| - |V| + components", h1 == expected, json!({ "dim": h1, "expected": expected }));
    let rep = action.homology_rep()?;
    report.check("homology matrices satisfy the group relations", true, json!({ "relations": action.group().relations.len() }));
    let mut mult = serde_json::Map::new();
    mult.insert("trivial".into(), json!(trivial_multiplicity(&rep)));
    if let GroupKind::Symmetric(_) = rep.kind() {
        for name in NamedRep::IRREDUCIBLE {
            mult.insert(name.to_string(), json!(multiplicity(&rep, name)?));
        }
    }
    report.check("multiplicities", true, Value::Object(mult));
    Ok(report)
}

fn rose_lemma(cli: &Cli, src: &Source) -> CliResult<Report> {
    let (label, action) = load_action(cli, src)?;
    let mut report = action_report("graph rose-lemma", &label, &action);
    let o = invariant_orientation(&action)?;
    report.check("invariant orientation exists", o.orientation.is_some(), json!({ "orientation": o.orientation }));
    report.check(
        "trivial multiplicity = orbit count",
        o.trivial_multiplicity == o.orbit_count,
        json!({ "trivial_multiplicity": o.trivial_multiplicity, "orbits": o.orbit_count }),
    );
    Ok(report)
}

fn cage_lemma(cli: &Cli, src: &Source) -> CliResult<Report> {
    let (label, action) = load_action(cli, src)?;
    let mut report = action_report("graph cage-lemma", &label, &action);
    let c = cage_trivial_multiplicity_check(&action)?;
    report.check(
        "trivial multiplicity = orbit count - 1",
        c.passed,
        json!({ "trivial_multiplicity": c.trivial_multiplicity, "orbits": c.orbit_count }),
    );
    Ok(report)
}

/// Centre vertex when the subgraph `D` is a star.
pub fn star_centre(d: &DoubleTree) -> Option<usize> {
    let s = &d.subdivided;
    d.d_vertices.iter().copied().find(|&v| {
        d.d_edges.iter().all(|&e| (s.iota(e) == v) != (s.tau(e) == v))
    })
}

fn double_tree(cli: &Cli, src: &Source, xi_name: &str) -> CliResult<Report> {
    let (label, g) = load_graph(cli, src)?;
    let xi = builtin_involution(&g, xi_name)?;
    let mut report = Report::new(
        "graph double-tree",
        json!({ "graph": label, "xi": xi_name, "vertices": g.vertex_count(), "edges": g.edge_count() }),
    );
    report.check("xi is an involution", xi.is_involution(), Value::Null);
    let flips = xi.is_involution() && flips_all_simple_loops(&g, &xi)?;
    report.check("xi flips every simple loop", flips, Value::Null);
    if !flips || !g.is_connected() {
        report.push("decomposition", Status::Skip, json!("preconditions not met"));
        return Ok(report);
    }
    let d = double_tree_decomposition(&g, &xi)?;
    let centre = star_centre(&d);
    report.check(
        "D is a tree",
        d.checks.d_is_tree,
        json!({ "vertices": d.d_vertices.len(), "edges": d.d_edges.len(), "star_centre": centre }),
    );
    report.check("D' = xi(D)", d.checks.d_prime_is_image, Value::Null);
    report.check("D and D' cover the graph", d.checks.union_is_whole, Value::Null);
    report.check(
        "D meets D' in the fixed set",
        d.checks.intersection_is_fixed_set,
        json!({ "fixed_vertices": d.fixed_vertices, "midpoints": d.midpoints }),
    );
    Ok(report)
}

fn collapse_cmd(cli: &Cli, src: &Source, subset: &[usize]) -> CliResult<Report> {
    let (label, g) = load_graph(cli, src)?;
    let c = collapse(&g, subset)?;
    let mut report = Report::new("graph collapse", json!({ "graph": label, "subset": subset }));
    report.check(
        "point preimages are connected",
        g.is_forest(subset.iter().copied()),
        json!({ "vertex_map": c.vertex_map }),
    );
    report.check(
        "surjective on homology",
        c.is_surjective(),
        json!({ "quotient": c.graph, "homology_map": c.homology_map }),
    );
    Ok(report)
}
