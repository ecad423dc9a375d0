//! `gersten`, `decompose`, `section4` and `induce`.

use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use outfn_core::exactla::{check_diamond, divisibility_check, eps_decomposition, FiniteRep};
use outfn_core::glrep::{self, Mu};
use outfn_core::graphact::Graph;
use outfn_core::report::{Report, Status};
use outfn_core::word::{gersten_relations, GerstenReport};

use crate::reps::builtin_rep;
use crate::{usage, Cli, CliResult};

fn rank_in(cli: &Cli, lo: usize, hi: usize) -> CliResult<usize> {
    let n = cli.n.ok_or_else(|| usage("--n is required"))?;
    if !(lo..=hi).contains(&n) {
        return Err(usage(format!("--n must lie in {lo}..={hi}, got {n}")));
    }
    Ok(n)
}

pub fn gersten(cli: &Cli) -> CliResult<Report> {
    let n = rank_in(cli, 3, 8)?;
    let relations = gersten_relations(n)?;
    let outcomes = relations
        .into_par_iter()
        .map(|r| {
            let ok = r.holds_in_out(n)?;
            Ok((r, ok))
        })
        .collect::<outfn_core::Result<Vec<_>>>()?;
    let summary = GerstenReport::from_outcomes(n, &outcomes);
    let mut report = Report::new("gersten", json!({ "n": n }));
    for f in &summary.families {
        report.check(f.name.clone(), f.passed(), json!({ "tuples": f.tuples, "failures": f.failures }));
    }
    report.check(
        "total relations",
        summary.all_pass(),
        json!({ "relations": summary.total_relations() }),
    );
    Ok(report)
}

fn eps_rank(rep: &FiniteRep) -> CliResult<usize> {
    let names = &rep.group().generators;
    let n = (1..).take_while(|i| names.iter().any(|g| *g == format!("eps_{i}"))).count();
    if n == 0 {
        return Err(usage("representation has no eps_1 generator"));
    }
    Ok(n)
}

/// Decomposition, divisibility and diamond checks on one representation.
pub fn decompose_rep(label: &str, rep: &FiniteRep) -> CliResult<Report> {
    let n = eps_rank(rep)?;
    let decomp = eps_decomposition(rep, n)?;
    let mut report = Report::new("decompose", json!({ "source": label, "group": rep.group().name, "n": n, "dim": rep.dim() }));
    report.check("relations", true, json!({ "count": rep.group().relations.len() }));
    report.check(
        "dimension sum",
        decomp.total_dim() == rep.dim(),
        json!({ "sum": decomp.total_dim(), "dim": rep.dim(), "eigenspaces": decomp.dims_table() }),
    );
    let div = divisibility_check(&decomp);
    for layer in &div.layers {
        report.check(
            format!("binom({n},{}) divides dim V_{}", layer.i, layer.i),
            layer.divides,
            json!({ "dim": layer.dim, "binomial": layer.binomial.to_string() }),
        );
    }
    let mut diamonds = 0;
    for name in &rep.group().generators {
        let Some((i, j)) = parse_rho(name) else { continue };
        if i > n || j > n {
            continue;
        }
        diamonds += 1;
        let holds = check_diamond(rep.matrix(name)?, &decomp, i, j)?;
        report.check(format!("diamond {name}"), holds, json!({ "i": i, "j": j }));
    }
    if diamonds == 0 {
        report.push("diamond", Status::Skip, json!("no rho generators in this representation"));
    }
    Ok(report)
}

fn parse_rho(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("rho_")?;
    let (i, j) = rest.split_once('_')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

pub fn decompose(cli: &Cli, file: Option<&Path>) -> CliResult<Report> {
    let (label, rep) = match (file, &cli.builtin) {
        (Some(_), Some(_)) => return Err(usage("give either a representation file or --builtin, not both")),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let rep: FiniteRep = serde_json::from_str(&text).map_err(|e| usage(format!("malformed representation: {e}")))?;
            (path.display().to_string(), rep)
        }
        (None, Some(name)) => (name.clone(), builtin_rep(name)?),
        (None, None) => return Err(usage("decompose needs a representation file or --builtin")),
    };
    decompose_rep(&label, &rep)
}

pub fn formulas(cli: &Cli) -> CliResult<Report> {
    let n = rank_in(cli, 3, 6)?;
    let s4 = glrep::verify_closed_formulas(n)?;
    let mut report = Report::new("section4", json!({ "n": n }));
    for family in [glrep::Family::PartialConjugation, glrep::Family::Commutator] {
        let cases: Vec<_> = s4.cases.iter().filter(|c| c.family == family).collect();
        let mismatches: Vec<_> = cases.iter().filter(|c| !c.matches()).collect();
        let name = match family {
            glrep::Family::PartialConjugation => "psi' of rho_ij lambda_ij^-1",
            glrep::Family::Commutator => "psi' of [rho_ij, rho_ik]",
        };
        report.check(name, mismatches.is_empty(), json!({ "cases": cases.len(), "mismatches": mismatches }));
    }
    for c in &s4.inner {
        let rhs = if c.expected_scalar == 1 { "I" } else { "-I" };
        report.check(format!("psi'(c_a_{}) = {rhs}", c.i), c.holds, Value::Null);
    }
    report.check("tau commutes with psi", s4.tau_commutes, Value::Null);
    let (minus, plus) = s4.tau_eigen_dims;
    report.check(
        "tau eigenspace dims",
        s4.tau_eigen_dims == (n - 1, n),
        json!({ "minus_one": minus, "plus_one": plus }),
    );
    let c_an = outfn_core::word::Automorphism::inner(&outfn_core::word::Word::reduce(n, &[-(n as i32)])?);
    report.check("psi(conjugation by a_n) = tau", glrep::psi(&c_an)? == glrep::tau_matrix(n)?, Value::Null);
    let cover = Graph::cover_of_rose(n)?;
    let basis = glrep::SchreierBasis::new(n)?;
    report.check(
        "cover homology rank = Schreier basis size",
        cover.betti() == basis.size(),
        json!({ "betti": cover.betti(), "basis": basis.size() }),
    );
    Ok(report)
}

pub fn induce(cli: &Cli, out: Option<&Path>) -> CliResult<Report> {
    let n = rank_in(cli, 3, 5)?;
    let mu = match &cli.mu {
        Some(s) => s.parse::<Mu>()?,
        None => Mu::default_for(n),
    };
    let inducer = glrep::Inducer::new(n, mu)?;
    let names = glrep::generator_names(n)?;
    let generators = names
        .par_iter()
        .map(|name| Ok((name.clone(), inducer.theta(&inducer.generator(name)?)?)))
        .collect::<outfn_core::Result<Vec<_>>>()?;
    let rep = inducer.assemble(generators);

    let mut report = Report::new("induce", json!({ "n": n, "mu": mu.parts() }));
    let cosets = (1usize << n) - 1;
    let block = mu.dim(n - 1);
    report.check(
        "dimension",
        rep.m() == cosets * block,
        json!({ "m": rep.m(), "cosets": cosets, "dim_u": block }),
    );
    report.check("transversal", rep.cosets().len() == cosets, json!({ "cosets": rep.cosets().iter().map(|c| c.bits()).collect::<Vec<_>>() }));
    let relators = rep.check_relators()?;
    let failing: Vec<_> = relators.iter().filter(|c| !c.holds).map(|c| c.relator.clone()).collect();
    report.check("relators map to identity", failing.is_empty(), json!({ "relators": relators.len(), "failures": failing }));
    let cert = glrep::check_not_factoring(&rep)?;
    report.check(
        "non-factoring certificate",
        cert.found(),
        json!({ "witness": cert.witness, "candidates_tried": cert.tried.len() }),
    );
    report.push("faithfulness of U", Status::Skip, json!("not certified; only non-factoring is checked"));
    if let Some(path) = out {
        let text = serde_json::to_string(&rep).map_err(|e| usage(format!("cannot serialise representation: {e}")))?;
        std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}
