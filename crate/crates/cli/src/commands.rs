use std::collections::BTreeMap;
use std::time::Duration;

use anyhow::anyhow;
use noncomm_core::arith::{gcd, prime_power};
use noncomm_core::classify::{
    classify, distinct_centralizer_count, is_ac_group, rival_scan, verify_ac_witness, verify_theorem_gl,
    verify_theorem_sl, ac_transfer_check, ClassifyError,
};
use noncomm_core::constructions::{build_str, catalog_for_order, linear_family};
use noncomm_core::matgroups::{field_of_order, maximal_abelian_partition, pgl2_partition, psl2_partition};
use noncomm_core::ncgraph::{clique_number, fingerprint, graphs_isomorphic_within};
use noncomm_core::{
    build_graph, make_field, Assertion, Assertions, CentralizerProfile, ConstructionError, Group, LinearFamily,
    Mat2, MatrixError, NcGraph, NcGraphError, Verdict,
};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Cli, CliError, Command, FieldArgs, Format, GraphCommand, GroupArgs, GroupCommand, VerifyCommand};

/// Largest field the `field` subcommand lists.
const FIELD_LIST_LIMIT: u64 = 81;

type Outcome = Result<(Assertions, Value), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn run_err(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Run(e.into())
}

fn graph_err(e: NcGraphError) -> CliError {
    match e {
        NcGraphError::Abelian(_) | NcGraphError::CliqueBoundExceeded { .. } => usage(e.to_string()),
        other => run_err(other),
    }
}

fn classify_err(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::UnsupportedQ { .. }
        | ClassifyError::Construction(_)
        | ClassifyError::Matrix(MatrixError::NotPrimePower(_) | MatrixError::QOutOfRange { .. }) => usage(e.to_string()),
        ClassifyError::Graph(g) => graph_err(g),
        other => run_err(other),
    }
}

/// Any failure to build a user-named group is a usage error.
fn build_group(spec: &str) -> Result<Group, CliError> {
    build_str(spec).map_err(|e: ConstructionError| usage(format!("cannot build {spec:?}: {e}")))
}

fn graph_of(g: &Group) -> Result<NcGraph, CliError> {
    build_graph(g).map_err(graph_err)
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let export = matches!(cli.command, Command::Graph(GraphCommand::Export { .. }));
    if cli.format == Format::Dimacs && !export {
        return Err(usage("--format dimacs applies to `graph export` only"));
    }
    let config = serde_json::to_value(cli).map_err(run_err)?;
    let (assertions, data) = match &cli.command {
        Command::Field(args) => field(args)?,
        Command::Group(GroupCommand::Build { group, elements }) => group_build(group, *elements)?,
        Command::Group(GroupCommand::Partition { group }) => group_partition(group)?,
        Command::Graph(GraphCommand::Export { group }) => {
            let graph = graph_of(&build_group(&group.spec())?)?;
            if cli.format == Format::Dimacs {
                emit(cli, &graph.to_dimacs())?;
                return Ok(0);
            }
            (Assertions::default(), serde_json::to_value(graph.to_edge_list()).map_err(run_err)?)
        }
        Command::Graph(GraphCommand::Clique { group, budget }) => graph_clique(group, budget.budget)?,
        Command::Graph(GraphCommand::Compare { a, b, iso_bound }) => graph_compare(a, b, *iso_bound)?,
        Command::Graph(GraphCommand::Profile { group }) => graph_profile(group)?,
        Command::Graph(GraphCommand::Fingerprint { group }) => {
            let g = build_group(&group.spec())?;
            let fp = fingerprint(&graph_of(&g)?);
            (Assertions::default(), json!({ "group": g.label(), "fingerprint": fp }))
        }
        Command::Classify { group, budget } => classify_cmd(group, budget.budget)?,
        Command::Verify(VerifyCommand::Sl { q, budget }) => {
            verify(verify_theorem_sl(*q, Duration::from_secs(budget.budget)).map_err(classify_err)?)
        }
        Command::Verify(VerifyCommand::Gl { q, budget }) => {
            verify(verify_theorem_gl(*q, Duration::from_secs(budget.budget)).map_err(classify_err)?)
        }
        Command::Rivals { order, target } => rivals(*order, target)?,
    };
    let report = Report::new(config, assertions, data);
    let text = match cli.format {
        Format::Text => report.to_text(),
        _ => report.to_json(),
    };
    emit(cli, &text)?;
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| run_err(anyhow!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Polynomial in `x`, highest degree first, in the style of field elements.
fn poly_string(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(deg, &c)| {
            let coef = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
            match deg {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{deg}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn field(args: &FieldArgs) -> Outcome {
    let (p, n) = match (args.q, args.p, args.n) {
        (Some(q), _, _) => prime_power(q).ok_or_else(|| usage(format!("q = {q} is not a prime power")))?,
        (None, Some(p), Some(n)) => (p, n),
        _ => return Err(usage("give --q or both --p and --n")),
    };
    let f = make_field(p, n).map_err(|e| usage(e.to_string()))?;
    if f.q() > FIELD_LIST_LIMIT {
        return Err(usage(format!("field listing is capped at q <= {FIELD_LIST_LIMIT}")));
    }
    let mut a = Assertions::default();
    let prim = f.primitive_element();
    a.push(Assertion::equal("primitive element has order q-1", f.q() - 1, f.multiplicative_order(&prim).map_err(run_err)?));
    let inverses_agree = f
        .elements()
        .skip(1)
        .all(|x| matches!((f.inv(&x), f.inv_by_pow(&x)), (Ok(u), Ok(v)) if u == v));
    a.push(Assertion::holds("inverse by division equals a^(q-2)", inverses_agree));
    let data = json!({
        "p": f.p(),
        "n": f.n(),
        "q": f.q(),
        "modulus": f.modulus(),
        "modulus_poly": poly_string(f.modulus()),
        "primitive_element": prim.to_string(),
        "elements": f.elements().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    Ok((a, data))
}

/// Renders elements as matrices for linear groups, as raw keys otherwise.
fn renderer(g: &Group) -> Result<impl Fn(usize) -> String + '_, CliError> {
    let field = match g.descriptor().and_then(linear_family) {
        Some((_, q)) => Some(field_of_order(q).map_err(run_err)?),
        None => None,
    };
    Ok(move |x: usize| match &field {
        Some(f) => Mat2::from_key(f, g.key(x)).to_string(),
        None => format!("{:?}", g.key(x)),
    })
}

fn group_build(args: &GroupArgs, list: bool) -> Outcome {
    let spec = args.spec();
    let g = build_group(&spec)?;
    let render = renderer(&g)?;
    let mut a = Assertions::default();
    if let Some((family, q)) = linear_family(&spec) {
        a.push(Assertion::equal("order", family.order(q), g.order() as u64));
        let z = match family {
            LinearFamily::Gl => q - 1,
            LinearFamily::Sl => gcd(2, q - 1),
            LinearFamily::Pgl | LinearFamily::Psl => 1,
        };
        a.push(Assertion::equal("center order", z, g.center().order() as u64));
    }
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for &o in g.element_orders() {
        *orders.entry(o).or_insert(0) += 1;
    }
    let mut data = json!({
        "group": g.label(),
        "descriptor": g.descriptor(),
        "order": g.order(),
        "center_order": g.center().order(),
        "derived_order": g.derived_subgroup().order(),
        "abelian": g.is_abelian(),
        "solvable": g.is_solvable(),
        "nilpotent": g.is_nilpotent(),
        "is_ac": is_ac_group(&g),
        "generators": g.generators().iter().map(|&x| render(x)).collect::<Vec<_>>(),
        "element_orders": orders,
    });
    if list {
        data["elements"] = (0..g.order()).map(&render).collect::<Vec<_>>().into();
    }
    Ok((a, data))
}

fn group_partition(args: &GroupArgs) -> Outcome {
    let spec = args.spec();
    let result = match (args.psl2, args.pgl2) {
        (Some(q), _) => psl2_partition(q),
        (_, Some(q)) => pgl2_partition(q),
        _ => maximal_abelian_partition(&build_group(&spec)?),
    };
    let mut a = Assertions::default();
    let report = match result {
        Ok(r) => r,
        Err(MatrixError::NotAc { x, a: u, b: v }) => {
            a.push(Assertion::holds("group is an AC-group", false));
            return Ok((a, json!({ "group": spec, "ac_witness": { "x": x, "a": u, "b": v } })));
        }
        Err(e @ (MatrixError::NotPrimePower(_) | MatrixError::QOutOfRange { .. })) => return Err(usage(e.to_string())),
        Err(e) => return Err(run_err(e)),
    };
    a.push(Assertion::holds("components meet in Z(G) and cover G", report.covers));
    if let Some(q) = report.q.filter(|&q| q >= 4) {
        let q = q as usize;
        a.push(Assertion::equal("Sylow components", q + 1, report.sylow_count));
        a.push(Assertion::equal("split tori", q * (q + 1) / 2, report.split_tori_count));
        a.push(Assertion::equal("non-split tori", q * (q - 1) / 2, report.nonsplit_tori_count));
        a.push(Assertion::equal("components", q * q + q + 1, report.components));
    }
    Ok((a, json!({ "partition_of": format!("{spec}/Z"), "report": report })))
}

fn graph_clique(args: &GroupArgs, budget: u64) -> Outcome {
    let spec = args.spec();
    let g = build_group(&spec)?;
    let graph = graph_of(&g)?;
    let mut a = Assertions::default();
    let c = match clique_number(&graph, Duration::from_secs(budget)) {
        Ok(c) => c,
        Err(NcGraphError::BudgetExhausted { lower_bound, witness }) => {
            a.push(Assertion::holds("search finished within budget", false));
            return Ok((a, json!({ "group": g.label(), "omega_lower_bound": lower_bound, "witness_vertices": witness })));
        }
        Err(e) => return Err(graph_err(e)),
    };
    let pairwise = c.elements.iter().enumerate().all(|(i, &x)| c.elements[i + 1..].iter().all(|&y| !g.commute(x, y)));
    a.push(Assertion::holds("witness pairwise non-commuting", pairwise));
    let ac = is_ac_group(&g);
    if ac {
        a.push(Assertion::equal("omega equals distinct centralizer count", distinct_centralizer_count(&g), c.size));
    }
    if let Some((LinearFamily::Gl | LinearFamily::Sl, q)) = linear_family(&spec).filter(|&(_, q)| q >= 4) {
        a.push(Assertion::equal("omega equals q^2+q+1", (q * q + q + 1) as usize, c.size));
    }
    let render = renderer(&g)?;
    let data = json!({
        "group": g.label(),
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "is_ac": ac,
        "omega": c.size,
        "witness": c.elements,
        "witness_rendered": c.elements.iter().map(|&x| render(x)).collect::<Vec<_>>(),
        "nodes": c.nodes,
    });
    Ok((a, data))
}

fn graph_compare(a_spec: &str, b_spec: &str, bound: usize) -> Outcome {
    let (ga, gb) = (build_group(a_spec)?, build_group(b_spec)?);
    let (a, b) = (graph_of(&ga)?, graph_of(&gb)?);
    let (fa, fb) = (fingerprint(&a), fingerprint(&b));
    let fingerprint_match = fa.matches(&fb);
    let mut checks = Assertions::default();
    let mut notes = Vec::new();
    let iso = match graphs_isomorphic_within(&a, &b, bound) {
        Ok(found) => Some(found),
        Err(e @ NcGraphError::IsoBoundExceeded { .. }) => {
            notes.push(e.to_string());
            None
        }
        Err(e) => return Err(graph_err(e)),
    };
    let mut transfer = None;
    if let Some(found) = &iso {
        if !fingerprint_match {
            checks.push(Assertion::holds("fingerprint mismatch rules out isomorphism", found.is_none()));
        }
        if let Some(map) = found {
            let n = a.vertex_count();
            let preserved = (0..n).all(|u| (0..n).all(|v| a.adjacent(u, v) == b.adjacent(map[u], map[v])));
            checks.push(Assertion::holds("isomorphism preserves adjacency", preserved));
            let t = ac_transfer_check(&a, &b, map).map_err(classify_err)?;
            checks.push(Assertion::holds("centralizer sets correspond", t.holds));
            transfer = Some(t);
        }
    }
    let data = json!({
        "a": ga.label(),
        "b": gb.label(),
        "fingerprint_a": fa,
        "fingerprint_b": fb,
        "fingerprint_match": fingerprint_match,
        "isomorphic": iso.as_ref().map(Option::is_some),
        "isomorphism": iso.flatten(),
        "transfer": transfer,
        "notes": notes,
    });
    Ok((checks, data))
}

fn graph_profile(args: &GroupArgs) -> Outcome {
    let g = build_group(&args.spec())?;
    let direct = CentralizerProfile::from_group(&g).map_err(graph_err)?;
    let via_graph = CentralizerProfile::from_graph(&graph_of(&g)?);
    let mut a = Assertions::default();
    a.push(Assertion::equal("element multiplicities sum to |G|-|Z|", g.order() - g.center().order(), direct.total()));
    a.push(Assertion::holds("graph-only profile agrees", via_graph == direct));
    let data = json!({
        "profile": direct,
        "w_values": direct.w_values(),
        "w_prime_values": direct.w_prime_values(),
        "distinct_centralizers": direct.distinct_total(),
    });
    Ok((a, data))
}

fn classify_cmd(args: &GroupArgs, budget: u64) -> Outcome {
    let g = build_group(&args.spec())?;
    let report = classify(&g, Duration::from_secs(budget)).map_err(classify_err)?;
    let mut a = Assertions::default();
    if report.is_ac {
        a.push(Assertion::holds("a Schmidt case matches", report.schmidt_case.is_some()));
        a.push(Assertion::holds("every match verified", report.matches.iter().all(|m| m.verified)));
        for m in &report.matches {
            if let Some(omega) = &m.omega {
                a.push(Assertion::equal(format!("{} omega", m.case.name()), omega.expected, omega.computed));
            }
        }
    } else if let Some(w) = &report.ac_witness {
        a.push(Assertion::holds("non-AC witness verified", verify_ac_witness(&g, w)));
    }
    Ok((a, serde_json::to_value(report).map_err(run_err)?))
}

fn verify(r: noncomm_core::TheoremReport) -> (Assertions, Value) {
    let data = json!({ "theorem": r.theorem, "q": r.q, "group": r.group, "details": r.data });
    (r.assertions, data)
}

fn rivals(order: usize, target: &str) -> Outcome {
    let g = build_group(target)?;
    if g.order() != order {
        return Err(usage(format!("{target} has order {}, not {order}", g.order())));
    }
    let catalog = catalog_for_order(order).map_err(|e| usage(e.to_string()))?;
    let graph = graph_of(&g)?;
    let scan = rival_scan(&graph, &catalog).map_err(classify_err)?;
    let mut same = Vec::new();
    for c in &catalog {
        if c.is_isomorphic(&g).map_err(run_err)?.is_some() {
            same.push(c.label().to_string());
        }
    }
    let mut a = Assertions::default();
    a.push(Assertion::equal("catalog entries isomorphic to the target", 1, same.len()));
    a.push(Assertion::holds("target class among graph matches", same.iter().all(|s| scan.matches.contains(s))));
    Ok((a, json!({ "scan": scan, "group_isomorphic": same })))
}
