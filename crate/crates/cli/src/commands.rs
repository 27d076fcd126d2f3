use std::path::{Path, PathBuf};

use kantorovich::articulation::articulation_split;
use kantorovich::cut::{adapt_realization, cut_distance, cut_norm, cut_norm_via_potentials};
use kantorovich::graph_norm::{cycle_graph_norm, decomposed_norm, EnvelopeSolver};
use kantorovich::io::{parse_cuts, parse_graph, parse_map, parse_measure};
use kantorovich::measure::zero_mass_from_pair;
use kantorovich::metric::{all_pairs_shortest_paths, close_pairs, validate_metric, MetricViolation};
use kantorovich::oracle::{kb_norm, primal_lp_distance, verify_coupling};
use kantorovich::plan::{barycenter, check_baba, optimal_tree_coupling, BabaReport, PlanSide};
use kantorovich::quotient::{check_exactly_nonexpansive, quotient_norm};
use kantorovich::tree::root_tree;
use kantorovich::tree_norm::{aligned_dual, tree_norm};
use kantorovich::{
    Coupling, Error, ProbabilityFunction, QuotientMap, Rational, Sign, VertexId, WeightedGraph,
    ZeroMassVector,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{approx, exact, exact_value, Report};
use crate::{Cli, Command, Method};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing required flag --{0}")]
    MissingFlag(&'static str),
    #[error("verification failed: {0}")]
    Verification(String),
    /// A core error re-rendered with vertex labels.
    #[error("{1}")]
    Labelled(Error, String),
}

/// Replaces vertex indices by labels in errors that carry them.
fn relabel(e: Error, g: &WeightedGraph) -> CliError {
    let names = |xs: &[usize]| xs.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(" ");
    let message = match &e {
        Error::PlanCondition { mu_side, nu_side } => format!(
            "closed-form tree coupling unavailable: condition fails at vertices [{}] (mu side) and [{}] (nu side)",
            names(mu_side),
            names(nu_side)
        ),
        Error::NotATree(cycle) => {
            let edges: Vec<String> = cycle
                .iter()
                .map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v)))
                .collect();
            format!("graph is not a tree: edges {} close a cycle", edges.join(", "))
        }
        Error::NotLipschitz { x, y } => format!(
            "function is not 1-Lipschitz across edge {}-{}",
            g.label(*x),
            g.label(*y)
        ),
        _ => return CliError::Core(e),
    };
    CliError::Labelled(e, message)
}

type CliResult<T> = Result<T, CliError>;

/// Runs one command. The report is returned even on some failures (a plan
/// whose condition fails still prints its condition report).
pub fn run(cli: &Cli) -> (Option<Report>, CliResult<()>) {
    let name = format!("{:?}", cli.command).to_lowercase();
    let mut report = Report::new(&name);
    let result = match cli.command {
        Command::Dist => dist(cli, &mut report),
        Command::Norm => norm(cli, &mut report),
        Command::Plan => plan(cli, &mut report),
        Command::Barycenter => barycenter_cmd(cli, &mut report),
        Command::Cutnorm => cutnorm(cli, &mut report),
        Command::Cycle => cycle(cli, &mut report),
        Command::Quotient => quotient(cli, &mut report),
        Command::Check => check(cli, &mut report),
    };
    let keep = result.is_ok()
        || matches!(
            &result,
            Err(CliError::Core(Error::PlanCondition { .. })) | Err(CliError::Labelled(Error::PlanCondition { .. }, _))
        );
    (keep.then_some(report), result)
}

fn read(path: &Option<PathBuf>, flag: &'static str) -> CliResult<String> {
    let path = path.as_ref().ok_or(CliError::MissingFlag(flag))?;
    read_path(path)
}

fn read_path(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn graph(cli: &Cli) -> CliResult<WeightedGraph> {
    Ok(parse_graph(&read(&cli.graph, "graph")?)?)
}

fn probability(path: &Option<PathBuf>, flag: &'static str, g: &WeightedGraph) -> CliResult<ProbabilityFunction> {
    let m = parse_measure(&read(path, flag)?, g)?;
    Ok(ProbabilityFunction::new(m)?)
}

fn zero_mass(cli: &Cli, g: &WeightedGraph) -> CliResult<ZeroMassVector> {
    let m = parse_measure(&read(&cli.xi, "xi")?, g)?;
    Ok(ZeroMassVector::new(m)?)
}

fn root(cli: &Cli, g: &WeightedGraph) -> CliResult<VertexId> {
    match &cli.root {
        Some(label) => Ok(g.vertex(label)?),
        None => Ok(0),
    }
}

fn sign0(cli: &Cli) -> CliResult<Sign> {
    Ok(cli.sign0.parse::<Sign>()?)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Tree => "tree",
        Method::Envelope => "envelope",
        Method::Cycle => "cycle",
        Method::Decompose => "decompose",
        Method::Oracle => "oracle",
        Method::Auto => "auto",
    }
}

fn labelled(g: &WeightedGraph, values: &[Rational]) -> Value {
    Value::Object(
        values
            .iter()
            .enumerate()
            .map(|(x, v)| (g.label(x).to_string(), json!(exact(v))))
            .collect(),
    )
}

/// Norm of `ξ` by the selected method, after resolving `auto`: tree input
/// uses the tree formula, a cycle the cycle formula, a graph with a cut
/// vertex is decomposed, otherwise the envelope is used within the tree
/// limit and the oracle beyond it.
fn norm_by_method(
    cli: &Cli,
    g: &WeightedGraph,
    xi: &ZeroMassVector,
    report: &mut Report,
) -> CliResult<(Rational, Method)> {
    let method = match cli.method {
        Method::Auto if g.is_tree() => Method::Tree,
        Method::Auto if g.is_cycle() => Method::Cycle,
        Method::Auto if !articulation_split(g).is_empty() => Method::Decompose,
        Method::Auto => match EnvelopeSolver::new(g, cli.limit) {
            Ok(_) => Method::Envelope,
            Err(Error::TooManySpanningTrees { .. }) => Method::Oracle,
            Err(e) => return Err(e.into()),
        },
        m => m,
    };
    let value = match method {
        Method::Tree => {
            let t = root_tree(g, root(cli, g)?).map_err(|e| relabel(e, g))?;
            let norm = tree_norm(&t, xi)?;
            let dual = aligned_dual(&t, xi, sign0(cli)?)?;
            report.field("dual", labelled(g, dual.values()));
            norm.value
        }
        Method::Cycle => {
            let c = cycle_graph_norm(g, xi)?;
            let (order, _) = g.cycle_order().expect("checked by cycle_graph_norm");
            report.field(
                "cycle",
                json!({ "argmin": g.label(order[c.argmin]), "t": exact(&c.t) }),
            );
            c.value
        }
        Method::Decompose => decomposed_norm(g, xi, cli.limit)?,
        Method::Envelope => {
            let env = EnvelopeSolver::new(g, cli.limit)?.norm(xi)?;
            let edges: Vec<Value> = env
                .tree
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    json!([g.label(edge.u), g.label(edge.v)])
                })
                .collect();
            report.field("spanning_tree", Value::Array(edges));
            env.value
        }
        Method::Oracle => kb_norm(&all_pairs_shortest_paths(g), xi)?,
        Method::Auto => unreachable!("resolved above"),
    };
    Ok((value, method))
}

fn coupling_json(g: &WeightedGraph, gamma: &Coupling) -> Value {
    Value::Array(
        gamma
            .entries()
            .map(|(x, y, m)| json!([g.label(x), g.label(y), exact(m)]))
            .collect(),
    )
}

fn coupling_lines(report: &mut Report, g: &WeightedGraph, gamma: &Coupling) {
    for (x, y, m) in gamma.entries() {
        report.line(format!("{} {} {}", g.label(x), g.label(y), exact(m)));
    }
}

fn verify_value(report: &mut Report, computed: &Rational, oracle: &Rational) -> CliResult<()> {
    report.field("verified", json!(computed == oracle));
    if computed != oracle {
        return Err(CliError::Verification(format!(
            "method gives {}, oracle gives {}",
            exact(computed),
            exact(oracle)
        )));
    }
    report.line("verify: oracle agrees");
    Ok(())
}

fn dist(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let mu = probability(&cli.mu, "mu", &g)?;
    let nu = probability(&cli.nu, "nu", &g)?;
    let xi = zero_mass_from_pair(&mu, &nu)?;
    let d = all_pairs_shortest_paths(&g);
    let (value, method) = norm_by_method(cli, &g, &xi, report)?;
    report.rational("value", &value);
    report.line(format!("method: {}", method_name(method)));
    report.field("method", json!(method_name(method)));
    if method == Method::Oracle || cli.verify {
        let (oracle, gamma) = primal_lp_distance(&d, &mu, &nu)?;
        if method == Method::Oracle {
            report.line("coupling:");
            coupling_lines(report, &g, &gamma);
            report.field("coupling", coupling_json(&g, &gamma));
        }
        if cli.verify {
            verify_value(report, &value, &oracle)?;
        }
    }
    Ok(())
}

fn norm(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let xi = zero_mass(cli, &g)?;
    let (value, method) = norm_by_method(cli, &g, &xi, report)?;
    report.rational("value", &value);
    report.line(format!("method: {}", method_name(method)));
    report.field("method", json!(method_name(method)));
    if cli.verify {
        let oracle = kb_norm(&all_pairs_shortest_paths(&g), &xi)?;
        verify_value(report, &value, &oracle)?;
    }
    Ok(())
}

fn baba_lines(report: &mut Report, g: &WeightedGraph, r: &BabaReport) -> Value {
    let side = match r.side {
        PlanSide::Mu => "mu",
        PlanSide::Nu => "nu",
    };
    report.line(format!(
        "condition ({side} side): {}",
        if r.holds { "holds" } else { "fails" }
    ));
    let mut vertices = Vec::new();
    for v in &r.vertices {
        report.line(format!(
            "  {}: {} >= {} {}",
            g.label(v.vertex),
            exact(&v.available),
            exact(&v.required),
            if v.holds { "ok" } else { "FAIL" }
        ));
        vertices.push(json!({
            "vertex": g.label(v.vertex),
            "available": exact(&v.available),
            "required": exact(&v.required),
            "holds": v.holds,
        }));
    }
    report.line(format!(
        "sufficient condition ({side} side): {}",
        if r.sufficient { "yes" } else { "no" }
    ));
    json!({ "side": side, "holds": r.holds, "sufficient": r.sufficient, "vertices": vertices })
}

fn plan(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let mu = probability(&cli.mu, "mu", &g)?;
    let nu = probability(&cli.nu, "nu", &g)?;
    let t = root_tree(&g, root(cli, &g)?).map_err(|e| relabel(e, &g))?;
    let mu_side = check_baba(&t, &mu, &nu, PlanSide::Mu)?;
    let nu_side = check_baba(&t, &mu, &nu, PlanSide::Nu)?;
    let outcome = optimal_tree_coupling(&t, &mu, &nu);
    if let Ok(p) = &outcome {
        report.line("coupling:");
        coupling_lines(report, &g, &p.coupling);
        report.field("coupling", coupling_json(&g, &p.coupling));
        report.rational("cost", &p.cost);
    }
    let a = baba_lines(report, &g, &mu_side);
    let b = baba_lines(report, &g, &nu_side);
    report.field("condition", json!([a, b]));
    let p = outcome.map_err(|e| relabel(e, &g))?;
    if cli.verify {
        let d = all_pairs_shortest_paths(&g);
        let check = verify_coupling(&p.coupling, &d);
        if !check.feasible {
            return Err(CliError::Verification("coupling margins do not match".into()));
        }
        let (oracle, _) = primal_lp_distance(&d, &mu, &nu)?;
        verify_value(report, &check.cost, &oracle)?;
    }
    Ok(())
}

fn barycenter_cmd(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let mu = probability(&cli.mu, "mu", &g)?;
    let b = barycenter(&all_pairs_shortest_paths(&g), &mu)?;
    report.line(format!("barycenter: {} (value {})", g.label(b.vertex), exact(&b.value)));
    report.line(format!("value decimal: {}", approx(&b.value)));
    report.field("barycenter", json!(g.label(b.vertex)));
    report.field("value", exact_value(&b.value));
    Ok(())
}

fn cutnorm(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let cuts = parse_cuts(&read(&cli.cuts, "cuts")?, &g)?;
    let xi = zero_mass(cli, &g)?;
    let norm = cut_norm(&cuts, &xi)?;
    report.rational("value", &norm.value);
    let mut per_cut = Vec::new();
    for ((s, lambda), c) in cuts.entries().iter().zip(&norm.contributions) {
        let members: Vec<&str> = s.iter().map(|x| g.label(x)).collect();
        report.line(format!("  {} : {} -> {}", exact(lambda), members.join(" "), exact(c)));
        per_cut.push(json!({ "lambda": exact(lambda), "members": members, "contribution": exact(c) }));
    }
    report.field("cuts", Value::Array(per_cut));
    let unseparated: Vec<Value> = cut_distance(&cuts)
        .unseparated
        .iter()
        .map(|&(x, y)| json!([g.label(x), g.label(y)]))
        .collect();
    if !unseparated.is_empty() {
        report.line(format!("warning: {} vertex pairs are separated by no cut", unseparated.len()));
    }
    report.field("unseparated", Value::Array(unseparated));
    if cli.verify {
        let adapted = adapt_realization(&cuts, root(cli, &g)?)?;
        let via = cut_norm_via_potentials(&adapted, &xi)?;
        report.field("verified", json!(via == norm.value));
        if via != norm.value {
            return Err(CliError::Verification(format!(
                "potential form gives {}, sum form gives {}",
                exact(&via),
                exact(&norm.value)
            )));
        }
        report.line("verify: potential form agrees");
    }
    Ok(())
}

fn cycle(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let xi = zero_mass(cli, &g)?;
    let c = cycle_graph_norm(&g, &xi)?;
    let (order, _) = g.cycle_order().expect("checked by cycle_graph_norm");
    report.rational("value", &c.value);
    report.line(format!("argmin: {}", g.label(order[c.argmin])));
    report.line(format!("t: {}", exact(&c.t)));
    report.field("argmin", json!(g.label(order[c.argmin])));
    report.field("t", json!(exact(&c.t)));
    let labels: Vec<&str> = order.iter().map(|&x| g.label(x)).collect();
    report.field("order", json!(labels));
    if cli.verify {
        let oracle = kb_norm(&all_pairs_shortest_paths(&g), &xi)?;
        verify_value(report, &c.value, &oracle)?;
    }
    Ok(())
}

fn quotient(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let source = graph(cli)?;
    let target = parse_graph(&read(&cli.target, "target")?)?;
    let map = parse_map(&read(&cli.map, "map")?, &source, &target)?;
    let q = QuotientMap::new(source, target, map)?;
    let exactness = check_exactly_nonexpansive(&q);
    let target = q.target();
    match &exactness.failure {
        None => report.line("exactly non-expansive: yes"),
        Some(e) => report.line(format!("exactly non-expansive: no ({})", describe(e, q.source(), target))),
    }
    report.field("exact", json!(exactness.holds()));
    if let Some(e) = &exactness.failure {
        report.field("failure", json!(describe(e, q.source(), target)));
    }
    if cli.xi.is_some() {
        let eta = parse_measure(&read(&cli.xi, "xi")?, target)?;
        let eta = ZeroMassVector::new(eta)?;
        let r = quotient_norm(&q, &eta)?;
        report.rational("value", &r.direct);
        report.line(format!("lifted: {}", exact(&r.lifted)));
        report.field("lifted", json!(exact(&r.lifted)));
        report.field("lift", labelled(q.source(), r.lift.values()));
        if cli.verify {
            let oracle = kb_norm(&all_pairs_shortest_paths(target), &eta)?;
            verify_value(report, &r.direct, &oracle)?;
        }
    }
    Ok(())
}

fn describe(e: &Error, source: &WeightedGraph, target: &WeightedGraph) -> String {
    match e {
        Error::NotExact { u, v } => format!(
            "no fiber pair attains d({}, {})",
            target.label(*u),
            target.label(*v)
        ),
        Error::Expansive { x, y, .. } => {
            format!("the pair {} {} is expanded", source.label(*x), source.label(*y))
        }
        other => other.to_string(),
    }
}

fn check(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = graph(cli)?;
    let d = all_pairs_shortest_paths(&g);
    report.line(format!("vertices: {}", g.n()));
    report.line(format!("edges: {}", g.edges().len()));
    report.field("vertices", json!(g.n()));
    report.field("edges", json!(g.edges().len()));
    let metric = match validate_metric(&d) {
        Ok(()) => "ok".to_string(),
        Err(MetricViolation::Triangle { x, y, z }) => format!(
            "triangle inequality fails for {} {} {}",
            g.label(x),
            g.label(y),
            g.label(z)
        ),
        Err(v) => format!("{v:?}"),
    };
    report.line(format!("metric: {metric}"));
    report.field("metric", json!(metric));
    let close = close_pairs(&g, &d);
    report.line(format!("close pairs: {} of {} edges", close.len(), g.edges().len()));
    for &(x, y) in &close {
        report.line(format!("  {} {}", g.label(x), g.label(y)));
    }
    let not_close: Vec<Value> = g
        .edges()
        .iter()
        .filter(|e| &e.weight != d.get(e.u, e.v))
        .map(|e| json!([g.label(e.u), g.label(e.v)]))
        .collect();
    report.field(
        "close_pairs",
        Value::Array(close.iter().map(|&(x, y)| json!([g.label(x), g.label(y)])).collect()),
    );
    report.field("non_close_edges", Value::Array(not_close));
    let cut_vertices: Vec<&str> = articulation_split(&g)
        .iter()
        .map(|s| g.label(s.cut_vertex))
        .collect();
    report.line(format!(
        "articulation vertices: {}",
        if cut_vertices.is_empty() {
            "none".to_string()
        } else {
            cut_vertices.join(" ")
        }
    ));
    report.field("articulation_vertices", json!(cut_vertices));
    report.line(format!("tree: {}", if g.is_tree() { "yes" } else { "no" }));
    report.line(format!("cycle: {}", if g.is_cycle() { "yes" } else { "no" }));
    report.field("tree", json!(g.is_tree()));
    report.field("cycle", json!(g.is_cycle()));
    match EnvelopeSolver::new(&g, cli.limit) {
        Ok(s) => {
            report.line(format!("spanning trees: {}", s.tree_count()));
            report.field("spanning_trees", json!(s.tree_count()));
        }
        Err(Error::TooManySpanningTrees { reached }) => {
            report.line(format!("spanning trees: more than {reached}"));
            report.field("spanning_trees", Value::Null);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}
