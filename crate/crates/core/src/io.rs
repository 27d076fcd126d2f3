//! Line-oriented text formats for graphs, measures, cut families, maps and
//! couplings. `#` starts a comment and blank lines are ignored. Numbers are
//! decimals or `p/q` fractions.

use std::collections::{BTreeMap, HashSet};

use crate::cut::{CutFamily, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::measure::{Coupling, Measure};
use crate::rational::{format_exact, parse_rational, Rational};

// (1-based line number, tokens) for every non-empty line.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, token: &str) -> Result<Rational> {
    parse_rational(token).map_err(|_| parse_error(line, format!("invalid number {token:?}")))
}

fn vertex(line: usize, g: &WeightedGraph, label: &str) -> Result<VertexId> {
    g.vertex(label)
        .map_err(|_| parse_error(line, format!("unknown vertex {label:?}")))
}

/// `LABEL LABEL WEIGHT` per line. Vertices are numbered by first
/// appearance.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for (line, tokens) in lines(text) {
        if tokens.len() != 3 {
            return Err(parse_error(
                line,
                format!("expected \"LABEL LABEL WEIGHT\", found {} fields", tokens.len()),
            ));
        }
        edges.push((tokens[0], tokens[1], number(line, tokens[2])?));
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    WeightedGraph::from_labelled_edges(&edges)
}

/// `LABEL MASS` per line; omitted vertices get mass 0.
pub fn parse_measure(text: &str, g: &WeightedGraph) -> Result<Measure> {
    let mut values = vec![Rational::default(); g.n()];
    let mut seen = HashSet::new();
    for (line, tokens) in lines(text) {
        if tokens.len() != 2 {
            return Err(parse_error(
                line,
                format!("expected \"LABEL MASS\", found {} fields", tokens.len()),
            ));
        }
        let x = vertex(line, g, tokens[0])?;
        if !seen.insert(x) {
            return Err(parse_error(line, format!("vertex {:?} listed twice", tokens[0])));
        }
        values[x] = number(line, tokens[1])?;
    }
    Ok(Measure::new(values))
}

/// `LAMBDA : LABEL LABEL ...` per line, listing the members of each cut.
pub fn parse_cuts(text: &str, g: &WeightedGraph) -> Result<CutFamily> {
    let mut cuts = Vec::new();
    for (line, tokens) in lines(text) {
        if tokens.len() < 3 || tokens[1] != ":" {
            return Err(parse_error(line, "expected \"LAMBDA : LABEL ...\""));
        }
        let lambda = number(line, tokens[0])?;
        let members = tokens[2..]
            .iter()
            .map(|l| vertex(line, g, l))
            .collect::<Result<Vec<_>>>()?;
        let set = VertexSet::from_vertices(g.n(), members)?;
        cuts.push((set, lambda));
    }
    CutFamily::new(g.n(), cuts)
}

/// `SOURCE_LABEL TARGET_LABEL` per line; must cover every source vertex.
pub fn parse_map(text: &str, source: &WeightedGraph, target: &WeightedGraph) -> Result<Vec<VertexId>> {
    let mut map: Vec<Option<VertexId>> = vec![None; source.n()];
    for (line, tokens) in lines(text) {
        if tokens.len() != 2 {
            return Err(parse_error(line, "expected \"SOURCE_LABEL TARGET_LABEL\""));
        }
        let x = vertex(line, source, tokens[0])?;
        let y = vertex(line, target, tokens[1])?;
        if map[x].replace(y).is_some() {
            return Err(parse_error(line, format!("vertex {:?} mapped twice", tokens[0])));
        }
    }
    map.iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| Error::Invalid(format!("map is undefined on vertex {:?}", source.label(x)))))
        .collect()
}

/// `LABEL LABEL MASS` triples, as written by [`format_coupling`].
pub fn parse_coupling(text: &str, g: &WeightedGraph, mu: Measure, nu: Measure) -> Result<Coupling> {
    let mut entries: BTreeMap<(VertexId, VertexId), Rational> = BTreeMap::new();
    for (line, tokens) in lines(text) {
        if tokens.len() != 3 {
            return Err(parse_error(line, "expected \"LABEL LABEL MASS\""));
        }
        let x = vertex(line, g, tokens[0])?;
        let y = vertex(line, g, tokens[1])?;
        *entries.entry((x, y)).or_default() += number(line, tokens[2])?;
    }
    Coupling::new(mu, nu, entries)
}

/// One `LABEL LABEL p/q` line per positive entry.
pub fn format_coupling(gamma: &Coupling, g: &WeightedGraph) -> String {
    gamma
        .entries()
        .map(|(x, y, m)| format!("{} {} {}\n", g.label(x), g.label(y), format_exact(m)))
        .collect()
}

/// One `LABEL p/q` line per vertex.
pub fn format_measure(values: &[Rational], g: &WeightedGraph) -> String {
    values
        .iter()
        .enumerate()
        .map(|(x, v)| format!("{} {}\n", g.label(x), format_exact(v)))
        .collect()
}
