//! Kantorovich–Bernstein norms on general graphs: the spanning-tree
//! envelope, the cycle formula and decomposition at cut vertices.

use num_traits::{Signed, Zero};

use crate::articulation::articulation_split;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::measure::{cumulative, Measure, ZeroMassVector};
use crate::rational::Rational;
use crate::spanning::{visit_spanning_trees, SpanningTree};
use crate::tree::RootedTree;

/// Every spanning tree of a graph, rooted once so that repeated norm
/// evaluations only pay for the cumulative sums.
#[derive(Debug, Clone)]
pub struct EnvelopeSolver {
    n: usize,
    trees: Vec<(SpanningTree, RootedTree)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub value: Rational,
    /// A minimising spanning tree (first in enumeration order).
    pub tree: SpanningTree,
}

impl EnvelopeSolver {
    pub fn new(g: &WeightedGraph, limit: usize) -> Result<Self> {
        let mut trees = Vec::new();
        let mut failure = None;
        visit_spanning_trees(g, limit, |edges| {
            if failure.is_some() {
                return;
            }
            let weighted: Vec<_> = edges
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    (edge.u, edge.v, edge.weight.clone())
                })
                .collect();
            match RootedTree::from_edges(g.n(), &weighted, 0) {
                Ok(t) => trees.push((edges.to_vec(), t)),
                Err(e) => failure = Some(e),
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(EnvelopeSolver { n: g.n(), trees })
    }

    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    /// `min_T ‖ξ‖_T` over all spanning trees.
    pub fn norm(&self, xi: &ZeroMassVector) -> Result<Envelope> {
        if xi.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: xi.len(),
            });
        }
        let mut best: Option<Envelope> = None;
        for (edges, t) in &self.trees {
            let cum = cumulative(t, xi)?;
            let value: Rational = t
                .non_root()
                .map(|x| cum.get(x).abs() * t.parent_weight(x))
                .sum();
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(Envelope {
                    value,
                    tree: edges.clone(),
                });
            }
        }
        Ok(best.expect("a connected graph has a spanning tree"))
    }
}

/// `min_T ‖ξ‖_T` with a minimising tree; see [`EnvelopeSolver`].
pub fn envelope_norm(g: &WeightedGraph, xi: &ZeroMassVector, limit: usize) -> Result<Envelope> {
    EnvelopeSolver::new(g, limit)?.norm(xi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleNorm {
    pub value: Rational,
    /// `i*` (0-based): the minimum is attained at the prefix sum `P_{i*}`.
    pub argmin: usize,
    /// `t* = ξ_1 + … + ξ_{i*+1}`.
    pub t: Rational,
}

/// `Φ(t) = Σ_i |t − P_i| d_i` with `P_i = ξ_1 + … + ξ_i` (1-based), where
/// `d_i` is the weight of the edge from vertex `i` to vertex `i+1 mod n`.
pub fn cycle_phi(weights: &[Rational], xi: &[Rational], t: &Rational) -> Rational {
    prefix_sums(xi)
        .iter()
        .zip(weights)
        .map(|(p, d)| (t - p).abs() * d)
        .sum()
}

fn prefix_sums(xi: &[Rational]) -> Vec<Rational> {
    xi.iter()
        .scan(Rational::zero(), |acc, v| {
            *acc += v;
            Some(acc.clone())
        })
        .collect()
}

/// `‖ξ‖` on the cycle with consecutive edge weights `weights`: the minimum
/// of the convex piecewise-linear `Φ`, attained at some prefix sum. Ties go
/// to the smallest index.
pub fn cycle_norm(weights: &[Rational], xi: &ZeroMassVector) -> Result<CycleNorm> {
    let n = weights.len();
    if n < 3 {
        return Err(Error::Invalid(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xi.len(),
        });
    }
    let prefix = prefix_sums(xi.values());
    let mut best: Option<CycleNorm> = None;
    for (i, p) in prefix.iter().enumerate() {
        let value = cycle_phi(weights, xi.values(), p);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CycleNorm {
                value,
                argmin: i,
                t: p.clone(),
            });
        }
    }
    Ok(best.expect("n >= 3"))
}

/// Cycle norm for a graph that is a single cycle, with `ξ` indexed by the
/// graph's vertices.
pub fn cycle_graph_norm(g: &WeightedGraph, xi: &ZeroMassVector) -> Result<CycleNorm> {
    let (order, weights) = g
        .cycle_order()
        .ok_or_else(|| Error::Invalid("graph is not a cycle".into()))?;
    if xi.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: xi.len(),
        });
    }
    let along = ZeroMassVector::new(Measure::new(order.iter().map(|&x| xi.get(x).clone()).collect()))?;
    cycle_norm(&weights, &along)
}

/// Restriction of `ξ` to the piece `vertices` (which contains the cut
/// vertex `x0`), with `ξ^i(x0) = −Σ_{x ∈ piece, x ≠ x0} ξ(x)`.
pub fn restrict_at_cut(xi: &ZeroMassVector, vertices: &[VertexId], x0: VertexId) -> ZeroMassVector {
    let rest: Rational = vertices
        .iter()
        .filter(|&&x| x != x0)
        .map(|&x| xi.get(x))
        .sum();
    let values = vertices
        .iter()
        .map(|&x| if x == x0 { -rest.clone() } else { xi.get(x).clone() })
        .collect();
    ZeroMassVector::new(Measure::new(values)).expect("restriction has zero mass")
}

/// `‖ξ‖_G = Σ_i ‖ξ^i‖_{G_i}`, splitting recursively at the lowest-index cut
/// vertex and using the envelope on biconnected pieces.
pub fn decomposed_norm(g: &WeightedGraph, xi: &ZeroMassVector, limit: usize) -> Result<Rational> {
    if xi.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: xi.len(),
        });
    }
    let Some(split) = articulation_split(g).into_iter().next() else {
        return Ok(envelope_norm(g, xi, limit)?.value);
    };
    let mut total = Rational::zero();
    for (vertices, sub) in split.components.iter().zip(split.subgraphs(g)) {
        let piece = restrict_at_cut(xi, vertices, split.cut_vertex);
        total += decomposed_norm(&sub, &piece, limit)?;
    }
    Ok(total)
}
