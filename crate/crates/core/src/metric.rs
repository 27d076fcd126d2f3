//! Distance matrices, shortest-path metrics and the closeness relation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::Rational;

/// Square rational matrix. Metric axioms are checked by [`validate_metric`],
/// not at construction, so semimetrics (e.g. cut distances) fit as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn zeros(n: usize) -> Self {
        DistanceMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Builds `d(x, y) = f(x, y)` for every ordered pair.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(f(x, y));
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: VertexId, y: VertexId) -> &Rational {
        &self.data[x * self.n + y]
    }

    pub fn set(&mut self, x: VertexId, y: VertexId, value: Rational) {
        self.data[x * self.n + y] = value;
    }

    pub fn row(&self, x: VertexId) -> &[Rational] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    /// Restriction to the listed points, in the given order.
    pub fn restrict(&self, points: &[VertexId]) -> DistanceMatrix {
        DistanceMatrix::from_fn(points.len(), |i, j| self.get(points[i], points[j]).clone())
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &DistanceMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }
}

/// First failed metric axiom, in checking order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricViolation {
    NonzeroDiagonal { x: VertexId },
    Asymmetric { x: VertexId, y: VertexId },
    NotPositive { x: VertexId, y: VertexId },
    Triangle { x: VertexId, y: VertexId, z: VertexId },
}

/// Checks zero diagonal, symmetry, off-diagonal positivity and the triangle
/// inequality `d(x, z) <= d(x, y) + d(y, z)`. Reports the first violation
/// in lexicographic order.
pub fn validate_metric(d: &DistanceMatrix) -> std::result::Result<(), MetricViolation> {
    let n = d.n();
    for x in 0..n {
        if !d.get(x, x).is_zero() {
            return Err(MetricViolation::NonzeroDiagonal { x });
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if d.get(x, y) != d.get(y, x) {
                return Err(MetricViolation::Asymmetric { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && !d.get(x, y).is_positive() {
                return Err(MetricViolation::NotPositive { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if d.get(x, z) > &(d.get(x, y) + d.get(y, z)) {
                    return Err(MetricViolation::Triangle { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// Shortest-path metric of `g`, by Dijkstra from every source.
pub fn all_pairs_shortest_paths(g: &WeightedGraph) -> DistanceMatrix {
    let n = g.n();
    let mut d = DistanceMatrix::zeros(n);
    for source in 0..n {
        let row = dijkstra(g, source);
        for (y, value) in row.into_iter().enumerate() {
            d.set(source, y, value);
        }
    }
    d
}

fn dijkstra(g: &WeightedGraph, source: VertexId) -> Vec<Rational> {
    let n = g.n();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((dx, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for (y, w) in g.neighbors(x) {
            let candidate = &dx + w;
            if dist[y].as_ref().is_none_or(|cur| &candidate < cur) {
                dist[y] = Some(candidate.clone());
                heap.push(Reverse((candidate, y)));
            }
        }
    }
    // The graph is connected by construction.
    dist.into_iter().map(|v| v.expect("connected graph")).collect()
}

/// The lexicographically smallest shortest path from `x` to `y`, as a vertex
/// sequence starting at `x` and ending at `y`.
pub fn geodesic(g: &WeightedGraph, d: &DistanceMatrix, x: VertexId, y: VertexId) -> Vec<VertexId> {
    let mut path = vec![x];
    let mut cur = x;
    while cur != y {
        let next = g
            .neighbors(cur)
            .find(|&(z, w)| &(w + d.get(z, y)) == d.get(cur, y))
            .map(|(z, _)| z)
            .expect("a neighbor on some shortest path exists");
        path.push(next);
        cur = next;
    }
    path
}

/// `x` and `y` are close when adjacent and `w(x, y) = d(x, y)`.
pub fn is_close(g: &WeightedGraph, d: &DistanceMatrix, x: VertexId, y: VertexId) -> bool {
    x != y && g.weight(x, y).is_some_and(|w| w == d.get(x, y))
}

/// All close pairs `(x, y)` with `x < y`, in edge order.
pub fn close_pairs(g: &WeightedGraph, d: &DistanceMatrix) -> Vec<(VertexId, VertexId)> {
    g.edges()
        .iter()
        .filter(|e| &e.weight == d.get(e.u, e.v))
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect()
}
