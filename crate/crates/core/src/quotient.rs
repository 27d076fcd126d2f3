//! Surjections between graphs, non-expansiveness, exactness and the
//! quotient identity for norms.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::measure::{push_forward, Measure, ZeroMassVector};
use crate::metric::{all_pairs_shortest_paths, close_pairs, geodesic, DistanceMatrix};
use crate::oracle::{kb_norm, kb_transport};
use crate::rational::Rational;

/// A total surjection `q : X → Y` between the vertex sets of two graphs.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: WeightedGraph,
    target: WeightedGraph,
    map: Vec<VertexId>,
    d_source: DistanceMatrix,
    d_target: DistanceMatrix,
}

impl QuotientMap {
    pub fn new(source: WeightedGraph, target: WeightedGraph, map: Vec<VertexId>) -> Result<Self> {
        if map.len() != source.n() {
            return Err(Error::DimensionMismatch {
                expected: source.n(),
                got: map.len(),
            });
        }
        let mut hit = vec![false; target.n()];
        for &y in &map {
            if y >= target.n() {
                return Err(Error::VertexOutOfRange {
                    index: y,
                    n: target.n(),
                });
            }
            hit[y] = true;
        }
        if let Some(y) = hit.iter().position(|h| !h) {
            return Err(Error::NotSurjective(y));
        }
        let d_source = all_pairs_shortest_paths(&source);
        let d_target = all_pairs_shortest_paths(&target);
        Ok(QuotientMap {
            source,
            target,
            map,
            d_source,
            d_target,
        })
    }

    pub fn source(&self) -> &WeightedGraph {
        &self.source
    }

    pub fn target(&self) -> &WeightedGraph {
        &self.target
    }

    pub fn map(&self) -> &[VertexId] {
        &self.map
    }

    pub fn apply(&self, x: VertexId) -> VertexId {
        self.map[x]
    }

    pub fn source_metric(&self) -> &DistanceMatrix {
        &self.d_source
    }

    pub fn target_metric(&self) -> &DistanceMatrix {
        &self.d_target
    }

    pub fn fiber(&self, y: VertexId) -> Vec<VertexId> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }

    /// `q_* ξ`.
    pub fn push_forward(&self, xi: &ZeroMassVector) -> Result<ZeroMassVector> {
        push_forward(&self.map, self.target.n(), xi)
    }

    /// First pair with `d_Y(q(x), q(y)) > d_X(x, y)`, if any.
    pub fn expansive_pair(&self) -> Option<Error> {
        let n = self.source.n();
        for x in 0..n {
            for y in x + 1..n {
                let (u, v) = (self.map[x], self.map[y]);
                if self.d_target.get(u, v) > self.d_source.get(x, y) {
                    return Some(Error::Expansive { x, y, u, v });
                }
            }
        }
        None
    }

    // A fiber pair over (u, v) at distance exactly d_Y(u, v), lowest first.
    fn attaining_pair(&self, u: VertexId, v: VertexId) -> Option<(VertexId, VertexId)> {
        let target = self.d_target.get(u, v);
        let fu = self.fiber(u);
        let fv = self.fiber(v);
        fu.iter()
            .flat_map(|&x| fv.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| self.d_source.get(x, y) == target)
    }

    // Witnesses over the given target pairs, or the first pair without one.
    fn witnesses(
        &self,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> std::result::Result<BTreeMap<(VertexId, VertexId), (VertexId, VertexId)>, Error> {
        let mut out = BTreeMap::new();
        for (u, v) in pairs {
            match self.attaining_pair(u, v) {
                Some(p) => {
                    out.insert((u, v), p);
                }
                None => return Err(Error::NotExact { u, v }),
            }
        }
        Ok(out)
    }
}

/// Result of [`check_exactly_nonexpansive`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessReport {
    /// For each target pair `u < v` checked before any failure, a fiber
    /// pair `(x, y)` with `d_X(x, y) = d_Y(u, v)`.
    pub witnesses: BTreeMap<(VertexId, VertexId), (VertexId, VertexId)>,
    /// The first failure: an expanding pair or a target pair with no
    /// attaining fiber pair.
    pub failure: Option<Error>,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `q` never expands distances and that every target distance
/// `d_Y(u, v)` is attained by some fiber pair.
pub fn check_exactly_nonexpansive(q: &QuotientMap) -> ExactnessReport {
    if let Some(e) = q.expansive_pair() {
        return ExactnessReport {
            witnesses: BTreeMap::new(),
            failure: Some(e),
        };
    }
    let m = q.target.n();
    let mut witnesses = BTreeMap::new();
    for u in 0..m {
        for v in u + 1..m {
            match q.attaining_pair(u, v) {
                Some(p) => {
                    witnesses.insert((u, v), p);
                }
                None => {
                    return ExactnessReport {
                        witnesses,
                        failure: Some(Error::NotExact { u, v }),
                    }
                }
            }
        }
    }
    ExactnessReport {
        witnesses,
        failure: None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientNorm {
    /// `‖η‖` computed on the target graph.
    pub direct: Rational,
    /// `‖ξ‖` on the source graph for the lift `ξ` below.
    pub lifted: Rational,
    /// A lift with `q_* ξ = η` attaining the infimum.
    pub lift: ZeroMassVector,
}

/// `‖η‖_Y = inf {‖ξ‖_X : q_* ξ = η}` for a non-expansive `q` that is exact
/// on close pairs of `Y`. The infimum is certified by lifting an optimal
/// plan for `η` step by step along geodesics through close pairs; each
/// step uses a fiber pair at exactly the target distance. Fails unless the
/// lifted norm, evaluated independently, agrees with the direct one.
pub fn quotient_norm(q: &QuotientMap, eta: &ZeroMassVector) -> Result<QuotientNorm> {
    if eta.len() != q.target.n() {
        return Err(Error::DimensionMismatch {
            expected: q.target.n(),
            got: eta.len(),
        });
    }
    if let Some(e) = q.expansive_pair() {
        return Err(e);
    }
    let steps = q.witnesses(close_pairs(&q.target, &q.d_target))?;
    let plan = kb_transport(&q.d_target, eta)?;
    let mut lift = vec![Rational::zero(); q.source.n()];
    for s in &plan.shipments {
        let path = geodesic(&q.target, &q.d_target, s.from, s.to);
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (x, y) = if a < b {
                steps[&(a, b)]
            } else {
                let (x, y) = steps[&(b, a)];
                (y, x)
            };
            lift[x] += &s.mass;
            lift[y] -= &s.mass;
        }
    }
    let lift = ZeroMassVector::new(Measure::new(lift))?;
    debug_assert_eq!(q.push_forward(&lift)?, *eta);
    let lifted = kb_norm(&q.d_source, &lift)?;
    if lifted != plan.value {
        return Err(Error::Invalid(format!(
            "lifted norm {lifted} differs from target norm {}",
            plan.value
        )));
    }
    Ok(QuotientNorm {
        direct: plan.value,
        lifted,
        lift,
    })
}
