//! Pointed Lipschitz functions and the extreme points of the unit ball.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::metric::DistanceMatrix;
use crate::rational::{Rational, Sign};
use crate::tree::RootedTree;

/// A sign `ε(x)` on every non-root vertex of a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignAssignment(Vec<Option<Sign>>);

impl SignAssignment {
    /// `signs[root]` must be `None` and every other entry `Some`.
    pub fn new(t: &RootedTree, signs: Vec<Option<Sign>>) -> Result<Self> {
        if signs.len() != t.n() {
            return Err(Error::DimensionMismatch {
                expected: t.n(),
                got: signs.len(),
            });
        }
        for (x, s) in signs.iter().enumerate() {
            if (x == t.root()) != s.is_none() {
                return Err(Error::Invalid(format!(
                    "sign assignment must be empty exactly at the root (vertex {x})"
                )));
            }
        }
        Ok(SignAssignment(signs))
    }

    pub fn constant(t: &RootedTree, sign: Sign) -> Self {
        Self::from_fn(t, |_| sign)
    }

    pub fn from_fn(t: &RootedTree, mut f: impl FnMut(VertexId) -> Sign) -> Self {
        SignAssignment(
            (0..t.n())
                .map(|x| (x != t.root()).then(|| f(x)))
                .collect(),
        )
    }

    pub fn get(&self, x: VertexId) -> Option<Sign> {
        self.0[x]
    }

    pub fn signs(&self) -> &[Option<Sign>] {
        &self.0
    }
}

/// `u : X → ℚ` with `u(base) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzFunction {
    values: Vec<Rational>,
    base: VertexId,
}

impl LipschitzFunction {
    pub fn new(values: Vec<Rational>, base: VertexId) -> Result<Self> {
        if base >= values.len() {
            return Err(Error::VertexOutOfRange {
                index: base,
                n: values.len(),
            });
        }
        if !values[base].is_zero() {
            return Err(Error::NotPointed(base));
        }
        Ok(LipschitzFunction { values, base })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, x: VertexId) -> &Rational {
        &self.values[x]
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `max |u(x) − u(y)| / d(x, y)` over all pairs. `None` when some pair
    /// at distance zero carries different values.
    pub fn lipschitz_constant(&self, d: &DistanceMatrix) -> Option<Rational> {
        let n = self.values.len();
        let mut best = Rational::zero();
        for x in 0..n {
            for y in x + 1..n {
                let gap = (&self.values[x] - &self.values[y]).abs();
                let dist = d.get(x, y);
                if dist.is_zero() {
                    if !gap.is_zero() {
                        return None;
                    }
                    continue;
                }
                let q = gap / dist;
                if q > best {
                    best = q;
                }
            }
        }
        Some(best)
    }

    /// The same constant computed over close pairs of `g` only.
    pub fn lipschitz_constant_on_graph(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Rational {
        crate::metric::close_pairs(g, d)
            .into_iter()
            .map(|(x, y)| (&self.values[x] - &self.values[y]).abs() / d.get(x, y))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// `u_ε(x) = Σ_{y ⪯ x, y ≠ root} d(y, y⁺) ε(y)`, built top-down.
pub fn extreme_lipschitz(t: &RootedTree, eps: &SignAssignment) -> LipschitzFunction {
    let mut values = vec![Rational::zero(); t.n()];
    for x in t.non_root() {
        let p = t.parent(x).expect("non-root");
        let s = eps.get(x).expect("non-root carries a sign");
        values[x] = &values[p] + s.apply(t.parent_weight(x));
    }
    LipschitzFunction {
        values,
        base: t.root(),
    }
}

/// Is `u` an extreme point of the unit ball of pointed 1-Lipschitz
/// functions on `g`? True iff the tight close pairs (`|u(x) − u(y)| =
/// d(x, y)`) connect every vertex. Non-Lipschitz input is an error naming
/// the first offending edge.
pub fn is_extreme_lipschitz(g: &WeightedGraph, d: &DistanceMatrix, u: &LipschitzFunction) -> Result<bool> {
    let n = g.n();
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    // Lipschitz on edges implies Lipschitz along every path.
    for e in g.edges() {
        if (u.get(e.u) - u.get(e.v)).abs() > e.weight {
            return Err(Error::NotLipschitz { x: e.u, y: e.v });
        }
    }
    let mut tight = vec![Vec::new(); n];
    for (x, y) in crate::metric::close_pairs(g, d) {
        if &(u.get(x) - u.get(y)).abs() == d.get(x, y) {
            tight[x].push(y);
            tight[y].push(x);
        }
    }
    let mut seen = vec![false; n];
    seen[u.base()] = true;
    let mut queue = VecDeque::from([u.base()]);
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &y in &tight[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    Ok(count == n)
}

/// Slopes `φ(x) = (u(x) − u(x⁺)) / d(x, x⁺)`; zero at the root.
pub fn lipschitz_to_slopes(t: &RootedTree, u: &LipschitzFunction) -> Result<Vec<Rational>> {
    if u.len() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            got: u.len(),
        });
    }
    Ok((0..t.n())
        .map(|x| match t.parent(x) {
            Some(p) => (u.get(x) - u.get(p)) / t.parent_weight(x),
            None => Rational::zero(),
        })
        .collect())
}

/// Inverse of [`lipschitz_to_slopes`]: `u(x) = u(x⁺) + φ(x) d(x, x⁺)`,
/// pointed at the root. The root entry of `phi` is ignored.
pub fn slopes_to_lipschitz(t: &RootedTree, phi: &[Rational]) -> Result<LipschitzFunction> {
    if phi.len() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            got: phi.len(),
        });
    }
    let mut values = vec![Rational::zero(); t.n()];
    for x in t.non_root() {
        let p = t.parent(x).expect("non-root");
        values[x] = &values[p] + &phi[x] * t.parent_weight(x);
    }
    Ok(LipschitzFunction {
        values,
        base: t.root(),
    })
}
