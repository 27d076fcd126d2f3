//! Measures on vertices, zero-mass differences, cumulative sums over rooted
//! trees and push-forwards.

use std::collections::BTreeMap;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::metric::DistanceMatrix;
use crate::rational::{format_exact, Rational};
use crate::tree::RootedTree;

/// A rational-valued measure on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure(Vec<Rational>);

impl Measure {
    pub fn new(values: Vec<Rational>) -> Self {
        Measure(values)
    }

    pub fn zeros(n: usize) -> Self {
        Measure(vec![Rational::zero(); n])
    }

    pub fn delta(n: usize, x: VertexId) -> Self {
        let mut m = Measure::zeros(n);
        m.0[x] = Rational::one();
        m
    }

    pub fn uniform(n: usize) -> Self {
        let p = Rational::new(1.into(), (n as i64).into());
        Measure(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, x: VertexId) -> &Rational {
        &self.0[x]
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `Σ |m(x)|`.
    pub fn l1(&self) -> Rational {
        self.0.iter().map(|v| v.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn positive_part(&self) -> Measure {
        Measure(self.0.iter().map(crate::rational::pos_part).collect())
    }

    pub fn negative_part(&self) -> Measure {
        Measure(self.0.iter().map(crate::rational::neg_part).collect())
    }

    pub fn scale(&self, c: &Rational) -> Measure {
        Measure(self.0.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Measure) -> Result<Measure> {
        self.check_len(other)?;
        Ok(Measure(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Measure) -> Result<Measure> {
        self.check_len(other)?;
        Ok(Measure(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `⟨m, u⟩ = Σ m(x) u(x)`.
    pub fn pair(&self, u: &[Rational]) -> Rational {
        self.0.iter().zip(u).map(|(a, b)| a * b).sum()
    }

    fn check_len(&self, other: &Measure) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<Rational>> for Measure {
    fn from(values: Vec<Rational>) -> Self {
        Measure(values)
    }
}

/// A measure with nonnegative values summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityFunction(Measure);

impl ProbabilityFunction {
    pub fn new(m: Measure) -> Result<Self> {
        if let Some(x) = m.0.iter().position(|v| v.is_negative()) {
            return Err(Error::NotProbability(format!(
                "mass {} at vertex {x} is negative",
                format_exact(&m.0[x])
            )));
        }
        let total = m.total();
        if !total.is_one() {
            return Err(Error::NotProbability(format!(
                "total mass is {}",
                format_exact(&total)
            )));
        }
        Ok(ProbabilityFunction(m))
    }

    pub fn delta(n: usize, x: VertexId) -> Self {
        ProbabilityFunction(Measure::delta(n, x))
    }

    pub fn uniform(n: usize) -> Self {
        ProbabilityFunction(Measure::uniform(n))
    }

    pub fn measure(&self) -> &Measure {
        &self.0
    }
}

impl Deref for ProbabilityFunction {
    type Target = Measure;
    fn deref(&self) -> &Measure {
        &self.0
    }
}

/// A signed measure with total mass exactly 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroMassVector(Measure);

impl ZeroMassVector {
    pub fn new(m: Measure) -> Result<Self> {
        let total = m.total();
        if !total.is_zero() {
            return Err(Error::NotZeroMass(total));
        }
        Ok(ZeroMassVector(m))
    }

    pub fn zeros(n: usize) -> Self {
        ZeroMassVector(Measure::zeros(n))
    }

    /// `δ_x − δ_y`.
    pub fn dipole(n: usize, x: VertexId, y: VertexId) -> Self {
        let mut m = Measure::zeros(n);
        m.0[x] += Rational::one();
        m.0[y] -= Rational::one();
        ZeroMassVector(m)
    }

    pub fn measure(&self) -> &Measure {
        &self.0
    }

    pub fn scale(&self, c: &Rational) -> ZeroMassVector {
        ZeroMassVector(self.0.scale(c))
    }

    pub fn add(&self, other: &ZeroMassVector) -> Result<ZeroMassVector> {
        Ok(ZeroMassVector(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &ZeroMassVector) -> Result<ZeroMassVector> {
        Ok(ZeroMassVector(self.0.sub(&other.0)?))
    }
}

impl Deref for ZeroMassVector {
    type Target = Measure;
    fn deref(&self) -> &Measure {
        &self.0
    }
}

/// `ξ = μ − ν`.
pub fn zero_mass_from_pair(mu: &ProbabilityFunction, nu: &ProbabilityFunction) -> Result<ZeroMassVector> {
    Ok(ZeroMassVector(mu.0.sub(&nu.0)?))
}

/// Probability margins whose difference is `ξ / scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilitySplit {
    pub mu: ProbabilityFunction,
    pub nu: ProbabilityFunction,
    pub scale: Rational,
}

/// Writes `ξ = scale · (μ − ν)` with `scale = max(1, Σ|ξ|/2)`. When the
/// rescaled positive part has mass below 1, both sides are padded with the
/// same multiple of the uniform distribution.
pub fn split_into_probabilities(xi: &ZeroMassVector) -> ProbabilitySplit {
    let n = xi.len();
    if xi.is_zero() {
        return ProbabilitySplit {
            mu: ProbabilityFunction::uniform(n),
            nu: ProbabilityFunction::uniform(n),
            scale: Rational::one(),
        };
    }
    let half = xi.l1() / Rational::from_integer(2.into());
    let scale = if half > Rational::one() {
        half.clone()
    } else {
        Rational::one()
    };
    let plus = xi.positive_part().scale(&scale.recip());
    let minus = xi.negative_part().scale(&scale.recip());
    let alpha = Rational::one() - half / &scale;
    let pad = Measure::uniform(n).scale(&alpha);
    let mu = plus.add(&pad).expect("same length");
    let nu = minus.add(&pad).expect("same length");
    ProbabilitySplit {
        mu: ProbabilityFunction(mu),
        nu: ProbabilityFunction(nu),
        scale,
    }
}

/// `Ξ(x) = Σ_{y ⪰ x} ξ(y)` relative to a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulativeVector(Vec<Rational>);

impl CumulativeVector {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, x: VertexId) -> &Rational {
        &self.0[x]
    }

    /// Inverts the cumulative sum: `ξ(x) = Ξ(x) − Σ_{y ∈ ch(x)} Ξ(y)`.
    pub fn to_measure(&self, t: &RootedTree) -> Measure {
        Measure(
            (0..self.0.len())
                .map(|x| {
                    let children: Rational = t.children(x).iter().map(|&y| &self.0[y]).sum();
                    &self.0[x] - children
                })
                .collect(),
        )
    }
}

fn check_tree_len(t: &RootedTree, m: &Measure) -> Result<()> {
    if t.n() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            got: m.len(),
        });
    }
    Ok(())
}

/// Bottom-up cumulative sums over `t`.
pub fn cumulative(t: &RootedTree, xi: &ZeroMassVector) -> Result<CumulativeVector> {
    check_tree_len(t, xi)?;
    let mut acc = xi.values().to_vec();
    for &x in t.order().iter().rev() {
        if let Some(p) = t.parent(x) {
            let v = acc[x].clone();
            acc[p] += v;
        }
    }
    Ok(CumulativeVector(acc))
}

/// Descendant matrix `E* = (I − E)⁻¹ = Σ_k E^k`, where `E[x][y] = 1` iff
/// `y ∈ ch(x)`. Row `x` is the indicator of `{y : y ⪰ x}`.
pub fn descendant_matrix(t: &RootedTree) -> Vec<Vec<u64>> {
    let n = t.n();
    let mut e = vec![vec![0u64; n]; n];
    for x in 0..n {
        for &y in t.children(x) {
            e[x][y] = 1;
        }
    }
    let mut star = vec![vec![0u64; n]; n];
    let mut power: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    // E is nilpotent: E^k = 0 once k exceeds the tree height.
    while power.iter().any(|row| row.iter().any(|&v| v != 0)) {
        for i in 0..n {
            for j in 0..n {
                star[i][j] += power[i][j];
            }
        }
        power = matmul(&power, &e);
    }
    star
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `Ξ = E* ξ`, through the descendant matrix.
pub fn cumulative_via_matrix(t: &RootedTree, xi: &ZeroMassVector) -> Result<CumulativeVector> {
    check_tree_len(t, xi)?;
    let star = descendant_matrix(t);
    Ok(CumulativeVector(
        star.iter()
            .map(|row| {
                row.iter()
                    .zip(xi.values())
                    .filter(|(&e, _)| e != 0)
                    .map(|(&e, v)| v * Rational::from_integer(e.into()))
                    .sum()
            })
            .collect(),
    ))
}

/// `η(u) = Σ_{q(x) = u} m(x)` for any measure.
pub fn push_forward_measure(q: &[VertexId], target_n: usize, m: &Measure) -> Result<Measure> {
    if q.len() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: q.len(),
            got: m.len(),
        });
    }
    let mut out = Measure::zeros(target_n);
    for (x, &u) in q.iter().enumerate() {
        if u >= target_n {
            return Err(Error::VertexOutOfRange {
                index: u,
                n: target_n,
            });
        }
        out.0[u] += &m.0[x];
    }
    Ok(out)
}

/// Push-forward of a zero-mass vector along `q`; total mass stays 0.
pub fn push_forward(q: &[VertexId], target_n: usize, xi: &ZeroMassVector) -> Result<ZeroMassVector> {
    Ok(ZeroMassVector(push_forward_measure(q, target_n, xi)?))
}

/// A joint measure on `X × X` with declared margins `μ` and `ν`. Only
/// positive entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    entries: BTreeMap<(VertexId, VertexId), Rational>,
    mu: Measure,
    nu: Measure,
}

impl Coupling {
    pub fn new(
        mu: Measure,
        nu: Measure,
        entries: impl IntoIterator<Item = ((VertexId, VertexId), Rational)>,
    ) -> Result<Self> {
        let n = mu.len();
        if nu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: nu.len(),
            });
        }
        let mut map = BTreeMap::new();
        for ((x, y), mass) in entries {
            if x >= n || y >= n {
                return Err(Error::VertexOutOfRange { index: x.max(y), n });
            }
            if mass.is_negative() {
                return Err(Error::Invalid(format!(
                    "negative coupling mass at ({x}, {y})"
                )));
            }
            if mass.is_zero() {
                continue;
            }
            *map.entry((x, y)).or_insert_with(Rational::zero) += mass;
        }
        Ok(Coupling {
            entries: map,
            mu,
            nu,
        })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &Measure {
        &self.mu
    }

    pub fn nu(&self) -> &Measure {
        &self.nu
    }

    pub fn get(&self, x: VertexId, y: VertexId) -> Rational {
        self.entries.get(&(x, y)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Positive entries in `(x, y)` order.
    pub fn entries(&self) -> impl Iterator<Item = (VertexId, VertexId, &Rational)> {
        self.entries.iter().map(|(&(x, y), m)| (x, y, m))
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); self.n()];
        for (&(x, _), m) in &self.entries {
            sums[x] += m;
        }
        sums
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); self.n()];
        for (&(_, y), m) in &self.entries {
            sums[y] += m;
        }
        sums
    }

    /// `Σ d(x, y) γ(x, y)`.
    pub fn cost(&self, d: &DistanceMatrix) -> Rational {
        self.entries
            .iter()
            .map(|(&(x, y), m)| d.get(x, y) * m)
            .sum()
    }
}
