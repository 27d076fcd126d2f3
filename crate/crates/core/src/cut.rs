//! Cut semimetrics, cut norms and their potentials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::lipschitz::LipschitzFunction;
use crate::measure::ZeroMassVector;
use crate::metric::DistanceMatrix;
use crate::rational::{Rational, Sign};
use crate::tree::RootedTree;

/// Largest ground set a [`VertexSet`] can hold.
pub const MAX_CUT_VERTICES: usize = 64;

/// A subset of `{0, …, n−1}`, `n ≤ 64`, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        check_capacity(n)?;
        let mut bits = 0u64;
        for x in vertices {
            if x >= n {
                return Err(Error::VertexOutOfRange { index: x, n });
            }
            bits |= 1 << x;
        }
        Ok(VertexSet(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: VertexId) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `X ∖ S` for a ground set of size `n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & full_mask(n))
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        (0..64).filter(move |&x| self.contains(x))
    }

    /// `|S ∩ {x, y}| = 1`.
    pub fn separates(self, x: VertexId, y: VertexId) -> bool {
        self.contains(x) != self.contains(y)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_CUT_VERTICES {
        return Err(Error::Capacity {
            what: "cut ground set",
            limit: MAX_CUT_VERTICES,
            got: n,
        });
    }
    Ok(())
}

/// Weighted cuts `(S, λ_S)` with `∅ ≠ S ⊊ X` and `λ_S > 0`. Repeated subsets
/// are merged by adding weights and entries are kept in bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    n: usize,
    entries: Vec<(VertexSet, Rational)>,
    base: Option<VertexId>,
}

impl CutFamily {
    pub fn new(n: usize, cuts: impl IntoIterator<Item = (VertexSet, Rational)>) -> Result<Self> {
        check_capacity(n)?;
        let full = full_mask(n);
        let mut merged: BTreeMap<VertexSet, Rational> = BTreeMap::new();
        for (s, lambda) in cuts {
            if s.0 & !full != 0 {
                return Err(Error::InvalidCut(format!("{s} is not a subset of 0..{n}")));
            }
            if s.is_empty() || s.0 == full {
                return Err(Error::InvalidCut(format!("{s} must be nonempty and proper")));
            }
            if !lambda.is_positive() {
                return Err(Error::InvalidCut(format!("weight {lambda} of {s} must be positive")));
            }
            *merged.entry(s).or_insert_with(Rational::zero) += lambda;
        }
        Ok(CutFamily {
            n,
            entries: merged.into_iter().collect(),
            base: None,
        })
    }

    /// As [`CutFamily::new`], marked adapted to `x0`; every cut must avoid `x0`.
    pub fn new_adapted(
        n: usize,
        cuts: impl IntoIterator<Item = (VertexSet, Rational)>,
        x0: VertexId,
    ) -> Result<Self> {
        let mut c = Self::new(n, cuts)?;
        if x0 >= n {
            return Err(Error::VertexOutOfRange { index: x0, n });
        }
        if c.entries.iter().any(|(s, _)| s.contains(x0)) {
            return Err(Error::NotAdapted(x0));
        }
        c.base = Some(x0);
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(VertexSet, Rational)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The base point the family is adapted to, if marked.
    pub fn base(&self) -> Option<VertexId> {
        self.base
    }
}

/// Singletons `{x}` with weight 1/2: realizes the discrete metric.
pub fn discrete_singletons(n: usize) -> Result<CutFamily> {
    let half = Rational::new(1.into(), 2.into());
    CutFamily::new(
        n,
        (0..n)
            .map(|x| Ok((VertexSet::from_vertices(n, [x])?, half.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Unordered pairs `{x, y}` with weight `1/(2(n−2))`: realizes the discrete
/// metric for `n ≥ 3`.
pub fn discrete_pairs(n: usize) -> Result<CutFamily> {
    if n < 3 {
        return Err(Error::Invalid("pair cuts need at least 3 vertices".into()));
    }
    let lambda = Rational::new(1.into(), (2 * (n - 2) as i64).into());
    let mut cuts = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            cuts.push((VertexSet::from_vertices(n, [x, y])?, lambda.clone()));
        }
    }
    CutFamily::new(n, cuts)
}

/// `δ_S(x, y) = 1` when `S` separates `x` and `y`.
pub fn cut_semimetric(s: VertexSet, n: usize) -> DistanceMatrix {
    DistanceMatrix::from_fn(n, |x, y| {
        if s.separates(x, y) {
            Rational::from_integer(1.into())
        } else {
            Rational::zero()
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutDistance {
    pub matrix: DistanceMatrix,
    /// Pairs `x < y` separated by no cut, where the result is only a
    /// semimetric.
    pub unseparated: Vec<(VertexId, VertexId)>,
}

/// `d_C = Σ λ_S δ_S`.
pub fn cut_distance(c: &CutFamily) -> CutDistance {
    let n = c.n();
    let mut matrix = DistanceMatrix::zeros(n);
    for x in 0..n {
        for y in x + 1..n {
            let v: Rational = c
                .entries()
                .iter()
                .filter(|(s, _)| s.separates(x, y))
                .map(|(_, l)| l)
                .sum();
            matrix.set(x, y, v.clone());
            matrix.set(y, x, v);
        }
    }
    let unseparated = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| matrix.get(x, y).is_zero())
        .collect();
    CutDistance {
        matrix,
        unseparated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutNorm {
    pub value: Rational,
    /// `λ_S |ξ(S)|`, aligned with the family's entries.
    pub contributions: Vec<Rational>,
}

/// `‖ξ‖_C = Σ λ_S |ξ(S)|`.
pub fn cut_norm(c: &CutFamily, xi: &ZeroMassVector) -> Result<CutNorm> {
    check_len(c, xi)?;
    let contributions: Vec<Rational> = c
        .entries()
        .iter()
        .map(|(s, l)| l * mass_of(*s, xi).abs())
        .collect();
    Ok(CutNorm {
        value: contributions.iter().sum(),
        contributions,
    })
}

fn mass_of(s: VertexSet, xi: &ZeroMassVector) -> Rational {
    s.iter().take_while(|&x| x < xi.len()).map(|x| xi.get(x)).sum()
}

fn check_len(c: &CutFamily, xi: &ZeroMassVector) -> Result<()> {
    if xi.len() != c.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            got: xi.len(),
        });
    }
    Ok(())
}

/// One cut per tree edge: `S = {y : y ⪰ x}` with `λ_S = d(x, x⁺)`. The
/// family is adapted to the root.
pub fn tree_cut_realization(t: &RootedTree) -> Result<CutFamily> {
    let n = t.n();
    let cuts = t
        .non_root()
        .map(|x| Ok((VertexSet::from_vertices(n, t.subtree(x))?, t.parent_weight(x).clone())))
        .collect::<Result<Vec<_>>>()?;
    CutFamily::new_adapted(n, cuts, t.root())
}

/// Replaces every cut containing `x0` by its complement. The cut distance
/// is unchanged since `δ_S = δ_{X∖S}`.
pub fn adapt_realization(c: &CutFamily, x0: VertexId) -> Result<CutFamily> {
    let n = c.n();
    let cuts: Vec<_> = c
        .entries()
        .iter()
        .map(|(s, l)| {
            let s = if s.contains(x0) { s.complement(n) } else { *s };
            (s, l.clone())
        })
        .collect();
    CutFamily::new_adapted(n, cuts, x0)
}

/// `u_ε(x) = Σ_{S ∋ x} λ_S ε(S)` for an adapted family; `eps` is aligned
/// with the family's entries.
pub fn cut_potential(c: &CutFamily, eps: &[Sign]) -> Result<LipschitzFunction> {
    let x0 = c
        .base()
        .ok_or_else(|| Error::Invalid("cut potentials need a family adapted to a base point".into()))?;
    if eps.len() != c.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            got: eps.len(),
        });
    }
    let mut values = vec![Rational::zero(); c.n()];
    for ((s, l), e) in c.entries().iter().zip(eps) {
        let v = e.apply(l);
        for x in s.iter() {
            values[x] += &v;
        }
    }
    LipschitzFunction::new(values, x0)
}

/// `⟨ξ, u_ε⟩` with `ε(S) = σ(ξ(S))`, `σ(0) = +1`. Equals [`cut_norm`].
pub fn cut_norm_via_potentials(c: &CutFamily, xi: &ZeroMassVector) -> Result<Rational> {
    check_len(c, xi)?;
    let eps: Vec<Sign> = c
        .entries()
        .iter()
        .map(|(s, _)| Sign::of(&mass_of(*s, xi), Sign::Plus))
        .collect();
    let u = cut_potential(c, &eps)?;
    Ok(xi.pair(u.values()))
}
