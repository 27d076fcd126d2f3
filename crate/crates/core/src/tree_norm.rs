//! Closed forms for the Kantorovich–Bernstein norm on a rooted tree.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::graph::VertexId;
use crate::lipschitz::{extreme_lipschitz, LipschitzFunction, SignAssignment};
use crate::measure::{cumulative, CumulativeVector, Measure, ZeroMassVector};
use crate::rational::{Rational, Sign};
use crate::tree::RootedTree;

/// Coefficients `a(x, x⁺)` with `ξ = Σ_{x ≠ root} a(x, x⁺)(δ_x − δ_{x⁺})`.
/// Stored per child vertex; the root entry is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRepresentation(Vec<Rational>);

impl EdgeRepresentation {
    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    /// `a(x, x⁺)`.
    pub fn get(&self, x: VertexId) -> &Rational {
        &self.0[x]
    }

    /// Sums the dipoles back into a vector on `X`.
    pub fn reconstruct(&self, t: &RootedTree) -> Measure {
        let mut out = vec![Rational::zero(); t.n()];
        for x in t.non_root() {
            let p = t.parent(x).expect("non-root");
            out[x] += &self.0[x];
            out[p] -= &self.0[x];
        }
        Measure::new(out)
    }

    /// `Σ |a(x, x⁺)| d(x, x⁺)`.
    pub fn weighted_l1(&self, t: &RootedTree) -> Rational {
        t.non_root()
            .map(|x| self.0[x].abs() * t.parent_weight(x))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNorm {
    pub value: Rational,
    pub cumulative: CumulativeVector,
    pub representation: EdgeRepresentation,
}

/// `‖ξ‖_T = Σ_{x ≠ root} d(x, x⁺) |Ξ(x)|`, together with the edge
/// representation `a(x, x⁺) = Ξ(x)`.
pub fn tree_norm(t: &RootedTree, xi: &ZeroMassVector) -> Result<TreeNorm> {
    let cum = cumulative(t, xi)?;
    let value = t
        .non_root()
        .map(|x| cum.get(x).abs() * t.parent_weight(x))
        .sum();
    let mut coefficients = vec![Rational::zero(); t.n()];
    for x in t.non_root() {
        coefficients[x] = cum.get(x).clone();
    }
    Ok(TreeNorm {
        value,
        cumulative: cum,
        representation: EdgeRepresentation(coefficients),
    })
}

/// The signs `σ(Ξ(x))` on non-root vertices, `sign0` where `Ξ(x) = 0`.
pub fn cumulative_signs(t: &RootedTree, cum: &CumulativeVector, sign0: Sign) -> SignAssignment {
    SignAssignment::from_fn(t, |x| Sign::of(cum.get(x), sign0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedExpansion {
    /// `w(y) = Σ_{x ⪯ y, x ≠ root} d(x, x⁺) σ(Ξ(x))`.
    pub weights: Vec<Rational>,
    /// `Σ_y ξ(y) w(y)`.
    pub value: Rational,
}

/// The norm regrouped by vertex: each `y` is weighted by the signed length
/// of its path to the root. Equals [`tree_norm`] for any `sign0`.
pub fn signed_expansion(t: &RootedTree, xi: &ZeroMassVector, sign0: Sign) -> Result<SignedExpansion> {
    let cum = cumulative(t, xi)?;
    let weights: Vec<Rational> = (0..t.n())
        .map(|y| {
            t.path_to_root(y)
                .filter(|&x| x != t.root())
                .map(|x| Sign::of(cum.get(x), sign0).apply(t.parent_weight(x)))
                .sum()
        })
        .collect();
    let value = xi.pair(&weights);
    Ok(SignedExpansion { weights, value })
}

/// `ū = u_ε` with `ε(x) = σ(Ξ(x))`: a maximiser of `⟨ξ, u⟩` over the unit
/// Lipschitz ball, pointed at the root.
pub fn aligned_dual(t: &RootedTree, xi: &ZeroMassVector, sign0: Sign) -> Result<LipschitzFunction> {
    let cum = cumulative(t, xi)?;
    Ok(extreme_lipschitz(t, &cumulative_signs(t, &cum, sign0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gradient {
    /// The norm is differentiable at `ξ` with gradient `ū`.
    Differentiable(LipschitzFunction),
    /// `V⁰ = {x : Ξ(x) = 0}`, which always contains the root.
    NotDifferentiable { vanishing: Vec<VertexId> },
}

/// Differentiability of `‖·‖_T` at `ξ`: it holds exactly when no non-root
/// cumulative sum vanishes.
pub fn norm_gradient(t: &RootedTree, xi: &ZeroMassVector) -> Result<Gradient> {
    let cum = cumulative(t, xi)?;
    let vanishing: Vec<VertexId> = (0..t.n()).filter(|&x| cum.get(x).is_zero()).collect();
    if vanishing.iter().any(|&x| x != t.root()) {
        return Ok(Gradient::NotDifferentiable { vanishing });
    }
    Ok(Gradient::Differentiable(extreme_lipschitz(
        t,
        &cumulative_signs(t, &cum, Sign::Plus),
    )))
}
