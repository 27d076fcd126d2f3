//! Optimal couplings on trees in closed form, and barycenters.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::measure::{cumulative, zero_mass_from_pair, Coupling, CumulativeVector, ProbabilityFunction};
use crate::metric::DistanceMatrix;
use crate::rational::{neg_part, pos_part, Rational};
use crate::tree::RootedTree;

/// Which margin pays for the diagonal of the closed-form plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanSide {
    Mu,
    Nu,
}

/// The condition at one vertex: `available ≥ required`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BabaVertex {
    pub vertex: VertexId,
    pub available: Rational,
    pub required: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BabaReport {
    pub side: PlanSide,
    pub vertices: Vec<BabaVertex>,
    pub holds: bool,
    /// The uniform sufficient condition `min(margin) ≥ 2 ‖μ − ν‖₁`.
    pub sufficient: bool,
}

impl BabaReport {
    pub fn failures(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|v| !v.holds)
            .map(|v| v.vertex)
            .collect()
    }
}

/// Per-vertex check of `μ(x) ≥ [Ξ(x)]⁺ + Σ_{u ∈ ch(x)} [Ξ(u)]⁻` (μ side), or
/// `ν(x) ≥ [Ξ(x)]⁻ + Σ_{u ∈ ch(x)} [Ξ(u)]⁺` (ν side), with `Ξ(root)`
/// treated as 0.
pub fn check_baba(
    t: &RootedTree,
    mu: &ProbabilityFunction,
    nu: &ProbabilityFunction,
    side: PlanSide,
) -> Result<BabaReport> {
    let xi = zero_mass_from_pair(mu, nu)?;
    let cum = cumulative(t, &xi)?;
    let margin = match side {
        PlanSide::Mu => mu,
        PlanSide::Nu => nu,
    };
    let vertices: Vec<BabaVertex> = (0..t.n())
        .map(|x| {
            let required = required_mass(t, &cum, x, side);
            let available = margin.get(x).clone();
            BabaVertex {
                vertex: x,
                holds: available >= required,
                available,
                required,
            }
        })
        .collect();
    let bound = xi.l1() * Rational::from_integer(2.into());
    let sufficient = margin.values().iter().all(|m| m >= &bound);
    Ok(BabaReport {
        side,
        holds: vertices.iter().all(|v| v.holds),
        vertices,
        sufficient,
    })
}

fn required_mass(t: &RootedTree, cum: &CumulativeVector, x: VertexId, side: PlanSide) -> Rational {
    let (own, from_children): (fn(&Rational) -> Rational, fn(&Rational) -> Rational) = match side {
        PlanSide::Mu => (pos_part, neg_part),
        PlanSide::Nu => (neg_part, pos_part),
    };
    let up = if x == t.root() {
        Rational::zero()
    } else {
        own(cum.get(x))
    };
    up + t
        .children(x)
        .iter()
        .map(|&u| from_children(cum.get(u)))
        .sum::<Rational>()
}

/// Closed-form optimal coupling on a tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreePlan {
    pub coupling: Coupling,
    pub side: PlanSide,
    pub cost: Rational,
}

/// Ships `[Ξ(x)]⁺` from `x` to `x⁺` and `[Ξ(x)]⁻` from `x⁺` to `x`, keeping
/// the rest on the diagonal. Tries the μ-side condition, then the ν-side
/// one; if both fail, reports the failing vertices of each.
pub fn optimal_tree_coupling(
    t: &RootedTree,
    mu: &ProbabilityFunction,
    nu: &ProbabilityFunction,
) -> Result<TreePlan> {
    let mu_report = check_baba(t, mu, nu, PlanSide::Mu)?;
    let side = if mu_report.holds {
        PlanSide::Mu
    } else {
        let nu_report = check_baba(t, mu, nu, PlanSide::Nu)?;
        if !nu_report.holds {
            return Err(Error::PlanCondition {
                mu_side: mu_report.failures(),
                nu_side: nu_report.failures(),
            });
        }
        PlanSide::Nu
    };
    let xi = zero_mass_from_pair(mu, nu)?;
    let cum = cumulative(t, &xi)?;
    let mut entries = Vec::with_capacity(3 * t.n());
    let mut cost = Rational::zero();
    for x in 0..t.n() {
        // Both sides give the same diagonal; the ν-side plan is the transpose
        // of the μ-side plan for the swapped pair (ν, μ).
        let diagonal = match side {
            PlanSide::Mu => mu.get(x) - required_mass(t, &cum, x, PlanSide::Mu),
            PlanSide::Nu => nu.get(x) - required_mass(t, &cum, x, PlanSide::Nu),
        };
        entries.push(((x, x), diagonal));
        if let Some(p) = t.parent(x) {
            let up = pos_part(cum.get(x));
            let down = neg_part(cum.get(x));
            cost += (&up + &down) * t.parent_weight(x);
            entries.push(((x, p), up));
            entries.push(((p, x), down));
        }
    }
    let coupling = Coupling::new(mu.measure().clone(), nu.measure().clone(), entries)?;
    Ok(TreePlan {
        coupling,
        side,
        cost,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barycenter {
    pub vertex: VertexId,
    /// `E_μ d(·, x̄) = Σ_x μ(x) d(x, x̄)`.
    pub value: Rational,
}

/// A minimiser of `x̄ ↦ Σ_x μ(x) d(x, x̄)`; ties go to the lowest index.
pub fn barycenter(d: &DistanceMatrix, mu: &ProbabilityFunction) -> Result<Barycenter> {
    let n = d.n();
    if mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mu.len(),
        });
    }
    let mut best: Option<Barycenter> = None;
    for c in 0..n {
        let value: Rational = (0..n)
            .filter(|&x| !mu.get(x).is_zero())
            .map(|x| mu.get(x) * d.get(x, c))
            .sum();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Barycenter { vertex: c, value });
        }
    }
    best.ok_or(Error::EmptyGraph)
}

/// Does the coupling put all its mass on `{(x, y) : x = y or x ~ y}`?
pub fn supported_on_edges(t: &RootedTree, gamma: &Coupling) -> bool {
    gamma
        .entries()
        .all(|(x, y, m)| !m.is_positive() || x == y || t.parent(x) == Some(y) || t.parent(y) == Some(x))
}
