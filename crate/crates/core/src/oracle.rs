//! Ground-truth solvers: the primal transportation problem in exact
//! arithmetic, the transport form of the Kantorovich–Bernstein norm,
//! brute-force dual enumeration on trees and coupling verification.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::lipschitz::{extreme_lipschitz, SignAssignment};
use crate::measure::{Coupling, Measure, ProbabilityFunction, ZeroMassVector};
use crate::metric::DistanceMatrix;
use crate::rational::{Rational, Sign};
use crate::tree::RootedTree;

/// Largest tree accepted by [`dual_tree_enumeration`].
pub const DUAL_ENUMERATION_CAPACITY: usize = 16;

/// One shipment `mass` from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shipment {
    pub from: VertexId,
    pub to: VertexId,
    pub mass: Rational,
}

/// Optimal value and an optimal vertex of the transportation polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportSolution {
    pub value: Rational,
    pub shipments: Vec<Shipment>,
}

/// Solves `min Σ d(x, y) f(x, y)` over nonnegative `f` with row sums
/// `supply` and column sums `demand`. Zero-mass rows and columns are
/// dropped first; an empty problem costs 0.
pub fn transport(d: &DistanceMatrix, supply: &Measure, demand: &Measure) -> Result<TransportSolution> {
    let n = d.n();
    for m in [supply, demand] {
        if m.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.len(),
            });
        }
        if let Some(x) = m.values().iter().position(|v| v.is_negative()) {
            return Err(Error::Invalid(format!("negative transport mass at vertex {x}")));
        }
    }
    if supply.total() != demand.total() {
        return Err(Error::Invalid(format!(
            "supply {} and demand {} differ",
            supply.total(),
            demand.total()
        )));
    }
    let sources: Vec<VertexId> = (0..n).filter(|&x| supply.get(x).is_positive()).collect();
    let sinks: Vec<VertexId> = (0..n).filter(|&y| demand.get(y).is_positive()).collect();
    if sources.is_empty() {
        return Ok(TransportSolution {
            value: Rational::zero(),
            shipments: Vec::new(),
        });
    }
    let cost: Vec<Vec<Rational>> = sources
        .iter()
        .map(|&x| sinks.iter().map(|&y| d.get(x, y).clone()).collect())
        .collect();
    let supplies: Vec<Rational> = sources.iter().map(|&x| supply.get(x).clone()).collect();
    let demands: Vec<Rational> = sinks.iter().map(|&y| demand.get(y).clone()).collect();

    let mut flow = successive_shortest_paths(&cost, &supplies, &demands);
    cancel_support_cycles(&cost, &mut flow);

    let mut shipments = Vec::new();
    let mut value = Rational::zero();
    for (i, row) in flow.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if f.is_positive() {
                value += &cost[i][j] * f;
                shipments.push(Shipment {
                    from: sources[i],
                    to: sinks[j],
                    mass: f.clone(),
                });
            }
        }
    }
    Ok(TransportSolution { value, shipments })
}

/// The Kantorovich distance `d(μ, ν)` with an optimal coupling. Common
/// mass `min(μ, ν)` stays on the diagonal; the rest is transported.
pub fn primal_lp_distance(
    d: &DistanceMatrix,
    mu: &ProbabilityFunction,
    nu: &ProbabilityFunction,
) -> Result<(Rational, Coupling)> {
    let xi = crate::measure::zero_mass_from_pair(mu, nu)?;
    let solution = transport(d, &xi.positive_part(), &xi.negative_part())?;
    let diagonal = (0..mu.len()).map(|x| {
        let common = std::cmp::min(mu.get(x), nu.get(x)).clone();
        ((x, x), common)
    });
    let moved = solution
        .shipments
        .iter()
        .map(|s| ((s.from, s.to), s.mass.clone()));
    let coupling = Coupling::new(
        mu.measure().clone(),
        nu.measure().clone(),
        diagonal.chain(moved),
    )?;
    Ok((solution.value, coupling))
}

/// `‖ξ‖_KB`: the cost of transporting `ξ⁺` onto `ξ⁻`.
pub fn kb_norm(d: &DistanceMatrix, xi: &ZeroMassVector) -> Result<Rational> {
    Ok(kb_transport(d, xi)?.value)
}

/// Like [`kb_norm`], also returning the optimal shipments.
pub fn kb_transport(d: &DistanceMatrix, xi: &ZeroMassVector) -> Result<TransportSolution> {
    transport(d, &xi.positive_part(), &xi.negative_part())
}

/// Brute-force `max_ε ⟨ξ, u_ε⟩` over all `2^{n−1}` sign assignments on the
/// non-root vertices. Ties go to the lexicographically smallest `ε` in
/// ascending vertex order, with `+1 < −1`.
pub fn dual_tree_enumeration(t: &RootedTree, xi: &ZeroMassVector) -> Result<(Rational, SignAssignment)> {
    let n = t.n();
    if n > DUAL_ENUMERATION_CAPACITY {
        return Err(Error::Capacity {
            what: "dual enumeration tree size",
            limit: DUAL_ENUMERATION_CAPACITY,
            got: n,
        });
    }
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xi.len(),
        });
    }
    let free: Vec<VertexId> = (0..n).filter(|&x| x != t.root()).collect();
    let m = free.len();
    let mut best: Option<(Rational, SignAssignment)> = None;
    for mask in 0u32..(1u32 << m) {
        let mut signs = vec![None; n];
        for (k, &x) in free.iter().enumerate() {
            let minus = mask >> (m - 1 - k) & 1 == 1;
            signs[x] = Some(if minus { Sign::Minus } else { Sign::Plus });
        }
        let eps = SignAssignment::new(t, signs)?;
        let u = extreme_lipschitz(t, &eps);
        let value = xi.pair(u.values());
        if best.as_ref().is_none_or(|(b, _)| &value > b) {
            best = Some((value, eps));
        }
    }
    Ok(best.expect("at least one sign assignment"))
}

/// Outcome of [`verify_coupling`].
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingCheck {
    pub feasible: bool,
    pub cost: Rational,
    /// First vertex whose row sum differs from `μ`.
    pub row_mismatch: Option<VertexId>,
    /// First vertex whose column sum differs from `ν`.
    pub column_mismatch: Option<VertexId>,
}

/// Checks both margin identities exactly and prices the coupling.
pub fn verify_coupling(gamma: &Coupling, d: &DistanceMatrix) -> CouplingCheck {
    let rows = gamma.row_sums();
    let cols = gamma.column_sums();
    let row_mismatch = (0..gamma.n()).find(|&x| &rows[x] != gamma.mu().get(x));
    let column_mismatch = (0..gamma.n()).find(|&y| &cols[y] != gamma.nu().get(y));
    CouplingCheck {
        feasible: row_mismatch.is_none() && column_mismatch.is_none(),
        cost: gamma.cost(d),
        row_mismatch,
        column_mismatch,
    }
}

// Min-cost flow on the bipartite network
//   s -> source i (cap supply_i) -> sink j (uncapacitated, cost c_ij) -> t (cap demand_j)
// by successive shortest paths with Johnson potentials.
fn successive_shortest_paths(
    cost: &[Vec<Rational>],
    supply: &[Rational],
    demand: &[Rational],
) -> Vec<Vec<Rational>> {
    let a = supply.len();
    let b = demand.len();
    let mut flow = vec![vec![Rational::zero(); b]; a];
    let mut left: Vec<Rational> = supply.to_vec();
    let mut need: Vec<Rational> = demand.to_vec();
    // Node layout: 0 = s, 1..=a sources, a+1..=a+b sinks.
    let nodes = 1 + a + b;
    let mut potential = vec![Rational::zero(); nodes];

    while left.iter().any(Signed::is_positive) {
        let (dist, prev) = dijkstra(cost, &flow, &left, &potential);
        // Reachable sink with remaining demand and minimal reduced distance.
        let target = (0..b)
            .filter(|&j| need[j].is_positive())
            .filter_map(|j| dist[1 + a + j].as_ref().map(|dj| (dj.clone(), j)))
            .min()
            .map(|(_, j)| j)
            .expect("complete bipartite network always has an augmenting path");

        let max_finite = dist.iter().flatten().max().cloned().unwrap_or_else(Rational::zero);
        for (v, dv) in dist.iter().enumerate() {
            potential[v] += dv.as_ref().unwrap_or(&max_finite);
        }

        // Walk back from the sink to s collecting the path.
        let mut path = Vec::new();
        let mut v = 1 + a + target;
        while v != 0 {
            let p = prev[v].expect("reached vertices have predecessors");
            path.push((p, v));
            v = p;
        }
        path.reverse();
        let first_source = path[0].1 - 1;
        let mut bottleneck = std::cmp::min(&left[first_source], &need[target]).clone();
        for &(p, v) in &path[1..] {
            // Backward arcs (sink -> source) are limited by current flow.
            if p > a {
                let f = &flow[v - 1][p - 1 - a];
                if f < &bottleneck {
                    bottleneck = f.clone();
                }
            }
        }
        left[first_source] -= &bottleneck;
        need[target] -= &bottleneck;
        for &(p, v) in &path[1..] {
            if p > a {
                flow[v - 1][p - 1 - a] -= &bottleneck;
            } else {
                flow[p - 1][v - 1 - a] += &bottleneck;
            }
        }
    }
    flow
}

// Dense Dijkstra over reduced costs from s. Returns distances and
// predecessors (None = unreachable).
#[allow(clippy::type_complexity)]
fn dijkstra(
    cost: &[Vec<Rational>],
    flow: &[Vec<Rational>],
    left: &[Rational],
    potential: &[Rational],
) -> (Vec<Option<Rational>>, Vec<Option<usize>>) {
    let a = left.len();
    let b = cost.first().map_or(0, Vec::len);
    let nodes = 1 + a + b;
    let mut dist: Vec<Option<Rational>> = vec![None; nodes];
    let mut prev = vec![None; nodes];
    let mut done = vec![false; nodes];
    dist[0] = Some(Rational::zero());
    loop {
        let Some(u) = (0..nodes)
            .filter(|&v| !done[v] && dist[v].is_some())
            .min_by(|&x, &y| dist[x].cmp(&dist[y]))
        else {
            break;
        };
        done[u] = true;
        let du = dist[u].clone().expect("selected");
        let mut relax = |v: usize, c: Rational| {
            let reduced = c + &potential[u] - &potential[v];
            let candidate = &du + reduced;
            if dist[v].as_ref().is_none_or(|cur| &candidate < cur) {
                dist[v] = Some(candidate);
                prev[v] = Some(u);
            }
        };
        if u == 0 {
            for i in 0..a {
                if left[i].is_positive() {
                    relax(1 + i, Rational::zero());
                }
            }
        } else if u <= a {
            let i = u - 1;
            for j in 0..b {
                relax(1 + a + j, cost[i][j].clone());
            }
        } else {
            let j = u - 1 - a;
            for i in 0..a {
                if flow[i][j].is_positive() {
                    relax(1 + i, -cost[i][j].clone());
                }
            }
        }
    }
    (dist, prev)
}

// Repeatedly finds a cycle in the bipartite support and shifts mass around
// it in the non-increasing-cost direction until one edge empties, leaving a
// forest-supported optimal vertex.
fn cancel_support_cycles(cost: &[Vec<Rational>], flow: &mut [Vec<Rational>]) {
    while let Some(cycle) = support_cycle(flow) {
        // cycle alternates source->sink (even index) and sink->source edges;
        // the k-th cell is (i, j).
        let mut delta = Rational::zero();
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 0 {
                delta += &cost[i][j];
            } else {
                delta -= &cost[i][j];
            }
        }
        // Increase even cells, decrease odd cells when that does not raise cost.
        let decrease_odd = !delta.is_positive();
        let shrinking = |k: usize| (k % 2 == 1) == decrease_odd;
        let theta = cycle
            .iter()
            .enumerate()
            .filter(|&(k, _)| shrinking(k))
            .map(|(_, &(i, j))| flow[i][j].clone())
            .min()
            .expect("cycle has cells");
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if shrinking(k) {
                flow[i][j] -= &theta;
            } else {
                flow[i][j] += &theta;
            }
        }
    }
}

// A cycle of support cells (i0,j0),(i1,j0),(i1,j1),... listed so that
// consecutive cells share a row or a column alternately.
fn support_cycle(flow: &[Vec<Rational>]) -> Option<Vec<(usize, usize)>> {
    let a = flow.len();
    let b = flow.first().map_or(0, Vec::len);
    // Graph nodes: rows 0..a, columns a..a+b.
    let nodes = a + b;
    let mut adjacency = vec![Vec::new(); nodes];
    for (i, row) in flow.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if f.is_positive() {
                adjacency[i].push(a + j);
                adjacency[a + j].push(i);
            }
        }
    }
    let mut parent = vec![usize::MAX; nodes];
    let mut visited = vec![false; nodes];
    for start in 0..nodes {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        parent[start] = start;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == adjacency[v].len() {
                stack.pop();
                continue;
            }
            let w = adjacency[v][*next];
            *next += 1;
            if w == parent[v] {
                continue;
            }
            if visited[w] {
                // Back edge v-w closes the cycle w ... v.
                let mut nodes_on_cycle = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    nodes_on_cycle.push(cur);
                }
                let len = nodes_on_cycle.len();
                let cells = (0..len)
                    .map(|k| {
                        let (p, q) = (nodes_on_cycle[k], nodes_on_cycle[(k + 1) % len]);
                        if p < a {
                            (p, q - a)
                        } else {
                            (q, p - a)
                        }
                    })
                    .collect::<Vec<_>>();
                return Some(cells);
            }
            visited[w] = true;
            parent[w] = v;
            stack.push((w, 0));
        }
    }
    None
}

/// Is the bipartite support `{(x, y) : γ(x, y) > 0}` (rows and columns as
/// separate vertex copies) acyclic?
pub fn support_is_forest(gamma: &Coupling) -> bool {
    let n = gamma.n();
    let mut dsu = crate::spanning::DisjointSets::new(2 * n);
    gamma.entries().all(|(x, y, _)| dsu.union(x, n + y))
}
