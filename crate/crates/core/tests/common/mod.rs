//! Seeded generators and independent reference solvers shared by the
//! integration tests.
#![allow(dead_code)]

use kantorovich::measure::Measure;
use kantorovich::metric::DistanceMatrix;
use kantorovich::rational::{int, ratio};
use kantorovich::{ProbabilityFunction, Rational, WeightedGraph, ZeroMassVector};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `1 ≤ p, q ≤ 100`.
pub fn weight(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=100), rng.gen_range(1..=100))
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Random labelled tree: vertex `k` attaches to a uniform earlier vertex,
/// then vertex names are shuffled.
pub fn tree(rng: &mut ChaCha8Rng, n: usize) -> WeightedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges = (1..n)
        .map(|k| {
            let p = rng.gen_range(0..k);
            (perm[k], perm[p], weight(rng))
        })
        .collect();
    WeightedGraph::new(labels(n), edges).unwrap()
}

/// Random connected graph: a random tree plus extra distinct edges, up to
/// `max_edges` in total.
pub fn connected_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> WeightedGraph {
    let t = tree(rng, n);
    let mut edges: Vec<(usize, usize, Rational)> =
        t.edges().iter().map(|e| (e.u, e.v, e.weight.clone())).collect();
    let complete = n * (n - 1) / 2;
    let target = rng.gen_range(edges.len()..=max_edges.min(complete));
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| t.edge_between(x, y).is_none())
        .collect();
    missing.shuffle(rng);
    for (x, y) in missing.into_iter().take(target - edges.len()) {
        edges.push((x, y, weight(rng)));
    }
    WeightedGraph::new(labels(n), edges).unwrap()
}

pub fn cycle(weights: Vec<Rational>) -> WeightedGraph {
    let n = weights.len();
    let edges = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| (i, (i + 1) % n, w))
        .collect();
    WeightedGraph::new(labels(n), edges).unwrap()
}

pub fn unit_cycle(n: usize) -> WeightedGraph {
    cycle(vec![int(1); n])
}

pub fn unit_path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    WeightedGraph::unweighted(n, &edges).unwrap()
}

pub fn complete(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    WeightedGraph::unweighted(n, &edges).unwrap()
}

/// Small rational with numerator in `-20..=20` and denominator in `1..=12`.
pub fn small(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-20..=20), rng.gen_range(1..=12))
}

/// Random zero-mass vector: `n − 1` free entries and a balancing last one.
pub fn zero_mass(rng: &mut ChaCha8Rng, n: usize) -> ZeroMassVector {
    let mut values: Vec<Rational> = (0..n.saturating_sub(1)).map(|_| small(rng)).collect();
    let total: Rational = values.iter().sum();
    values.push(-total);
    values.shuffle(rng);
    ZeroMassVector::new(Measure::new(values)).unwrap()
}

/// Zero-mass vector supported on `support`.
pub fn zero_mass_on(rng: &mut ChaCha8Rng, n: usize, support: &[usize]) -> ZeroMassVector {
    let mut values = vec![Rational::zero(); n];
    let inner = zero_mass(rng, support.len());
    for (k, &x) in support.iter().enumerate() {
        values[x] = inner.get(k).clone();
    }
    ZeroMassVector::new(Measure::new(values)).unwrap()
}

/// Strictly positive probability function with integer weights `1..=50`.
pub fn positive_probability(rng: &mut ChaCha8Rng, n: usize) -> ProbabilityFunction {
    let raw: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(1..=50))).collect();
    let total: Rational = raw.iter().sum();
    ProbabilityFunction::new(Measure::new(raw.into_iter().map(|v| v / &total).collect())).unwrap()
}

/// Transportation optimum by brute force over basic solutions: every
/// spanning tree of the bipartite source/sink graph fixes a unique flow;
/// the cheapest nonnegative one is optimal. Only for tiny instances.
pub fn transport_by_basic_solutions(d: &DistanceMatrix, supply: &[Rational], demand: &[Rational]) -> Rational {
    let sources: Vec<usize> = (0..supply.len()).filter(|&x| supply[x].is_positive()).collect();
    let sinks: Vec<usize> = (0..demand.len()).filter(|&y| demand[y].is_positive()).collect();
    if sources.is_empty() {
        return Rational::zero();
    }
    let (a, b) = (sources.len(), sinks.len());
    let cells: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    let basis = a + b - 1;
    let mut best: Option<Rational> = None;
    let mut chosen = Vec::with_capacity(basis);
    combinations(cells.len(), basis, 0, &mut chosen, &mut |subset| {
        let picked: Vec<(usize, usize)> = subset.iter().map(|&k| cells[k]).collect();
        if let Some(flow) = tree_flow(a, b, &picked, &sources, &sinks, supply, demand) {
            let cost: Rational = picked
                .iter()
                .zip(&flow)
                .map(|(&(i, j), f)| d.get(sources[i], sinks[j]) * f)
                .sum();
            if best.as_ref().is_none_or(|c| &cost < c) {
                best = Some(cost);
            }
        }
    });
    best.expect("the transportation polytope is nonempty")
}

fn combinations(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        combinations(n, k, i + 1, chosen, f);
        chosen.pop();
    }
}

// Unique flow on a spanning tree of the bipartite graph, by peeling leaves.
// None when the cells do not form a tree or some flow is negative.
fn tree_flow(
    a: usize,
    b: usize,
    cells: &[(usize, usize)],
    sources: &[usize],
    sinks: &[usize],
    supply: &[Rational],
    demand: &[Rational],
) -> Option<Vec<Rational>> {
    let nodes = a + b;
    let mut residual: Vec<Rational> = sources
        .iter()
        .map(|&x| supply[x].clone())
        .chain(sinks.iter().map(|&y| demand[y].clone()))
        .collect();
    let mut degree = vec![0usize; nodes];
    for &(i, j) in cells {
        degree[i] += 1;
        degree[a + j] += 1;
    }
    let mut flow: Vec<Option<Rational>> = vec![None; cells.len()];
    let mut remaining = cells.len();
    while remaining > 0 {
        let leaf = (0..nodes).find(|&v| degree[v] == 1)?;
        let k = (0..cells.len()).find(|&k| {
            flow[k].is_none() && (cells[k].0 == leaf || a + cells[k].1 == leaf)
        })?;
        let (i, j) = cells[k];
        let other = if i == leaf { a + j } else { i };
        let f = residual[leaf].clone();
        if f.is_negative() {
            return None;
        }
        residual[other] -= &f;
        residual[leaf] = Rational::zero();
        degree[leaf] -= 1;
        degree[other] -= 1;
        flow[k] = Some(f);
        remaining -= 1;
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return None;
    }
    Some(flow.into_iter().map(Option::unwrap).collect())
}

/// Number of spanning trees by the matrix-tree theorem: the determinant of
/// the Laplacian with the first row and column removed.
pub fn spanning_tree_count(g: &WeightedGraph) -> u64 {
    let n = g.n();
    if n == 1 {
        return 1;
    }
    let m = n - 1;
    let mut a = vec![vec![Rational::zero(); m]; m];
    for e in g.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x > 0 {
                a[x - 1][x - 1] += int(1);
                if y > 0 {
                    a[x - 1][y - 1] -= int(1);
                }
            }
        }
    }
    let mut det = int(1);
    for c in 0..m {
        let Some(p) = (c..m).find(|&r| !a[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..m {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &a[c][c];
            for k in c..m {
                let v = &factor * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    assert!(det.is_integer() && !det.is_negative());
    u64::try_from(det.to_integer()).expect("fits")
}

/// `Σ |x|` over a slice.
pub fn l1(values: &[Rational]) -> Rational {
    values.iter().map(|v| v.abs()).sum()
}
