//! Spanning-tree enumeration and forest completion.

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};

pub const DEFAULT_TREE_LIMIT: usize = 1_000_000;

/// Union-find with union by size and rollback (no path compression).
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    pub(crate) fn rollback(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

/// A spanning tree, as ascending indices into the parent graph's edge list.
pub type SpanningTree = Vec<usize>;

/// Calls `visit` on every spanning tree of `g` exactly once, in a fixed
/// order determined by the edge order. Fails once more than `limit` trees
/// exist.
pub fn visit_spanning_trees(
    g: &WeightedGraph,
    limit: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<usize> {
    let mut search = Search {
        g,
        limit,
        count: 0,
        dsu: DisjointSets::new(g.n()),
        chosen: Vec::with_capacity(g.n().saturating_sub(1)),
    };
    search.run(0, &mut visit)?;
    Ok(search.count)
}

/// Collects every spanning tree of `g`; see [`visit_spanning_trees`].
pub fn enumerate_spanning_trees(g: &WeightedGraph, limit: usize) -> Result<Vec<SpanningTree>> {
    let mut out = Vec::new();
    visit_spanning_trees(g, limit, |t| out.push(t.to_vec()))?;
    Ok(out)
}

struct Search<'a> {
    g: &'a WeightedGraph,
    limit: usize,
    count: usize,
    dsu: DisjointSets,
    chosen: Vec<usize>,
}

impl Search<'_> {
    // Branch on edge i: contract it (keep) or delete it.
    fn run(&mut self, i: usize, visit: &mut impl FnMut(&[usize])) -> Result<()> {
        let n = self.g.n();
        if self.chosen.len() + 1 == n {
            if self.count == self.limit {
                return Err(Error::TooManySpanningTrees { reached: self.count });
            }
            self.count += 1;
            visit(&self.chosen);
            return Ok(());
        }
        let edges = self.g.edges();
        if i == edges.len() || self.chosen.len() + (edges.len() - i) + 1 < n {
            return Ok(());
        }
        let e = &edges[i];
        if self.dsu.union(e.u, e.v) {
            self.chosen.push(i);
            let r = self.run(i + 1, visit);
            self.chosen.pop();
            self.dsu.rollback();
            r?;
        } else {
            self.dsu.rollback();
        }
        if self.spans_without(i) {
            self.run(i + 1, visit)?;
        }
        Ok(())
    }

    // Do the chosen edges plus edges after i still connect every vertex?
    fn spans_without(&self, i: usize) -> bool {
        let mut dsu = self.dsu.clone();
        let mut components = (0..self.g.n()).filter(|&x| dsu.find(x) == x).count();
        for e in &self.g.edges()[i + 1..] {
            if dsu.union(e.u, e.v) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        components == 1
    }
}

/// Kruskal-style completion: keeps every edge of `forest`, then adds graph
/// edges in index order whenever they join two components.
pub fn extend_forest_to_spanning_tree(g: &WeightedGraph, forest: &[usize]) -> Result<SpanningTree> {
    let mut dsu = DisjointSets::new(g.n());
    let mut tree = Vec::with_capacity(g.n().saturating_sub(1));
    for (k, &e) in forest.iter().enumerate() {
        let edge = g.edges().get(e).ok_or(Error::UnknownEdge(e))?;
        if !dsu.union(edge.u, edge.v) {
            return Err(Error::CycleInForest(forest_cycle(g, &forest[..k], e)));
        }
        tree.push(e);
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if dsu.union(edge.u, edge.v) {
            tree.push(e);
        }
    }
    tree.sort_unstable();
    Ok(tree)
}

// Edge indices of the cycle formed by adding `closing` to `forest`.
fn forest_cycle(g: &WeightedGraph, forest: &[usize], closing: usize) -> Vec<usize> {
    let n = g.n();
    let mut adjacency: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for &e in forest {
        let edge = g.edge(e);
        adjacency[edge.u].push((edge.v, e));
        adjacency[edge.v].push((edge.u, e));
    }
    let target = g.edge(closing).v;
    let start = g.edge(closing).u;
    let mut via = vec![None; n];
    let mut stack = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for &(y, e) in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut cycle = vec![closing];
    let mut cur = target;
    while let Some((p, e)) = via[cur] {
        cycle.push(e);
        cur = p;
    }
    cycle.sort_unstable();
    cycle
}
