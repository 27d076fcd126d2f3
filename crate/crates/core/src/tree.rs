//! Rooted trees: parent map `x⁺`, children `ch(x)` and the induced order `⪯`.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    // d(x, x⁺); zero at the root
    parent_weight: Vec<Rational>,
    children: Vec<Vec<VertexId>>,
    // breadth-first from the root; parents precede children
    order: Vec<VertexId>,
    depth: Vec<usize>,
}

/// Roots the tree `t` at `root`. Fails with the edges of a cycle if `t` is
/// not acyclic.
pub fn root_tree(t: &WeightedGraph, root: VertexId) -> Result<RootedTree> {
    let edges: Vec<(VertexId, VertexId, Rational)> = t
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.weight.clone()))
        .collect();
    RootedTree::from_edges(t.n(), &edges, root)
}

impl RootedTree {
    /// Roots the tree on vertices `0..n` with the given weighted edges.
    pub fn from_edges(
        n: usize,
        edges: &[(VertexId, VertexId, Rational)],
        root: VertexId,
    ) -> Result<Self> {
        if root >= n {
            return Err(Error::VertexOutOfRange { index: root, n });
        }
        let mut adjacency: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
        let mut dsu = crate::spanning::DisjointSets::new(n);
        for (i, (u, v, _)) in edges.iter().enumerate() {
            for &x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
            }
            if !dsu.union(*u, *v) {
                return Err(Error::NotATree(cycle_through(&adjacency, *u, *v)));
            }
            adjacency[*u].push((*v, i));
            adjacency[*v].push((*u, i));
        }
        for list in &mut adjacency {
            list.sort();
        }

        let mut parent = vec![None; n];
        let mut parent_weight = vec![Rational::zero(); n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, e) in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    parent_weight[y] = edges[e].2.clone();
                    depth[y] = depth[x] + 1;
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::Disconnected(x.to_string(), root.to_string()));
        }
        Ok(RootedTree {
            root,
            parent,
            parent_weight,
            children,
            order,
            depth,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// `x⁺`, or `None` at the root.
    pub fn parent(&self, x: VertexId) -> Option<VertexId> {
        self.parent[x]
    }

    /// `d(x, x⁺)`; zero at the root.
    pub fn parent_weight(&self, x: VertexId) -> &Rational {
        &self.parent_weight[x]
    }

    /// `ch(x)`, ascending.
    pub fn children(&self, x: VertexId) -> &[VertexId] {
        &self.children[x]
    }

    /// Vertices in breadth-first order from the root.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn depth(&self, x: VertexId) -> usize {
        self.depth[x]
    }

    /// Non-root vertices, i.e. one per edge `(x, x⁺)`.
    pub fn non_root(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.order[1..].iter().copied()
    }

    /// Edges as `(x, x⁺, d(x, x⁺))` for every non-root `x`, ascending in `x`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, Rational)> {
        (0..self.n())
            .filter_map(|x| self.parent[x].map(|p| (x, p, self.parent_weight[x].clone())))
            .collect()
    }

    /// `x ⪯ y`: `x` lies on the path from the root to `y`.
    pub fn precedes(&self, x: VertexId, y: VertexId) -> bool {
        let mut cur = y;
        while self.depth[cur] > self.depth[x] {
            cur = self.parent[cur].expect("non-root has a parent");
        }
        cur == x
    }

    /// `y` followed by its ancestors up to and including the root.
    pub fn path_to_root(&self, y: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::successors(Some(y), move |&x| self.parent[x])
    }

    /// `d_T(x, y)` along the unique path.
    pub fn distance(&self, x: VertexId, y: VertexId) -> Rational {
        let (mut a, mut b) = (x, y);
        let mut total = Rational::zero();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                total += &self.parent_weight[a];
                a = self.parent[a].expect("non-root");
            } else {
                total += &self.parent_weight[b];
                b = self.parent[b].expect("non-root");
            }
        }
        total
    }

    /// The subtree `{y : y ⪰ x}`, in breadth-first order.
    pub fn subtree(&self, x: VertexId) -> Vec<VertexId> {
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    /// Same tree, rooted elsewhere.
    pub fn reroot(&self, root: VertexId) -> Result<RootedTree> {
        RootedTree::from_edges(self.n(), &self.edges(), root)
    }
}

// Edges of the forest path u ~> v, plus the closing edge (u, v).
fn cycle_through(
    adjacency: &[Vec<(VertexId, usize)>],
    u: VertexId,
    v: VertexId,
) -> Vec<(VertexId, VertexId)> {
    let n = adjacency.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([u]);
    prev[u] = u;
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &(y, _) in &adjacency[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![(u, v)];
    let mut cur = v;
    while cur != u {
        let p = prev[cur];
        cycle.push((p, cur));
        cur = p;
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    /// Fig. 1 style tree: 1→2, 1→3, 2→4, 2→5, 2→6, 3→7, 4→8.
    fn eight() -> WeightedGraph {
        WeightedGraph::unweighted(
            8,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7)],
        )
        .unwrap()
    }

    #[test]
    fn parents_and_children() {
        let t = root_tree(&eight(), 0).unwrap();
        assert_eq!(t.parent(7), Some(3));
        assert_eq!(t.parent(3), Some(1));
        assert_eq!(t.children(1), &[3, 4, 5]);
        assert_eq!(t.parent(0), None);
        assert!(t.precedes(1, 7));
        assert!(t.precedes(0, 6));
        assert!(!t.precedes(2, 7));
        assert!(t.precedes(4, 4));
        assert_eq!(t.subtree(1), vec![1, 3, 4, 5, 7]);
        assert_eq!(t.distance(7, 6), int(5));
        assert_eq!(t.path_to_root(7).collect::<Vec<_>>(), vec![7, 3, 1, 0]);
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::new(vec!["a".into()], vec![]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        assert_eq!(t.children(0), &[] as &[usize]);
        assert_eq!(t.parent(0), None);
        assert_eq!(t.non_root().count(), 0);
    }

    #[test]
    fn path_rooted_in_the_middle() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        let t = root_tree(&g, 1).unwrap();
        assert_eq!(t.children(1), &[0, 2]);
    }

    #[test]
    fn rejects_cycles_with_edge_list() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        match root_tree(&g, 0) {
            Err(Error::NotATree(cycle)) => {
                assert_eq!(cycle.len(), 3);
                let mut vs: Vec<usize> = cycle.iter().flat_map(|&(a, b)| [a, b]).collect();
                vs.sort();
                vs.dedup();
                assert_eq!(vs, vec![1, 2, 3]);
            }
            other => panic!("expected cycle error, got {other:?}"),
        }
    }
}
