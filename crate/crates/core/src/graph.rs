//! Finite simple undirected graphs with strictly positive rational weights.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense vertex index in `0..n`. Labels are kept by the owning graph.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A connected weighted graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    // vertex -> [(neighbor, edge index)], sorted by neighbor
    adjacency: Vec<Vec<(VertexId, usize)>>,
}

impl WeightedGraph {
    /// Builds a graph from labelled edges; vertices are numbered in order of
    /// first appearance.
    pub fn from_labelled_edges<S: AsRef<str>>(edges: &[(S, S, Rational)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut intern = |s: &str| -> VertexId {
            if let Some(&i) = index.get(s) {
                return i;
            }
            labels.push(s.to_string());
            index.insert(s.to_string(), labels.len() - 1);
            labels.len() - 1
        };
        let indexed: Vec<(VertexId, VertexId, Rational)> = edges
            .iter()
            .map(|(a, b, w)| (intern(a.as_ref()), intern(b.as_ref()), w.clone()))
            .collect();
        Self::new(labels, indexed)
    }

    /// Builds a graph on explicitly labelled vertices `0..labels.len()`.
    pub fn new(labels: Vec<String>, edges: Vec<(VertexId, VertexId, Rational)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex label {l:?}")));
            }
        }
        let mut seen: BTreeMap<(VertexId, VertexId), ()> = BTreeMap::new();
        let mut adjacency = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight(labels[u].clone(), labels[v].clone(), w));
            }
            if seen.insert((u.min(v), u.max(v)), ()).is_some() {
                return Err(Error::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
            let e = out.len();
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
            out.push(Edge { u, v, weight: w });
        }
        for list in &mut adjacency {
            list.sort();
        }
        let g = WeightedGraph {
            labels,
            index,
            edges: out,
            adjacency,
        };
        if let Some(unreached) = g.first_unreachable() {
            return Err(Error::Disconnected(
                g.labels[unreached].clone(),
                g.labels[0].clone(),
            ));
        }
        Ok(g)
    }

    /// Unit-weight graph with vertices labelled `"1".."n"`.
    pub fn unweighted(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let one = Rational::from_integer(1.into());
        Self::new(labels, edges.iter().map(|&(u, v)| (u, v, one.clone())).collect())
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: VertexId) -> &str {
        &self.labels[x]
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn neighbors(&self, x: VertexId) -> impl Iterator<Item = (VertexId, &Rational)> + '_ {
        self.adjacency[x]
            .iter()
            .map(move |&(y, e)| (y, &self.edges[e].weight))
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.adjacency[x].len()
    }

    pub fn edge_between(&self, x: VertexId, y: VertexId) -> Option<usize> {
        self.adjacency[x]
            .binary_search_by_key(&y, |&(z, _)| z)
            .ok()
            .map(|i| self.adjacency[x][i].1)
    }

    pub fn weight(&self, x: VertexId, y: VertexId) -> Option<&Rational> {
        self.edge_between(x, y).map(|e| &self.edges[e].weight)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n()
    }

    /// True when the graph is a single cycle through every vertex.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.edges.len() == self.n() && (0..self.n()).all(|x| self.degree(x) == 2)
    }

    /// Subgraph on the listed edges, keeping every vertex and label. Fails
    /// if the result is disconnected.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Result<WeightedGraph> {
        let mut list = Vec::with_capacity(edges.len());
        for &e in edges {
            let edge = self.edges.get(e).ok_or(Error::UnknownEdge(e))?;
            list.push((edge.u, edge.v, edge.weight.clone()));
        }
        WeightedGraph::new(self.labels.clone(), list)
    }

    /// Induced subgraph on `vertices` (in the given order), keeping labels.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<WeightedGraph> {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &x) in vertices.iter().enumerate() {
            local[x] = i;
        }
        let labels = vertices.iter().map(|&x| self.labels[x].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| local[e.u] != usize::MAX && local[e.v] != usize::MAX)
            .map(|e| (local[e.u], local[e.v], e.weight.clone()))
            .collect();
        WeightedGraph::new(labels, edges)
    }

    /// Vertex order `1 → 2 → … → n → 1` and the weights `d_i = w(i, i+1)`
    /// along it, starting from vertex 0 and stepping to its lower-index
    /// neighbor first.
    pub fn cycle_order(&self) -> Option<(Vec<VertexId>, Vec<Rational>)> {
        if !self.is_cycle() {
            return None;
        }
        let n = self.n();
        let mut order = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        while order.len() < n {
            let next = self.adjacency[cur]
                .iter()
                .map(|&(y, _)| y)
                .find(|&y| y != prev && y != 0)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        let weights = (0..n)
            .map(|i| self.weight(order[i], order[(i + 1) % n]).cloned())
            .collect::<Option<Vec<_>>>()?;
        Some((order, weights))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn labels_follow_first_appearance() {
        let g = WeightedGraph::from_labelled_edges(&[
            ("b", "a", int(1)),
            ("a", "c", ratio(5, 2)),
        ])
        .unwrap();
        assert_eq!(g.labels(), &["b", "a", "c"]);
        assert_eq!(g.vertex("c").unwrap(), 2);
        assert_eq!(g.weight(1, 2), Some(&ratio(5, 2)));
        assert_eq!(g.weight(0, 2), None);
    }

    #[test]
    fn rejects_invalid_graphs() {
        let e = WeightedGraph::from_labelled_edges(&[("a", "a", int(1))]).unwrap_err();
        assert!(matches!(e, Error::SelfLoop(_)));
        let e = WeightedGraph::from_labelled_edges(&[("a", "b", int(1)), ("b", "a", int(2))])
            .unwrap_err();
        assert!(matches!(e, Error::DuplicateEdge(..)));
        let e = WeightedGraph::from_labelled_edges(&[("a", "b", int(0))]).unwrap_err();
        assert!(matches!(e, Error::NonPositiveWeight(..)));
        let e = WeightedGraph::from_labelled_edges(&[("a", "b", int(1)), ("c", "d", int(1))])
            .unwrap_err();
        assert!(matches!(e, Error::Disconnected(..)));
        assert!(matches!(
            WeightedGraph::new(vec![], vec![]).unwrap_err(),
            Error::EmptyGraph
        ));
    }

    #[test]
    fn single_vertex_graph() {
        let g = WeightedGraph::new(vec!["x".into()], vec![]).unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.is_tree());
    }

    #[test]
    fn cycle_detection_and_order() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (2, 3), (1, 2), (3, 0)]).unwrap();
        let (order, w) = g.cycle_order().unwrap();
        assert_eq!(order, vec![0, 1, 2, 3]);
        assert_eq!(w.len(), 4);
        let path = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.cycle_order().is_none());
    }
}
