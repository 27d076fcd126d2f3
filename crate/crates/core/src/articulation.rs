//! Splitting a graph at its cut vertices.

use std::collections::VecDeque;

use crate::graph::{VertexId, WeightedGraph};

/// The pieces `X_1, …, X_k` (k ≥ 2) obtained by removing `cut_vertex`, each
/// with `cut_vertex` added back. Vertex lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArticulationSplit {
    pub cut_vertex: VertexId,
    pub components: Vec<Vec<VertexId>>,
}

impl ArticulationSplit {
    /// Component subgraphs `G_i`, induced on each vertex list.
    pub fn subgraphs(&self, g: &WeightedGraph) -> Vec<WeightedGraph> {
        self.components
            .iter()
            .map(|c| {
                g.induced_subgraph(c)
                    .expect("a component plus its cut vertex is connected")
            })
            .collect()
    }
}

/// One split per articulation vertex, ascending by vertex. Empty when the
/// graph is biconnected.
pub fn articulation_split(g: &WeightedGraph) -> Vec<ArticulationSplit> {
    (0..g.n()).filter_map(|x| split_at(g, x)).collect()
}

/// The split at `x`, or `None` when removing `x` leaves the graph connected.
pub fn split_at(g: &WeightedGraph, x: VertexId) -> Option<ArticulationSplit> {
    let n = g.n();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if start == x || component[start] != usize::MAX {
            continue;
        }
        component[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(y) = queue.pop_front() {
            for (z, _) in g.neighbors(y) {
                if z != x && component[z] == usize::MAX {
                    component[z] = count;
                    queue.push_back(z);
                }
            }
        }
        count += 1;
    }
    if count < 2 {
        return None;
    }
    let mut components = vec![Vec::new(); count];
    for y in 0..n {
        if y == x {
            components.iter_mut().for_each(|c| c.push(x));
        } else {
            components[component[y]].push(y);
        }
    }
    Some(ArticulationSplit {
        cut_vertex: x,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::all_pairs_shortest_paths;

    #[test]
    fn two_cycles_split_at_vertex_two() {
        let g =
            WeightedGraph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 1), (1, 4), (4, 0)]).unwrap();
        let splits = articulation_split(&g);
        assert_eq!(splits.len(), 1);
        assert_eq!(splits[0].cut_vertex, 1);
        assert_eq!(splits[0].components, vec![vec![0, 1, 4], vec![1, 2, 3]]);
        let subs = splits[0].subgraphs(&g);
        assert_eq!(subs[0].labels(), &["1", "2", "5"]);
        assert_eq!(subs[0].edges().len(), 3);
    }

    #[test]
    fn biconnected_cycle() {
        let g = WeightedGraph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(articulation_split(&g).is_empty());
    }

    #[test]
    fn path_splits_in_the_middle() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        let splits = articulation_split(&g);
        assert_eq!(
            splits,
            vec![ArticulationSplit {
                cut_vertex: 1,
                components: vec![vec![0, 1], vec![1, 2]],
            }]
        );
    }

    #[test]
    fn distances_add_across_the_cut() {
        let g = WeightedGraph::unweighted(
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)],
        )
        .unwrap();
        let d = all_pairs_shortest_paths(&g);
        for split in articulation_split(&g) {
            let x0 = split.cut_vertex;
            for (i, a) in split.components.iter().enumerate() {
                for b in &split.components[i + 1..] {
                    for &x in a {
                        for &y in b {
                            assert_eq!(d.get(x, y), &(d.get(x, x0) + d.get(x0, y)));
                        }
                    }
                }
            }
        }
    }
}
