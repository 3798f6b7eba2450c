use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A simple cycle listed from its smallest vertex, in the direction whose
/// second vertex is smaller than the last one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclePath {
    pub vertices: Vec<usize>,
}

impl CyclePath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks distinctness and every cyclic adjacency.
    pub fn validate(&self, graph: &SimpleGraph) -> Result<()> {
        let m = self.vertices.len();
        if m < 3 {
            return Err(Error::WitnessRejected(format!("a cycle needs 3 vertices, got {m}")));
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::WitnessRejected("cycle repeats a vertex".into()));
        }
        for j in 0..m {
            let (u, v) = (self.vertices[j], self.vertices[(j + 1) % m]);
            if !graph.has_edge(u, v) {
                return Err(Error::WitnessRejected(format!("cycle step {u} – {v} is not an edge")));
            }
        }
        Ok(())
    }
}

/// First cycle of length `m` in canonical order, if any.
pub fn find_cycle(graph: &SimpleGraph, m: usize) -> Result<Option<CyclePath>> {
    Ok(cycles(graph, m, 1)?.pop())
}

/// Up to `limit` cycles of length `m`, each listed once, ordered by start
/// vertex and then lexicographically.
pub fn cycles(graph: &SimpleGraph, m: usize, limit: usize) -> Result<Vec<CyclePath>> {
    if m < 3 {
        return Err(Error::invalid(format!("cycle length {m} must be at least 3")));
    }
    let n = graph.vertex_count();
    let mut found = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(m);
    for start in 0..n {
        if found.len() >= limit {
            break;
        }
        if graph.degree(start) < 2 {
            continue;
        }
        distances_above(graph, start, m, &mut dist);
        path.clear();
        path.push(start);
        on_path[start] = true;
        let mut search = Search {
            graph,
            m,
            dist: &dist,
            on_path: &mut on_path,
            path: &mut path,
            found: &mut found,
            limit,
        };
        search.extend();
        on_path[start] = false;
    }
    Ok(found)
}

/// BFS distances from `start` inside the subgraph on vertices `≥ start`,
/// truncated at `cap`.
fn distances_above(graph: &SimpleGraph, start: usize, cap: usize, dist: &mut [usize]) {
    dist.iter_mut().for_each(|d| *d = usize::MAX);
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= cap {
            continue;
        }
        for &w in graph.neighbors(u) {
            if w > start && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

struct Search<'a> {
    graph: &'a SimpleGraph,
    m: usize,
    dist: &'a [usize],
    on_path: &'a mut [bool],
    path: &'a mut Vec<usize>,
    found: &'a mut Vec<CyclePath>,
    limit: usize,
}

impl Search<'_> {
    fn extend(&mut self) {
        let start = self.path[0];
        let last = *self.path.last().unwrap();
        let depth = self.path.len();
        if depth == self.m {
            if self.path[1] < last && self.graph.has_edge(last, start) {
                self.found.push(CyclePath {
                    vertices: self.path.clone(),
                });
            }
            return;
        }
        for &w in self.graph.neighbors(last) {
            if self.found.len() >= self.limit {
                return;
            }
            // w sits at index `depth` and must get back to start in m - depth steps
            if w <= start || self.on_path[w] || self.dist[w] > self.m - depth {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            self.extend();
            self.path.pop();
            self.on_path[w] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn finds_the_cycle_itself() {
        let g = cycle_graph(4);
        let c = find_cycle(&g, 4).unwrap().unwrap();
        assert_eq!(c.vertices, vec![0, 1, 2, 3]);
        c.validate(&g).unwrap();
        assert!(find_cycle(&g, 3).unwrap().is_none());
        assert!(find_cycle(&g, 2).is_err());
    }

    #[test]
    fn trees_have_no_cycles() {
        let tree = SimpleGraph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        for m in 3..=7 {
            assert!(find_cycle(&tree, m).unwrap().is_none());
        }
    }

    /// Counts m-cycles by trying every vertex sequence.
    fn brute_count(g: &SimpleGraph, m: usize) -> usize {
        fn rec(g: &SimpleGraph, m: usize, path: &mut Vec<usize>, count: &mut usize) {
            if path.len() == m {
                if g.has_edge(path[m - 1], path[0]) {
                    *count += 1;
                }
                return;
            }
            for v in 0..g.vertex_count() {
                if !path.contains(&v) && g.has_edge(*path.last().unwrap(), v) {
                    path.push(v);
                    rec(g, m, path, count);
                    path.pop();
                }
            }
        }
        let mut count = 0;
        for s in 0..g.vertex_count() {
            rec(g, m, &mut vec![s], &mut count);
        }
        // each cycle is seen from m starts in 2 directions
        count / (2 * m)
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let k5 = SimpleGraph::new(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        let petersen = SimpleGraph::new(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        );
        for g in [k5, petersen] {
            for m in 3..=g.vertex_count().min(8) {
                let all = cycles(&g, m, usize::MAX).unwrap();
                assert_eq!(all.len(), brute_count(&g, m), "m = {m}");
                for c in &all {
                    c.validate(&g).unwrap();
                    assert_eq!(c.vertices[0], *c.vertices.iter().min().unwrap());
                    assert!(c.vertices[1] < c.vertices[m - 1]);
                }
            }
        }
    }

    #[test]
    fn validate_rejects_broken_cycles() {
        let g = cycle_graph(5);
        assert!(CyclePath { vertices: vec![0, 1, 2, 3] }.validate(&g).is_err());
        assert!(CyclePath { vertices: vec![0, 1, 0] }.validate(&g).is_err());
    }
}
