use serde::{Deserialize, Serialize};

use crate::coloring::{ColorId, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Bits, SimpleGraph};

/// A monochromatic `K_{s,t}`: every pair across the sides has one color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteBipartite {
    pub side_s: Vec<usize>,
    pub side_t: Vec<usize>,
}

/// Lexicographically first s-subset (by side_s) whose common neighborhood
/// in the color class holds `t` vertices; side_t is the `t` smallest of them.
pub fn find_complete_bipartite(
    g: &EdgeColoring,
    color: ColorId,
    s: usize,
    t: usize,
) -> Result<Option<CompleteBipartite>> {
    if s == 0 || s > t {
        return Err(Error::invalid(format!("need 1 ≤ s ≤ t, got s = {s}, t = {t}")));
    }
    let class = g.color_class_graph(color);
    let n = g.n();
    if s + t > n {
        return Ok(None);
    }
    let nbhd: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            class.neighbors(v).iter().for_each(|&w| b.insert(w));
            b
        })
        .collect();
    let candidates: Vec<usize> = (0..n).filter(|&v| class.degree(v) >= t).collect();
    let mut chosen = Vec::with_capacity(s);
    Ok(bipartite_dfs(&candidates, &nbhd, s, t, 0, Bits::full(n), &mut chosen))
}

fn bipartite_dfs(
    candidates: &[usize],
    nbhd: &[Bits],
    s: usize,
    t: usize,
    from: usize,
    common: Bits,
    chosen: &mut Vec<usize>,
) -> Option<CompleteBipartite> {
    if chosen.len() == s {
        return Some(CompleteBipartite {
            side_s: chosen.clone(),
            side_t: common.iter().take(t).collect(),
        });
    }
    for i in from..candidates.len() {
        if candidates.len() - i < s - chosen.len() {
            break;
        }
        let v = candidates[i];
        let mut next = common.clone();
        next.intersect_with(&nbhd[v]);
        if next.count() < t {
            continue;
        }
        chosen.push(v);
        if let Some(found) = bipartite_dfs(candidates, nbhd, s, t, i + 1, next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// `H_t` inside one color class: `t` branch vertices and one private
/// midpoint for each pair of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub branch: Vec<usize>,
    /// `(i, j, w)`: midpoint `w` joins `branch[i]` and `branch[j]`, `i < j`.
    pub midpoints: Vec<(usize, usize, usize)>,
}

impl Subdivision {
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.branch.iter().copied().chain(self.midpoints.iter().map(|m| m.2)).collect();
        all.sort_unstable();
        all
    }

    /// The `t(t-1)` connecting edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.midpoints
            .iter()
            .flat_map(|&(i, j, w)| [(self.branch[i], w), (self.branch[j], w)])
            .collect()
    }

    /// Checks distinctness, the pair coverage, and every edge's color.
    pub fn verify(&self, g: &EdgeColoring, color: ColorId) -> Result<()> {
        let t = self.branch.len();
        let all = self.vertices();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::WitnessRejected("subdivision reuses a vertex".into()));
        }
        if let Some(&v) = all.iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        let mut pairs: Vec<(usize, usize)> = self.midpoints.iter().map(|m| (m.0, m.1)).collect();
        pairs.sort_unstable();
        let expected: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect();
        if pairs != expected {
            return Err(Error::WitnessRejected("midpoints do not cover each branch pair once".into()));
        }
        for (u, v) in self.edges() {
            if g.color(u, v) != color {
                return Err(Error::WitnessRejected(format!("edge {u} – {v} has the wrong color")));
            }
        }
        Ok(())
    }
}

/// First branch set in lexicographic order admitting distinct midpoints,
/// found by bipartite matching of branch pairs to common neighbors.
pub fn find_subdivision(g: &EdgeColoring, color: ColorId, t: usize) -> Result<Option<Subdivision>> {
    if t < 3 {
        return Err(Error::invalid(format!("t = {t} must be at least 3")));
    }
    let class = g.color_class_graph(color);
    if class.edge_count() < t * (t - 1) || g.n() < t * (t + 1) / 2 {
        return Ok(None);
    }
    let candidates: Vec<usize> = (0..g.n()).filter(|&v| class.degree(v) >= t - 1).collect();
    let mut branch = Vec::with_capacity(t);
    Ok(subdivision_dfs(&class, &candidates, t, 0, &mut branch))
}

fn common_neighbors(class: &SimpleGraph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (class.neighbors(u), class.neighbors(v));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn subdivision_dfs(
    class: &SimpleGraph,
    candidates: &[usize],
    t: usize,
    from: usize,
    branch: &mut Vec<usize>,
) -> Option<Subdivision> {
    if branch.len() == t {
        return match_midpoints(class, branch);
    }
    for i in from..candidates.len() {
        if candidates.len() - i < t - branch.len() {
            break;
        }
        let v = candidates[i];
        let feasible = branch
            .iter()
            .all(|&u| common_neighbors(class, u, v).iter().any(|w| !branch.contains(w) && *w != v));
        if !feasible {
            continue;
        }
        branch.push(v);
        if let Some(found) = subdivision_dfs(class, candidates, t, i + 1, branch) {
            return Some(found);
        }
        branch.pop();
    }
    None
}

fn match_midpoints(class: &SimpleGraph, branch: &[usize]) -> Option<Subdivision> {
    let t = branch.len();
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect();
    let options: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(i, j)| {
            common_neighbors(class, branch[i], branch[j])
                .into_iter()
                .filter(|w| !branch.contains(w))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; class.vertex_count()];
    for p in 0..pairs.len() {
        let mut visited = vec![false; class.vertex_count()];
        if !augment(p, &options, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut midpoints = vec![(0, 0, 0); pairs.len()];
    for (w, o) in owner.iter().enumerate() {
        if let Some(p) = *o {
            midpoints[p] = (pairs[p].0, pairs[p].1, w);
        }
    }
    Some(Subdivision {
        branch: branch.to_vec(),
        midpoints,
    })
}

/// Kuhn's augmenting path step.
fn augment(p: usize, options: &[Vec<usize>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &w in &options[p] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        if owner[w].is_none_or(|q| augment(q, options, owner, visited)) {
            owner[w] = Some(p);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::random_coloring;

    fn first_color(g: &EdgeColoring) -> ColorId {
        g.color(0, 1)
    }

    #[test]
    fn k23_in_monochromatic_k5() {
        let g = EdgeColoring::monochromatic(5).unwrap();
        let found = find_complete_bipartite(&g, first_color(&g), 2, 3).unwrap().unwrap();
        assert_eq!(found.side_s, vec![0, 1]);
        assert_eq!(found.side_t, vec![2, 3, 4]);
        assert!(find_complete_bipartite(&g, first_color(&g), 3, 2).is_err());
    }

    #[test]
    fn rainbow_has_no_cherries() {
        let g = EdgeColoring::rainbow(5).unwrap();
        for c in g.palette() {
            assert!(find_complete_bipartite(&g, c, 1, 2).unwrap().is_none());
        }
    }

    fn brute_kst(g: &EdgeColoring, c: ColorId, s: usize, t: usize) -> bool {
        let n = g.n();
        (0u32..1 << n).filter(|m| m.count_ones() as usize == s).any(|ms| {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == t && m & ms == 0)
                .any(|mt| {
                    (0..n).filter(|&u| ms >> u & 1 == 1).all(|u| {
                        (0..n).filter(|&v| mt >> v & 1 == 1).all(|v| g.color(u, v) == c)
                    })
                })
        })
    }

    #[test]
    fn kst_matches_double_enumeration() {
        for seed in 0..12 {
            let g = random_coloring(10, 2, seed).unwrap();
            for c in g.palette() {
                for (s, t) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
                    let found = find_complete_bipartite(&g, c, s, t).unwrap();
                    assert_eq!(found.is_some(), brute_kst(&g, c, s, t), "seed {seed} s {s} t {t}");
                    if let Some(b) = found {
                        assert!(b.side_s.iter().all(|&u| b.side_t.iter().all(|&v| u != v && g.color(u, v) == c)));
                    }
                }
            }
        }
    }

    #[test]
    fn six_cycle_is_h3() {
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
        let g = EdgeColoring::from_fn(6, |u, v| if cycle.contains(&(u, v)) { 0 } else { 1 }).unwrap();
        let c = g.color(0, 1);
        let h = find_subdivision(&g, c, 3).unwrap().unwrap();
        h.verify(&g, c).unwrap();
        assert_eq!(h.branch, vec![0, 2, 4]);

        let mono = EdgeColoring::monochromatic(6).unwrap();
        let h = find_subdivision(&mono, mono.color(0, 1), 3).unwrap().unwrap();
        h.verify(&mono, mono.color(0, 1)).unwrap();
        assert_eq!(h.edges().len(), 6);
    }

    #[test]
    fn too_few_edges() {
        let g = EdgeColoring::from_fn(6, |u, v| if (u, v) == (0, 1) { 0 } else { 1 }).unwrap();
        assert!(find_subdivision(&g, g.color(0, 1), 3).unwrap().is_none());
        assert!(find_subdivision(&g, g.color(0, 1), 2).is_err());
    }

    fn brute_h3(g: &EdgeColoring, c: ColorId) -> bool {
        let n = g.n();
        let e = |u: usize, v: usize| u != v && g.color(u, v) == c;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    for x in 0..n {
                        for y in 0..n {
                            for z in 0..n {
                                let all = [a, b, d, x, y, z];
                                let distinct = (0..6).all(|i| (i + 1..6).all(|j| all[i] != all[j]));
                                if distinct
                                    && e(a, x) && e(b, x)
                                    && e(a, y) && e(d, y)
                                    && e(b, z) && e(d, z)
                                {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn h3_matches_brute_force() {
        for seed in 0..15 {
            let g = random_coloring(8, 3, seed).unwrap();
            for c in g.palette() {
                let found = find_subdivision(&g, c, 3).unwrap();
                assert_eq!(found.is_some(), brute_h3(&g, c), "seed {seed}");
                if let Some(h) = found {
                    h.verify(&g, c).unwrap();
                }
            }
        }
    }
}
