//! Second and r-th energy graphs and their pruning stages.
//!
//! A vertex is an r-tuple of base vertices. Two tuples `X`, `Y` are adjacent
//! iff `X_i ≠ Y_i` for every coordinate and `χ(X_1, Y_1) = … = χ(X_r, Y_r)`;
//! the edge carries that common color. Every unordered edge `{X, Y}` stands
//! for the two ordered 2r-tuples `(X_1, Y_1, …)` and `(Y_1, X_1, …)`, so in the
//! full second energy graph `2·|E'| = energy(g, 2)`.
//!
//! Vertices are numbered in mixed radix over the per-coordinate vertex lists,
//! which makes id order coincide with lexicographic tuple order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arithmetic::RealSet;
use crate::budget::{self, Budget};
use crate::coloring::{ColorId, ColorLabel, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub const DEFAULT_HALVING_TRIALS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EnergyEdge {
    pub a: usize,
    pub b: usize,
    pub color: ColorId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "stage")]
pub enum PruneStage {
    Diagonal {
        removed: usize,
    },
    RareColors {
        threshold: usize,
        removed: usize,
    },
    HalveParts {
        /// `(V'_j, V''_j)` for every coordinate.
        halves: Vec<(Vec<usize>, Vec<usize>)>,
        removed: usize,
        meets_target: bool,
        trials_used: u64,
    },
    CoordinateNeighbors {
        removed: usize,
    },
    SignClass {
        signs: SignSequence,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyGraph {
    r: usize,
    n: usize,
    parts: Option<Vec<Vec<usize>>>,
    coords: Vec<Vec<usize>>,
    positions: Vec<Vec<u32>>,
    strides: Vec<usize>,
    class_sizes: Vec<usize>,
    edges: Vec<EnergyEdge>,
    provenance: Vec<PruneStage>,
}

const ABSENT: u32 = u32::MAX;

impl EnergyGraph {
    fn build(g: &EdgeColoring, coords: Vec<Vec<usize>>, parts: Option<Vec<Vec<usize>>>, budget: &Budget) -> Result<Self> {
        let n = g.n();
        let r = coords.len();
        let vertex_count = coords.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128));
        let vertex_count = vertex_count.unwrap_or(u128::MAX);
        budget::ensure("energy graph vertices", vertex_count, budget.energy_graph_edges)?;

        let positions: Vec<Vec<u32>> = coords
            .iter()
            .map(|c| {
                let mut pos = vec![ABSENT; n];
                for (i, &v) in c.iter().enumerate() {
                    pos[v] = i as u32;
                }
                pos
            })
            .collect();
        let mut strides = vec![1usize; r];
        for j in (0..r.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * coords[j + 1].len();
        }

        // Ordered base pairs of each color, per coordinate.
        let palette = g.palette_size();
        let mut classes: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); palette]; r];
        for (j, allowed) in coords.iter().enumerate() {
            for &x in allowed {
                for &y in allowed {
                    if x != y {
                        classes[j][g.color(x, y).index()].push((x, y));
                    }
                }
            }
        }
        let ordered: u128 = (0..palette)
            .map(|c| classes.iter().map(|cl| cl[c].len() as u128).product::<u128>())
            .sum();
        budget::ensure("energy graph edges", ordered / 2, budget.energy_graph_edges)?;

        let mut eg = EnergyGraph {
            r,
            n,
            parts,
            coords,
            positions,
            strides,
            class_sizes: g.class_sizes(),
            edges: Vec::with_capacity((ordered / 2) as usize),
            provenance: Vec::new(),
        };
        let mut choice = vec![0usize; r];
        for c in 0..palette {
            let lists: Vec<&Vec<(usize, usize)>> = classes.iter().map(|cl| &cl[c]).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            choice.iter_mut().for_each(|x| *x = 0);
            'product: loop {
                let (mut a, mut b) = (0, 0);
                for j in 0..r {
                    let (x, y) = lists[j][choice[j]];
                    a += eg.positions[j][x] as usize * eg.strides[j];
                    b += eg.positions[j][y] as usize * eg.strides[j];
                }
                if a < b {
                    eg.edges.push(EnergyEdge {
                        a,
                        b,
                        color: ColorId(c as u32),
                    });
                }
                for j in (0..r).rev() {
                    choice[j] += 1;
                    if choice[j] < lists[j].len() {
                        continue 'product;
                    }
                    choice[j] = 0;
                }
                break;
            }
        }
        eg.edges.sort_unstable();
        Ok(eg)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of base vertices of the source coloring.
    pub fn base_n(&self) -> usize {
        self.n
    }

    /// `Some(parts)` for a graph built on `V_1 × … × V_r`.
    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.iter().map(Vec::len).product()
    }

    pub fn edges(&self) -> &[EnergyEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn provenance(&self) -> &[PruneStage] {
        &self.provenance
    }

    /// Base edges of each color in the source coloring.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn tuple(&self, id: usize) -> Vec<usize> {
        (0..self.r)
            .map(|j| self.coords[j][(id / self.strides[j]) % self.coords[j].len()])
            .collect()
    }

    pub fn vertex_id(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.r {
            return None;
        }
        let mut id = 0;
        for (j, &v) in tuple.iter().enumerate() {
            let p = *self.positions[j].get(v)?;
            if p == ABSENT {
                return None;
            }
            id += p as usize * self.strides[j];
        }
        Some(id)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&EnergyEdge> {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.a, e.b).cmp(&(a, b)))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::new(self.vertex_count(), self.edges.iter().map(|e| (e.a, e.b)))
    }

    fn with_edges(&self, edges: Vec<EnergyEdge>, stage: PruneStage) -> EnergyGraph {
        let mut out = EnergyGraph {
            edges,
            ..self.clone_without_edges()
        };
        out.provenance.push(stage);
        out
    }

    fn clone_without_edges(&self) -> EnergyGraph {
        EnergyGraph {
            r: self.r,
            n: self.n,
            parts: self.parts.clone(),
            coords: self.coords.clone(),
            positions: self.positions.clone(),
            strides: self.strides.clone(),
            class_sizes: self.class_sizes.clone(),
            edges: Vec::new(),
            provenance: self.provenance.clone(),
        }
    }

    /// Whether no vertex has two neighbors agreeing in some coordinate.
    pub fn satisfies_coordinate_neighbor_property(&self) -> bool {
        let graph = self.to_simple();
        (0..graph.vertex_count()).all(|v| {
            let tuples: Vec<Vec<usize>> = graph.neighbors(v).iter().map(|&w| self.tuple(w)).collect();
            (0..self.r).all(|j| {
                let mut values: Vec<usize> = tuples.iter().map(|t| t[j]).collect();
                values.sort_unstable();
                values.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    pub fn export(&self, g: &EdgeColoring) -> EnergyGraphExport {
        EnergyGraphExport {
            r: self.r,
            parts: self.parts.clone(),
            vertex_count: self.vertex_count(),
            edges: self
                .edges
                .iter()
                .map(|e| (self.tuple(e.a), self.tuple(e.b), g.label(e.color).clone()))
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// JSON form of an energy graph; vertices are implicit.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyGraphExport {
    pub r: usize,
    pub parts: Option<Vec<Vec<usize>>>,
    pub vertex_count: usize,
    pub edges: Vec<(Vec<usize>, Vec<usize>, ColorLabel)>,
    pub provenance: Vec<PruneStage>,
}

/// The full second energy graph on `V × V`, diagonal vertices included.
pub fn build_second_energy_graph(g: &EdgeColoring) -> Result<EnergyGraph> {
    build_second_energy_graph_with(g, &Budget::default())
}

pub fn build_second_energy_graph_with(g: &EdgeColoring, budget: &Budget) -> Result<EnergyGraph> {
    let all: Vec<usize> = (0..g.n()).collect();
    EnergyGraph::build(g, vec![all.clone(), all], None, budget)
}

/// Removes the edges `{(a,a), (b,b)}`, which stand for the degenerate
/// tuples `(a,b,a,b)` and `(b,a,b,a)`; there are `n(n-1)/2` of them.
pub fn prune_diagonal(eg: &EnergyGraph) -> Result<EnergyGraph> {
    if eg.r != 2 || eg.parts.is_some() {
        return Err(Error::Precondition(
            "diagonal pruning applies to the full second energy graph".into(),
        ));
    }
    let diagonal = |id: usize| {
        let t = eg.tuple(id);
        t[0] == t[1]
    };
    let kept: Vec<EnergyEdge> = eg
        .edges
        .iter()
        .copied()
        .filter(|e| !(diagonal(e.a) && diagonal(e.b)))
        .collect();
    let removed = eg.edges.len() - kept.len();
    Ok(eg.with_edges(kept, PruneStage::Diagonal { removed }))
}

/// Drops every energy edge whose color has fewer than `threshold` base edges.
pub fn prune_rare_colors(eg: &EnergyGraph, threshold: usize) -> EnergyGraph {
    let kept: Vec<EnergyEdge> = eg
        .edges
        .iter()
        .copied()
        .filter(|e| eg.class_sizes[e.color.index()] >= threshold)
        .collect();
    let removed = eg.edges.len() - kept.len();
    eg.with_edges(kept, PruneStage::RareColors { threshold, removed })
}

/// `⌈ln n⌉`, the rare-color threshold used with r-th energy graphs.
pub fn log_threshold(n: usize) -> usize {
    (n as f64).ln().ceil().max(0.0) as usize
}

/// The r-th energy graph on `V_1 × … × V_r`; coordinate j only uses base
/// edges inside `V_j`.
pub fn build_rth_energy_graph(g: &EdgeColoring, r: usize, parts: &[Vec<usize>]) -> Result<EnergyGraph> {
    build_rth_energy_graph_with(g, r, parts, &Budget::default())
}

pub fn build_rth_energy_graph_with(
    g: &EdgeColoring,
    r: usize,
    parts: &[Vec<usize>],
    budget: &Budget,
) -> Result<EnergyGraph> {
    if r < 2 {
        return Err(Error::invalid(format!("r = {r} must be at least 2")));
    }
    if parts.len() != r {
        return Err(Error::invalid(format!("expected {r} parts, got {}", parts.len())));
    }
    let mut owner = vec![false; g.n()];
    let mut coords = Vec::with_capacity(r);
    for part in parts {
        if part.is_empty() {
            return Err(Error::invalid("parts must be non-empty"));
        }
        for &v in part {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if owner[v] {
                return Err(Error::invalid(format!("vertex {v} appears in two parts")));
            }
            owner[v] = true;
        }
        let mut sorted = part.clone();
        sorted.sort_unstable();
        coords.push(sorted);
    }
    EnergyGraph::build(g, coords.clone(), Some(coords), budget)
}

/// Splits each part into two halves and keeps only edges whose coordinate
/// pairs all straddle their halves. Accepts the first split retaining at
/// least a `3^{-r}` fraction, else keeps the best of `max_trials`.
pub fn halve_parts_prune(eg: &EnergyGraph, seed: u64) -> Result<EnergyGraph> {
    halve_parts_prune_with(eg, seed, DEFAULT_HALVING_TRIALS)
}

pub fn halve_parts_prune_with(eg: &EnergyGraph, seed: u64, max_trials: u64) -> Result<EnergyGraph> {
    let parts = eg
        .parts
        .as_ref()
        .ok_or_else(|| Error::Precondition("halving needs a partitioned energy graph".into()))?;
    if let Some(p) = parts.iter().find(|p| p.len() < 2) {
        return Err(Error::Precondition(format!("part {p:?} has fewer than 2 vertices")));
    }
    if max_trials == 0 {
        return Err(Error::invalid("max_trials must be positive"));
    }
    let total = eg.edges.len() as u128;
    let scale = 3u128.pow(eg.r as u32);
    let tuples: Vec<(Vec<usize>, Vec<usize>)> = eg.edges.iter().map(|e| (eg.tuple(e.a), eg.tuple(e.b))).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<bool>, Vec<(Vec<usize>, Vec<usize>)>, usize)> = None;
    let mut trials_used = 0;
    for _ in 0..max_trials {
        trials_used += 1;
        let mut side = vec![false; eg.n];
        let mut halves = Vec::with_capacity(eg.r);
        for part in parts {
            let mut order = part.clone();
            order.shuffle(&mut rng);
            let cut = order.len().div_ceil(2);
            let (mut first, mut second) = (order[..cut].to_vec(), order[cut..].to_vec());
            first.sort_unstable();
            second.sort_unstable();
            for &v in &second {
                side[v] = true;
            }
            halves.push((first, second));
        }
        let keep: Vec<bool> = tuples
            .iter()
            .map(|(x, y)| x.iter().zip(y).all(|(&u, &w)| side[u] != side[w]))
            .collect();
        let retained = keep.iter().filter(|&&k| k).count();
        if best.as_ref().is_none_or(|(_, _, r)| retained > *r) {
            best = Some((keep, halves, retained));
        }
        if best.as_ref().unwrap().2 as u128 * scale >= total {
            break;
        }
    }
    let (keep, halves, retained) = best.expect("at least one trial ran");
    let kept: Vec<EnergyEdge> = eg.edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| *e).collect();
    Ok(eg.with_edges(
        kept,
        PruneStage::HalveParts {
            halves,
            removed: eg.edges.len() - retained,
            meets_target: retained as u128 * scale >= total,
            trials_used,
        },
    ))
}

/// Greedy pass in lexicographic edge order: an edge is kept iff, at both
/// endpoints, its other endpoint differs in every coordinate from the
/// neighbors already kept there.
pub fn prune_coordinate_neighbors(eg: &EnergyGraph) -> EnergyGraph {
    let mut used: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut kept = Vec::new();
    for e in &eg.edges {
        let (ta, tb) = (eg.tuple(e.a), eg.tuple(e.b));
        let clash = |v: usize, other: &[usize], used: &HashMap<usize, Vec<Vec<usize>>>| {
            used.get(&v)
                .is_some_and(|per| per.iter().zip(other).any(|(vals, x)| vals.contains(x)))
        };
        if clash(e.a, &tb, &used) || clash(e.b, &ta, &used) {
            continue;
        }
        for (v, other) in [(e.a, &tb), (e.b, &ta)] {
            let per = used.entry(v).or_insert_with(|| vec![Vec::new(); eg.r]);
            for (vals, &x) in per.iter_mut().zip(other.iter()) {
                vals.push(x);
            }
        }
        kept.push(*e);
    }
    let removed = eg.edges.len() - kept.len();
    eg.with_edges(kept, PruneStage::CoordinateNeighbors { removed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// How the absolute values in `|v_1 − v'_1| = … = |v_r − v'_r|` resolve:
/// entry `j-1` compares coordinate j with coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignSequence(pub Vec<Sign>);

impl SignSequence {
    /// All `2^{len}` sequences in lexicographic order, `+` first.
    pub fn all(len: usize) -> Vec<SignSequence> {
        (0..1usize << len)
            .map(|mask| {
                SignSequence(
                    (0..len)
                        .map(|i| if mask >> (len - 1 - i) & 1 == 1 { Sign::Minus } else { Sign::Plus })
                        .collect(),
                )
            })
            .collect()
    }

    /// Sign relating coordinate `j` to coordinate 0 (`+` for `j = 0`).
    pub fn relative(&self, j: usize) -> Sign {
        if j == 0 {
            Sign::Plus
        } else {
            self.0[j - 1]
        }
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// Sign vector of one edge of an arithmetic energy graph.
pub fn edge_signs(eg: &EnergyGraph, set: &RealSet, e: &EnergyEdge) -> Result<SignSequence> {
    let (x, y) = (eg.tuple(e.a), eg.tuple(e.b));
    let diff = |j: usize| set.numerator(x[j]) - set.numerator(y[j]);
    let d0 = diff(0);
    let mut signs = Vec::with_capacity(eg.r - 1);
    for j in 1..eg.r {
        let dj = diff(j);
        signs.push(if d0 == dj {
            Sign::Plus
        } else if d0 == -dj {
            Sign::Minus
        } else {
            return Err(Error::Corrupted(format!(
                "edge {x:?} – {y:?} has unequal coordinate differences"
            )));
        });
    }
    Ok(SignSequence(signs))
}

/// Splits the edges into `2^{r-1}` sign classes over the same vertex set.
pub fn sign_decompose(eg: &EnergyGraph, set: &RealSet) -> Result<BTreeMap<SignSequence, EnergyGraph>> {
    if set.len() != eg.n {
        return Err(Error::invalid(format!(
            "set has {} elements but the energy graph has {} base vertices",
            set.len(),
            eg.n
        )));
    }
    let mut buckets: BTreeMap<SignSequence, Vec<EnergyEdge>> =
        SignSequence::all(eg.r - 1).into_iter().map(|s| (s, Vec::new())).collect();
    for e in &eg.edges {
        let signs = edge_signs(eg, set, e)?;
        buckets.get_mut(&signs).expect("every sequence has a bucket").push(*e);
    }
    Ok(buckets
        .into_iter()
        .map(|(s, edges)| {
            let sub = eg.with_edges(edges, PruneStage::SignClass { signs: s.clone() });
            (s, sub)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{coloring_from_set, RealSet};
    use crate::coloring::random_coloring;
    use crate::energy::energy;
    use num_bigint::BigUint;

    fn edge_tuples(eg: &EnergyGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
        eg.edges().iter().map(|e| (eg.tuple(e.a), eg.tuple(e.b))).collect()
    }

    #[test]
    fn rainbow_triangle_second_graph() {
        let g = EdgeColoring::rainbow(3).unwrap();
        let eg = build_second_energy_graph(&g).unwrap();
        assert_eq!(eg.vertex_count(), 9);
        assert_eq!(eg.edge_count(), 6);
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert!(edge_tuples(&eg).contains(&(vec![u, v], vec![v, u])));
            assert!(edge_tuples(&eg).contains(&(vec![u, u], vec![v, v])));
        }
        let pruned = prune_diagonal(&eg).unwrap();
        assert_eq!(pruned.edge_count(), 3);
        assert_eq!(pruned.provenance(), &[PruneStage::Diagonal { removed: 3 }]);
    }

    #[test]
    fn monochromatic_k2_second_graph() {
        let g = EdgeColoring::monochromatic(2).unwrap();
        let eg = build_second_energy_graph(&g).unwrap();
        assert_eq!(
            edge_tuples(&eg),
            vec![(vec![0, 0], vec![1, 1]), (vec![0, 1], vec![1, 0])]
        );
        assert_eq!(BigUint::from(2 * eg.edge_count()), energy(&g, 2).unwrap().value);
        let pruned = prune_diagonal(&eg).unwrap();
        assert_eq!(edge_tuples(&pruned), vec![(vec![0, 1], vec![1, 0])]);
    }

    #[test]
    fn energy_identity_and_diagonal_count() {
        for seed in 0..30 {
            let n = 2 + seed as usize % 5;
            let g = random_coloring(n, 1 + seed as u32 % 4, seed).unwrap();
            let eg = build_second_energy_graph(&g).unwrap();
            let e2 = energy(&g, 2).unwrap().value;
            assert_eq!(BigUint::from(2 * eg.edge_count()), e2);
            let pruned = prune_diagonal(&eg).unwrap();
            assert_eq!(eg.edge_count() - pruned.edge_count(), n * (n - 1) / 2);
            assert_eq!(BigUint::from(2 * pruned.edge_count() + n * (n - 1)), e2);
            // idempotent
            assert_eq!(prune_diagonal(&pruned).unwrap().edges(), pruned.edges());
        }
    }

    #[test]
    fn diagonal_pruning_needs_full_second_graph() {
        let g = EdgeColoring::monochromatic(4).unwrap();
        let eg = build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(prune_diagonal(&eg).is_err());
    }

    #[test]
    fn rare_color_examples() {
        let rainbow = EdgeColoring::rainbow(5).unwrap();
        let eg = build_second_energy_graph(&rainbow).unwrap();
        assert_eq!(prune_rare_colors(&eg, 2).edge_count(), 0);

        let mono = EdgeColoring::monochromatic(5).unwrap();
        let eg = build_second_energy_graph(&mono).unwrap();
        assert_eq!(prune_rare_colors(&eg, 5).edges(), eg.edges());
    }

    #[test]
    fn rare_pruning_matches_rebuild() {
        let g = random_coloring(12, 5, 3).unwrap();
        let threshold = log_threshold(12);
        assert_eq!(threshold, 3);
        let eg = build_second_energy_graph(&g).unwrap();
        let pruned = prune_rare_colors(&eg, threshold);
        let sizes = g.class_sizes();
        let expected: Vec<EnergyEdge> =
            eg.edges().iter().copied().filter(|e| sizes[e.color.index()] >= threshold).collect();
        assert_eq!(pruned.edges(), &expected[..]);
        assert_eq!(prune_rare_colors(&pruned, threshold).edges(), pruned.edges());
    }

    #[test]
    fn rth_graph_monochromatic_k4() {
        let g = EdgeColoring::monochromatic(4).unwrap();
        let eg = build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(eg.vertex_count(), 4);
        assert_eq!(
            edge_tuples(&eg),
            vec![(vec![0, 2], vec![1, 3]), (vec![0, 3], vec![1, 2])]
        );
        let rainbow = EdgeColoring::rainbow(4).unwrap();
        assert_eq!(build_rth_energy_graph(&rainbow, 2, &[vec![0, 2], vec![1, 3]]).unwrap().edge_count(), 0);
    }

    #[test]
    fn rth_graph_rejects_bad_parts() {
        let g = EdgeColoring::monochromatic(4).unwrap();
        assert!(build_rth_energy_graph(&g, 3, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![1, 3]]).is_err());
        assert!(build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![]]).is_err());
        let tiny = Budget::uniform(2);
        assert!(build_rth_energy_graph_with(&g, 2, &[vec![0, 1], vec![2, 3]], &tiny).unwrap_err().is_budget());
    }

    #[test]
    fn vertex_ids_roundtrip() {
        let g = EdgeColoring::monochromatic(7).unwrap();
        let eg = build_rth_energy_graph(&g, 3, &[vec![5, 0], vec![3, 1, 6], vec![2, 4]]).unwrap();
        for id in 0..eg.vertex_count() {
            assert_eq!(eg.vertex_id(&eg.tuple(id)), Some(id));
        }
        assert_eq!(eg.tuple(0), vec![0, 1, 2]);
        assert_eq!(eg.vertex_id(&[0, 0, 2]), None);
    }

    #[test]
    fn halving_examples() {
        let g = EdgeColoring::rainbow(4).unwrap();
        let empty = build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(halve_parts_prune(&empty, 0).unwrap().edge_count(), 0);

        // χ(0,1) = χ(2,3) gives {(0,2),(1,3)} and {(0,3),(1,2)}; with parts of
        // size 2 every split separates each coordinate pair.
        let g = EdgeColoring::new(4, [(0, 1, 0), (2, 3, 0), (0, 2, 1), (0, 3, 2), (1, 2, 3), (1, 3, 4)]).unwrap();
        let eg = build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(eg.edge_count(), 2);
        assert_eq!(halve_parts_prune(&eg, 9).unwrap().edge_count(), 2);

        let bad = build_rth_energy_graph(&g, 2, &[vec![0], vec![2, 3]]).unwrap();
        assert!(halve_parts_prune(&bad, 0).is_err());
    }

    #[test]
    fn halving_monochromatic_k8_keeps_a_ninth() {
        let g = EdgeColoring::monochromatic(8).unwrap();
        let eg = build_rth_energy_graph(&g, 2, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        let halved = halve_parts_prune(&eg, 1).unwrap();
        assert!(9 * halved.edge_count() >= eg.edge_count());
        // recount from the recorded halves
        let PruneStage::HalveParts { halves, .. } = halved.provenance().last().unwrap() else {
            panic!("halving stage missing");
        };
        let side = |j: usize, v: usize| halves[j].1.contains(&v);
        let recount = eg
            .edges()
            .iter()
            .filter(|e| {
                let (x, y) = (eg.tuple(e.a), eg.tuple(e.b));
                (0..2).all(|j| side(j, x[j]) != side(j, y[j]))
            })
            .count();
        assert_eq!(recount, halved.edge_count());
    }

    #[test]
    fn coordinate_neighbor_examples() {
        let g = EdgeColoring::monochromatic(2).unwrap();
        let eg = prune_diagonal(&build_second_energy_graph(&g).unwrap()).unwrap();
        assert_eq!(prune_coordinate_neighbors(&eg).edges(), eg.edges());

        // v = (0,2,4) with neighbors (1,3,5) and (1,3,6).
        let g = EdgeColoring::monochromatic(7).unwrap();
        let eg = build_rth_energy_graph(&g, 3, &[vec![0, 1], vec![2, 3], vec![4, 5, 6]]).unwrap();
        let pruned = prune_coordinate_neighbors(&eg);
        let v = eg.vertex_id(&[0, 2, 4]).unwrap();
        let kept: Vec<_> = [5, 6]
            .iter()
            .filter(|&&x| pruned.edge_between(v, eg.vertex_id(&[1, 3, x]).unwrap()).is_some())
            .collect();
        assert!(kept.len() <= 1);
        assert!(pruned.satisfies_coordinate_neighbor_property());
        assert!(!eg.satisfies_coordinate_neighbor_property());
        assert_eq!(prune_coordinate_neighbors(&pruned).edges(), pruned.edges());
    }

    #[test]
    fn coordinate_neighbor_audit_on_random_graphs() {
        for seed in 0..10 {
            let g = random_coloring(9, 3, seed).unwrap();
            let eg = build_rth_energy_graph(&g, 3, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
            assert!(prune_coordinate_neighbors(&eg).satisfies_coordinate_neighbor_property());
        }
    }

    #[test]
    fn sign_decomposition_example() {
        let set = RealSet::from_integers(&[0, 1, 10, 11]).unwrap();
        let g = coloring_from_set(&set).unwrap();
        let eg = build_rth_energy_graph(&g, 2, &[vec![0, 1], vec![2, 3]]).unwrap();
        let classes = sign_decompose(&eg, &set).unwrap();
        let plus = &classes[&SignSequence(vec![Sign::Plus])];
        let minus = &classes[&SignSequence(vec![Sign::Minus])];
        assert_eq!(edge_tuples(plus), vec![(vec![0, 2], vec![1, 3])]);
        assert_eq!(edge_tuples(minus), vec![(vec![0, 3], vec![1, 2])]);
        assert_eq!(plus.edge_count() + minus.edge_count(), eg.edge_count());
    }

    #[test]
    fn sign_sequences_enumerate() {
        let all = SignSequence::all(2);
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["++", "+-", "-+", "--"]);
        assert_eq!(all[2].relative(0), Sign::Plus);
        assert_eq!(all[2].relative(1), Sign::Minus);
    }
}
