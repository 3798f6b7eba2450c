//! Exhaustive computation of `f(n, k, l)` and of a range-restricted
//! `g(n, k, l)` for tiny parameters.
//!
//! `exact_f` enumerates colorings up to renaming of colors: edges are taken
//! in colex order `(0,1), (0,2), (1,2), (0,3), …` and each one gets either a
//! color already used or the next fresh one. Vertex `v` is complete once
//! `(v-1, v)` is colored, and at that point every k-subset with largest
//! vertex `v` is checked. Palette sizes are tried upward from `l`, so the
//! first success is optimal and every smaller size was refuted by an
//! exhausted search.

use num_rational::Ratio;
use serde::Serialize;

use crate::arithmetic::RealSet;
use crate::budget::{self, binomial, Budget};
use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::forbidden::GrowthReference;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    /// Palette size (for f) or difference-count bound (for g) searched.
    pub bound: usize,
    pub nodes: u64,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub levels: Vec<LevelStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub value: usize,
    /// The least optimal solution in search order.
    pub witness: W,
    pub stats: SearchStats,
}

fn validate(n: usize, k: usize, l: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if k < 2 || k > n {
        return Err(Error::invalid(format!("k = {k} must lie in 2..={n}")));
    }
    if l == 0 {
        return Err(Error::invalid("l must be positive"));
    }
    let pairs = binomial(k as u64, 2) as usize;
    if l > pairs {
        return Err(Error::NoSolution(format!("a {k}-set spans at most {pairs} colors, fewer than l = {l}")));
    }
    Ok(())
}

/// Calls `visit` on every `size`-subset of `0..below`, as a sorted slice.
fn for_each_subset(below: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if size > below {
        return true;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = size;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < below - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

struct FSearch {
    n: usize,
    k: usize,
    l: usize,
    palette: usize,
    edges: Vec<(usize, usize)>,
    matrix: Vec<usize>,
    assignment: Vec<usize>,
    nodes: u64,
    limit: u64,
    scratch: Vec<bool>,
}

impl FSearch {
    fn set(&mut self, u: usize, v: usize, c: usize) {
        self.matrix[u * self.n + v] = c;
        self.matrix[v * self.n + u] = c;
    }

    /// Every k-subset whose largest vertex is `v` spans at least `l` colors.
    fn vertex_ok(&mut self, v: usize) -> bool {
        let (n, k, l) = (self.n, self.k, self.l);
        let matrix = &self.matrix;
        let seen = &mut self.scratch;
        for_each_subset(v, k - 1, |rest| {
            seen.iter_mut().for_each(|s| *s = false);
            let mut distinct = 0;
            for (i, &a) in rest.iter().enumerate() {
                for &b in rest[i + 1..].iter().chain(std::iter::once(&v)) {
                    let c = matrix[a * n + b];
                    if !seen[c] {
                        seen[c] = true;
                        distinct += 1;
                    }
                }
            }
            distinct >= l
        })
    }

    fn dfs(&mut self, e: usize, used: usize) -> Result<bool> {
        if e == self.edges.len() {
            return Ok(true);
        }
        let (u, v) = self.edges[e];
        for c in 0..(used + 1).min(self.palette) {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::BudgetExceeded {
                    what: "exact f search",
                    required: self.nodes as u128,
                    budget: self.limit,
                });
            }
            self.assignment[e] = c;
            self.set(u, v, c);
            let complete = u + 1 == v;
            if complete && v + 1 >= self.k && !self.vertex_ok(v) {
                continue;
            }
            if self.dfs(e + 1, used.max(c + 1))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Restates a per-level budget failure against the whole search.
fn over_budget(e: Error, what: &'static str, spent: u64, budget: &Budget) -> Error {
    match e {
        Error::BudgetExceeded { required, .. } => Error::BudgetExceeded {
            what,
            required: required + spent as u128,
            budget: budget.oracle_nodes,
        },
        other => other,
    }
}

pub fn exact_f(n: usize, k: usize, l: usize) -> Result<OracleResult<EdgeColoring>> {
    exact_f_with(n, k, l, &Budget::default())
}

pub fn exact_f_with(n: usize, k: usize, l: usize, budget: &Budget) -> Result<OracleResult<EdgeColoring>> {
    validate(n, k, l)?;
    let edges: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut stats = SearchStats::default();
    for palette in l..=edges.len() {
        let mut search = FSearch {
            n,
            k,
            l,
            palette,
            edges: edges.clone(),
            matrix: vec![0; n * n],
            assignment: vec![0; edges.len()],
            nodes: 0,
            limit: budget.oracle_nodes.saturating_sub(stats.nodes),
            scratch: vec![false; palette],
        };
        let found = search.dfs(0, 0).map_err(|e| over_budget(e, "exact f search", stats.nodes, budget))?;
        stats.nodes += search.nodes;
        stats.levels.push(LevelStats {
            bound: palette,
            nodes: search.nodes,
            found,
        });
        if found {
            let witness = EdgeColoring::new(
                n,
                edges.iter().zip(&search.assignment).map(|(&(u, v), &c)| (u, v, c as i64)),
            )?;
            return Ok(OracleResult {
                value: palette,
                witness,
                stats,
            });
        }
    }
    unreachable!("a rainbow coloring satisfies every feasible l")
}

struct GSearch<'a> {
    k: usize,
    l: usize,
    target: usize,
    max_value: i64,
    budget: &'a Budget,
    elements: Vec<i64>,
    /// Multiplicity of each positive difference.
    counts: Vec<u32>,
    distinct: usize,
    best: Option<(usize, Vec<i64>)>,
    nodes: u64,
    scratch: Vec<i64>,
}

impl GSearch<'_> {
    /// Every k-subset containing the newest element spans `l` differences.
    fn newest_ok(&mut self) -> bool {
        let len = self.elements.len();
        let x = self.elements[len - 1];
        let (k, l) = (self.k, self.l);
        let elements = &self.elements;
        let scratch = &mut self.scratch;
        for_each_subset(len - 1, k - 1, |rest| {
            scratch.clear();
            for (i, &a) in rest.iter().enumerate() {
                scratch.push(x - elements[a]);
                for &b in &rest[i + 1..] {
                    scratch.push(elements[b] - elements[a]);
                }
            }
            scratch.sort_unstable();
            scratch.dedup();
            scratch.len() >= l
        })
    }

    fn push(&mut self, x: i64) {
        for i in 0..self.elements.len() {
            let d = (x - self.elements[i]) as usize;
            if self.counts[d] == 0 {
                self.distinct += 1;
            }
            self.counts[d] += 1;
        }
        self.elements.push(x);
    }

    fn pop(&mut self) {
        let x = self.elements.pop().expect("non-empty");
        for i in 0..self.elements.len() {
            let d = (x - self.elements[i]) as usize;
            self.counts[d] -= 1;
            if self.counts[d] == 0 {
                self.distinct -= 1;
            }
        }
    }

    fn dfs(&mut self) -> Result<()> {
        let remaining = self.target - self.elements.len();
        if remaining == 0 {
            if self.best.as_ref().is_none_or(|(b, _)| self.distinct < *b) {
                self.best = Some((self.distinct, self.elements.clone()));
            }
            return Ok(());
        }
        let last = *self.elements.last().expect("0 is always present");
        for x in last + 1..=self.max_value - remaining as i64 + 1 {
            // each later element adds at least its distance to 0
            if self.best.as_ref().is_some_and(|(b, _)| self.distinct + remaining >= *b) {
                return Ok(());
            }
            self.nodes += 1;
            budget::ensure("exact g search", self.nodes as u128, self.budget.oracle_nodes)?;
            self.push(x);
            if self.elements.len() < self.k || self.newest_ok() {
                self.dfs()?;
            }
            self.pop();
        }
        Ok(())
    }
}

pub fn exact_g_integers(n: usize, k: usize, l: usize, max_value: u64) -> Result<OracleResult<RealSet>> {
    exact_g_integers_with(n, k, l, max_value, &Budget::default())
}

/// Least `|A − A|` over `A ⊆ {0, …, max_value}` with `0 ∈ A`, `|A| = n`
/// and the (k, l) property. Only meaningful relative to `max_value`.
pub fn exact_g_integers_with(
    n: usize,
    k: usize,
    l: usize,
    max_value: u64,
    budget: &Budget,
) -> Result<OracleResult<RealSet>> {
    validate(n, k, l)?;
    if max_value as u128 + 1 < n as u128 {
        return Err(Error::NoSolution(format!("{{0, …, {max_value}}} has fewer than {n} elements")));
    }
    let max_value = i64::try_from(max_value).map_err(|_| Error::invalid("max_value is too large"))?;
    budget::ensure(
        "exact g subsets",
        binomial(max_value as u64, n as u64 - 1),
        budget.subsets,
    )?;
    let mut search = GSearch {
        k,
        l,
        target: n,
        max_value,
        budget,
        elements: vec![0],
        counts: vec![0; max_value as usize + 1],
        distinct: 0,
        best: None,
        nodes: 0,
        scratch: Vec::new(),
    };
    search.dfs()?;
    let nodes = search.nodes;
    let (value, elements) = search
        .best
        .ok_or_else(|| Error::NoSolution(format!("no {n}-subset of {{0, …, {max_value}}} has the property")))?;
    Ok(OracleResult {
        value,
        witness: RealSet::from_integers(&elements)?,
        stats: SearchStats {
            nodes,
            levels: vec![LevelStats {
                bound: value,
                nodes,
                found: true,
            }],
        },
    })
}

/// `(k − 2) / (C(k, 2) − l + 1)`, the exponent of the probabilistic upper
/// bound on `f(n, k, l)`, with the constant-free value `n^exponent`.
pub fn upper_bound_exponent(n: u64, k: usize, l: usize) -> Result<GrowthReference> {
    if k < 2 {
        return Err(Error::invalid(format!("k = {k} must be at least 2")));
    }
    let pairs = binomial(k as u64, 2) as u64;
    if l == 0 || l as u64 > pairs {
        return Err(Error::invalid(format!("l = {l} must lie in 1..={pairs}")));
    }
    Ok(GrowthReference::new(n, Ratio::new(k as u64 - 2, pairs - l as u64 + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{check_g_property, difference_set};
    use crate::coloring::{check_local_property, CheckMode};

    fn f(n: usize, k: usize, l: usize) -> usize {
        let res = exact_f(n, k, l).unwrap();
        let verdict = check_local_property(&res.witness, k, l, CheckMode::Exhaustive).unwrap();
        assert!(verdict.holds);
        assert_eq!(res.witness.palette_size(), res.value);
        res.value
    }

    #[test]
    fn f_examples() {
        assert_eq!(f(3, 3, 3), 3);
        assert_eq!(f(4, 3, 2), 2);
        assert_eq!(f(5, 3, 2), 2);
        assert_eq!(f(6, 3, 2), 3);
    }

    #[test]
    fn rainbow_triangle_is_the_witness() {
        let res = exact_f(3, 3, 3).unwrap();
        assert_eq!(res.witness.palette_size(), 3);
        assert_eq!(res.stats.levels.len(), 1);
    }

    #[test]
    fn f_3_3_is_at_least_n_minus_1() {
        for n in 3..=5 {
            assert!(f(n, 3, 3) >= n - 1);
        }
    }

    #[test]
    fn f_is_monotone() {
        for n in 3..=5 {
            let mut prev = 0;
            for l in 1..=3 {
                let v = f(n, 3, l);
                assert!(v >= prev);
                prev = v;
            }
        }
        for l in 1..=3 {
            let mut prev = 0;
            for n in 3..=5 {
                let v = f(n, 3, l);
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn f_errors() {
        assert!(matches!(exact_f(4, 3, 4), Err(Error::NoSolution(_))));
        assert!(exact_f(3, 4, 1).is_err());
        let tiny = Budget::uniform(10);
        assert!(exact_f_with(6, 3, 2, &tiny).unwrap_err().is_budget());
    }

    fn g(n: usize, k: usize, l: usize, max: u64) -> (usize, Vec<i128>) {
        let res = exact_g_integers(n, k, l, max).unwrap();
        assert!(check_g_property(&res.witness, k, l).unwrap().holds);
        assert_eq!(difference_set(&res.witness).unwrap().len(), res.value);
        (res.value, res.witness.numerators().to_vec())
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(3, 3, 2, 4), (2, vec![0, 1, 2]));
        assert_eq!(g(4, 4, 3, 6), (3, vec![0, 1, 2, 3]));
        assert_eq!(g(2, 2, 1, 1), (1, vec![0, 1]));
        // {0,1,3} is the least set with all three differences distinct
        assert_eq!(g(3, 3, 3, 5), (3, vec![0, 1, 3]));
    }

    /// Scans every n-subset of the range directly.
    fn brute_g(n: usize, k: usize, l: usize, max: i64) -> Option<usize> {
        let mut best = None;
        for mask in 0u32..1 << (max + 1) {
            if mask & 1 == 0 || mask.count_ones() as usize != n {
                continue;
            }
            let set: Vec<i64> = (0..=max).filter(|i| mask >> i & 1 == 1).collect();
            let rs = RealSet::from_integers(&set).unwrap();
            if check_g_property(&rs, k, l).unwrap().holds {
                let size = difference_set(&rs).unwrap().len();
                best = Some(best.map_or(size, |b: usize| b.min(size)));
            }
        }
        best
    }

    #[test]
    fn g_matches_brute_force() {
        for (n, k, l, max) in [(4, 3, 3, 8), (4, 4, 5, 9), (5, 3, 3, 10), (5, 4, 5, 10), (4, 4, 6, 10)] {
            let expected = brute_g(n, k, l, max);
            let got = exact_g_integers(n, k, l, max as u64).ok().map(|r| r.value);
            assert_eq!(got, expected, "n {n} k {k} l {l} max {max}");
        }
    }

    #[test]
    fn g_errors() {
        assert!(matches!(exact_g_integers(5, 3, 3, 3), Err(Error::NoSolution(_))));
        assert!(exact_g_integers(5, 3, 4, 10).is_err());
        let tiny = Budget::uniform(5);
        assert!(exact_g_integers_with(4, 3, 3, 20, &tiny).unwrap_err().is_budget());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_exponent(100, 8, 25).unwrap().exponent(), Ratio::new(3, 2));
        assert_eq!(upper_bound_exponent(100, 3, 3).unwrap().exponent(), Ratio::new(1, 1));
        let k24 = upper_bound_exponent(100, 24, 276 - 15).unwrap();
        assert_eq!(k24.exponent(), Ratio::new(11, 8));
        assert!(!k24.certified);
        assert!(upper_bound_exponent(100, 3, 4).is_err());
    }
}
