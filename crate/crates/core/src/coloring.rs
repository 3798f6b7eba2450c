//! Edge colorings of complete graphs and the (k, ℓ) local property.
//!
//! Color multiplicities count ORDERED vertex pairs, so every edge contributes
//! 2 to the multiplicity of its color and the multiplicities of a coloring of
//! `K_n` sum to `n(n-1)`.

use std::collections::HashMap;
use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Dense color index assigned when a coloring is loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u32);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The user-facing name of a color, as it appears in coloring files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColorLabel {
    Int(i64),
    Str(String),
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorLabel::Int(i) => write!(f, "{i}"),
            ColorLabel::Str(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ColorLabel {
    fn from(v: i64) -> Self {
        ColorLabel::Int(v)
    }
}

impl From<&str> for ColorLabel {
    fn from(v: &str) -> Self {
        ColorLabel::Str(v.to_owned())
    }
}

impl From<String> for ColorLabel {
    fn from(v: String) -> Self {
        ColorLabel::Str(v)
    }
}

/// On-disk form: `{"n": int, "edges": [[u, v, color], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, ColorLabel)>,
}

/// An edge-colored complete graph `K_n`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    // n*n symmetric matrix; the diagonal holds u32::MAX.
    matrix: Vec<u32>,
    labels: Vec<ColorLabel>,
}

const NO_COLOR: u32 = u32::MAX;

impl EdgeColoring {
    /// Validates a full assignment of colors to the `C(n,2)` pairs.
    ///
    /// Labels are renumbered densely in order of first appearance.
    pub fn new<L: Into<ColorLabel>>(
        n: usize,
        assignments: impl IntoIterator<Item = (usize, usize, L)>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let mut matrix = vec![NO_COLOR; n * n];
        let mut ids: HashMap<ColorLabel, u32> = HashMap::new();
        let mut labels = Vec::new();
        for (u, v, label) in assignments {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if matrix[u * n + v] != NO_COLOR {
                return Err(Error::DuplicatePair(u.min(v), u.max(v)));
            }
            let label = label.into();
            let id = *ids.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as u32
            });
            matrix[u * n + v] = id;
            matrix[v * n + u] = id;
        }
        for u in 0..n {
            for v in u + 1..n {
                if matrix[u * n + v] == NO_COLOR {
                    return Err(Error::MissingPair(u, v));
                }
            }
        }
        Ok(EdgeColoring { n, matrix, labels })
    }

    /// Colors every pair `u < v` (in lexicographic order) with `f(u, v)`.
    pub fn from_fn<L: Into<ColorLabel>>(n: usize, mut f: impl FnMut(usize, usize) -> L) -> Result<Self> {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, f(u, v)));
            }
        }
        EdgeColoring::new(n, edges)
    }

    /// Every pair gets the same color.
    pub fn monochromatic(n: usize) -> Result<Self> {
        EdgeColoring::from_fn(n, |_, _| 0)
    }

    /// Every pair gets its own color.
    pub fn rainbow(n: usize) -> Result<Self> {
        let mut next = 0i64;
        EdgeColoring::from_fn(n, |_, _| {
            next += 1;
            next - 1
        })
    }

    pub fn from_file(file: ColoringFile) -> Result<Self> {
        EdgeColoring::new(file.n, file.edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        EdgeColoring::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            n: self.n,
            edges: self
                .pairs()
                .map(|(u, v)| (u, v, self.label(self.color(u, v)).clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("coloring serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Color of the pair `{u, v}`; panics on `u == v`.
    pub fn color(&self, u: usize, v: usize) -> ColorId {
        let c = self.matrix[u * self.n + v];
        assert!(c != NO_COLOR, "no color on the loop at {u}");
        ColorId(c)
    }

    pub fn palette_size(&self) -> usize {
        self.labels.len()
    }

    pub fn palette(&self) -> impl Iterator<Item = ColorId> {
        (0..self.labels.len() as u32).map(ColorId)
    }

    pub fn label(&self, c: ColorId) -> &ColorLabel {
        &self.labels[c.index()]
    }

    /// Looks up the dense id of a label.
    pub fn color_by_label(&self, label: &ColorLabel) -> Option<ColorId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| ColorId(i as u32))
    }

    /// Pairs `(u, v)` with `u < v` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Base edges of one color, lexicographically ordered.
    pub fn color_class(&self, c: ColorId) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(u, v)| self.color(u, v) == c).collect()
    }

    pub fn color_class_graph(&self, c: ColorId) -> SimpleGraph {
        SimpleGraph::new(self.n, self.color_class(c))
    }

    /// Number of base edges of each color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.palette_size()];
        for (u, v) in self.pairs() {
            sizes[self.color(u, v).index()] += 1;
        }
        sizes
    }

    /// Number of distinct colors among the pairs of `vertices`.
    pub fn colors_spanned(&self, vertices: &[usize]) -> usize {
        let mut seen = vec![false; self.palette_size()];
        let mut count = 0;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                let c = self.color(u, v).index();
                if !seen[c] {
                    seen[c] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// The coloring induced on `vertices`, relabelled `0..len` in the given
    /// order. Labels are preserved.
    pub fn induced(&self, vertices: &[usize]) -> Result<EdgeColoring> {
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        EdgeColoring::from_fn(vertices.len(), |i, j| {
            self.label(self.color(vertices[i], vertices[j])).clone()
        })
    }
}

/// Per-color ordered-pair multiplicities `m_c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorStats {
    /// Indexed by `ColorId`.
    pub multiplicity: Vec<u64>,
    pub total: u64,
}

pub fn color_multiplicities(g: &EdgeColoring) -> ColorStats {
    let multiplicity: Vec<u64> = g.class_sizes().into_iter().map(|s| 2 * s as u64).collect();
    let total = multiplicity.iter().sum();
    ColorStats {
        multiplicity,
        total,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CheckMode {
    Exhaustive,
    /// `trials` uniform k-subsets drawn from `seed`. Can refute the
    /// property but never prove it.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    /// In sampled mode `true` only means "not refuted".
    pub holds: bool,
    /// A k-subset attaining `min_colors_seen`, least in lexicographic order
    /// for exhaustive checks.
    pub witness: Option<Vec<usize>>,
    pub min_colors_seen: usize,
    pub mode: CheckMode,
}

pub fn check_local_property(g: &EdgeColoring, k: usize, l: usize, mode: CheckMode) -> Result<PropertyVerdict> {
    check_local_property_with(g, k, l, mode, &Budget::default())
}

pub fn check_local_property_with(
    g: &EdgeColoring,
    k: usize,
    l: usize,
    mode: CheckMode,
    budget: &Budget,
) -> Result<PropertyVerdict> {
    validate_k(g, k)?;
    let pairs = k * (k - 1) / 2;
    if l == 0 || l > pairs {
        return Err(Error::invalid(format!("l = {l} must lie in 1..={pairs} for k = {k}")));
    }
    let (min_colors, witness) = match mode {
        CheckMode::Exhaustive => min_colors_over_k_subsets_with(g, k, budget)?,
        CheckMode::Sampled { trials, seed } => sampled_minimum(g, k, trials, seed)?,
    };
    Ok(PropertyVerdict {
        holds: min_colors >= l,
        witness: Some(witness),
        min_colors_seen: min_colors,
        mode,
    })
}

fn validate_k(g: &EdgeColoring, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k = {k} must be at least 2")));
    }
    if k > g.n() {
        return Err(Error::invalid(format!("k = {k} exceeds n = {}", g.n())));
    }
    Ok(())
}

/// Exact minimum number of colors spanned by a k-subset, with the
/// lexicographically least subset attaining it.
pub fn min_colors_over_k_subsets(g: &EdgeColoring, k: usize) -> Result<(usize, Vec<usize>)> {
    min_colors_over_k_subsets_with(g, k, &Budget::default())
}

pub fn min_colors_over_k_subsets_with(g: &EdgeColoring, k: usize, budget: &Budget) -> Result<(usize, Vec<usize>)> {
    validate_k(g, k)?;
    budget::ensure("k-subset enumeration", budget::binomial(g.n() as u64, k as u64), budget.subsets)?;
    let mut search = SubsetSearch {
        g,
        k,
        counts: vec![0; g.palette_size()],
        distinct: 0,
        chosen: Vec::with_capacity(k),
        best: usize::MAX,
        best_set: Vec::new(),
    };
    search.descend(0);
    Ok((search.best, search.best_set))
}

struct SubsetSearch<'a> {
    g: &'a EdgeColoring,
    k: usize,
    counts: Vec<u32>,
    distinct: usize,
    chosen: Vec<usize>,
    best: usize,
    best_set: Vec<usize>,
}

impl SubsetSearch<'_> {
    fn descend(&mut self, start: usize) {
        if self.chosen.len() == self.k {
            if self.distinct < self.best {
                self.best = self.distinct;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        let last = self.g.n() - (self.k - self.chosen.len());
        for v in start..=last {
            self.push(v);
            // Adding vertices never removes colors.
            if self.distinct < self.best {
                self.descend(v + 1);
            }
            self.pop(v);
            if self.best == 1 {
                return;
            }
        }
    }

    fn push(&mut self, v: usize) {
        for i in 0..self.chosen.len() {
            let c = self.g.color(self.chosen[i], v).index();
            self.counts[c] += 1;
            if self.counts[c] == 1 {
                self.distinct += 1;
            }
        }
        self.chosen.push(v);
    }

    fn pop(&mut self, v: usize) {
        self.chosen.pop();
        for i in 0..self.chosen.len() {
            let c = self.g.color(self.chosen[i], v).index();
            self.counts[c] -= 1;
            if self.counts[c] == 0 {
                self.distinct -= 1;
            }
        }
    }
}

fn sampled_minimum(g: &EdgeColoring, k: usize, trials: u64, seed: u64) -> Result<(usize, Vec<usize>)> {
    if trials == 0 {
        return Err(Error::invalid("sampled mode needs at least one trial"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    let mut best_set = Vec::new();
    for _ in 0..trials {
        let mut subset = index::sample(&mut rng, g.n(), k).into_vec();
        subset.sort_unstable();
        let spanned = g.colors_spanned(&subset);
        if spanned < best {
            best = spanned;
            best_set = subset;
        }
    }
    Ok((best, best_set))
}

/// Colors each edge independently and uniformly from `0..c`.
pub fn random_coloring(n: usize, c: u32, seed: u64) -> Result<EdgeColoring> {
    if c == 0 {
        return Err(Error::invalid("palette size must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EdgeColoring::from_fn(n, |_, _| rng.gen_range(0..c) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonochromaticDegree {
    pub vertex: usize,
    pub color: ColorId,
    pub degree: usize,
}

/// The largest number of same-colored edges at a single vertex.
/// Ties go to the smallest vertex, then the smallest color id.
pub fn max_monochromatic_degree(g: &EdgeColoring) -> MonochromaticDegree {
    let mut best = MonochromaticDegree {
        vertex: 0,
        color: ColorId(0),
        degree: 0,
    };
    let mut counts = vec![0usize; g.palette_size()];
    for v in 0..g.n() {
        counts.iter_mut().for_each(|c| *c = 0);
        for u in (0..g.n()).filter(|&u| u != v) {
            counts[g.color(u, v).index()] += 1;
        }
        for (c, &d) in counts.iter().enumerate() {
            if d > best.degree {
                best = MonochromaticDegree {
                    vertex: v,
                    color: ColorId(c as u32),
                    degree: d,
                };
            }
        }
    }
    best
}
