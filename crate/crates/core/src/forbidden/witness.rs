//! Turning cycles in energy graphs into vertex sets that span few colors.
//!
//! Every extractor replays the counting argument step by step, then
//! recomputes the true deficiency `C(|S|, 2) − colors(S)` and refuses to
//! return a set whose deficiency falls short of the claimed tally.

use serde::{Deserialize, Serialize};

use super::CyclePath;
use crate::arithmetic::RealSet;
use crate::budget::binomial;
use crate::coloring::{ColorId, EdgeColoring};
use crate::energy_graph::{edge_signs, log_threshold, EnergyGraph, PruneStage, Sign, SignSequence};
use crate::error::{Error, Result};

pub const THIRD_ENERGY_K: usize = 24;
pub const THIRD_ENERGY_REPETITIONS: usize = 16;
pub const THIRD_ENERGY_CYCLE: usize = 8;

/// What one step of the replay contributed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub new_vertices: usize,
    pub repetitions: usize,
    pub padding: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    /// Sorted.
    pub vertices: Vec<usize>,
    pub claimed_repetitions: usize,
    pub target_k: usize,
    /// `C(k, 2)` minus the colors actually spanned.
    pub verified_deficiency: usize,
    pub steps: Vec<StepRecord>,
    /// Smallest-id vertices added at the end to reach `target_k`.
    pub filler: Vec<usize>,
}

/// `C(|S|, 2) − colors(S)`.
pub fn deficiency(g: &EdgeColoring, vertices: &[usize]) -> usize {
    binomial(vertices.len() as u64, 2) as usize - g.colors_spanned(vertices)
}

fn check_cycle_in(eg: &EnergyGraph, cycle: &CyclePath) -> Result<()> {
    let m = cycle.len();
    let mut sorted = cycle.vertices.clone();
    sorted.sort_unstable();
    if m < 3 || sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::WitnessRejected("not a simple cycle".into()));
    }
    if let Some(&v) = sorted.last().filter(|&&v| v >= eg.vertex_count()) {
        return Err(Error::WitnessRejected(format!("vertex {v} is not in the energy graph")));
    }
    for j in 0..m {
        let (u, v) = (cycle.vertices[j], cycle.vertices[(j + 1) % m]);
        if eg.edge_between(u, v).is_none() {
            return Err(Error::WitnessRejected(format!(
                "{:?} – {:?} is not an energy edge",
                eg.tuple(u),
                eg.tuple(v)
            )));
        }
    }
    Ok(())
}

struct Builder<'a> {
    g: &'a EdgeColoring,
    in_s: Vec<bool>,
    /// Base vertices of the cycle; padding avoids them when it can.
    reserved: Vec<bool>,
    order: Vec<usize>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a EdgeColoring, tuples: &[Vec<usize>]) -> Self {
        let mut reserved = vec![false; g.n()];
        tuples.iter().flatten().for_each(|&v| reserved[v] = true);
        Builder {
            g,
            in_s: vec![false; g.n()],
            reserved,
            order: Vec::new(),
        }
    }

    /// Adds the vertices, returning how many were new.
    fn add(&mut self, vertices: &[usize]) -> usize {
        let mut fresh = 0;
        for &v in vertices {
            if !self.in_s[v] {
                self.in_s[v] = true;
                self.order.push(v);
                fresh += 1;
            }
        }
        fresh
    }

    /// First edge of `color` with both endpoints outside S, preferring
    /// edges that also avoid the cycle's base vertices.
    fn padding_edge(&mut self, color: ColorId) -> Option<(usize, usize)> {
        let class = self.g.color_class(color);
        let free = |v: usize, strict: bool| !self.in_s[v] && !(strict && self.reserved[v]);
        let edge = [true, false]
            .into_iter()
            .find_map(|strict| class.iter().copied().find(|&(u, v)| free(u, strict) && free(v, strict)))?;
        self.add(&[edge.0, edge.1]);
        Some(edge)
    }

    fn fill_to(&mut self, k: usize) -> Result<Vec<usize>> {
        if self.order.len() > k {
            return Err(Error::WitnessRejected(format!(
                "the replay placed {} vertices, more than k = {k}",
                self.order.len()
            )));
        }
        let mut filler = Vec::new();
        for v in 0..self.g.n() {
            if self.order.len() == k {
                break;
            }
            if self.add(&[v]) == 1 {
                filler.push(v);
            }
        }
        if self.order.len() < k {
            return Err(Error::Precondition(format!("the coloring has fewer than k = {k} vertices")));
        }
        Ok(filler)
    }

    fn finish(mut self, k: usize, claimed: usize, steps: Vec<StepRecord>) -> Result<WitnessSet> {
        let filler = self.fill_to(k)?;
        let mut vertices = self.order;
        vertices.sort_unstable();
        let verified = deficiency(self.g, &vertices);
        if verified < claimed {
            return Err(Error::WitnessRejected(format!(
                "S spans {} colors, so its deficiency {verified} is below the claimed {claimed}",
                self.g.colors_spanned(&vertices)
            )));
        }
        Ok(WitnessSet {
            vertices,
            claimed_repetitions: claimed,
            target_k: k,
            verified_deficiency: verified,
            steps,
            filler,
        })
    }
}

/// Replays the second-energy argument on a cycle of length `k/2`.
///
/// Step j adds `a_j, b_j`; it brings the repetition
/// `χ(a_j, a_{j+1}) = χ(b_j, b_{j+1})` unless both were already in S. Each
/// such step is paid for with one edge of color `χ(a_1, a_2)` outside S.
pub fn witness_from_cycle_2nd(g: &EdgeColoring, eg: &EnergyGraph, cycle: &CyclePath, k: usize) -> Result<WitnessSet> {
    if eg.r() != 2 {
        return Err(Error::Precondition(format!("expected a second energy graph, got r = {}", eg.r())));
    }
    if k < 4 || !k.is_multiple_of(4) {
        return Err(Error::invalid(format!("k = {k} must be a positive multiple of 4")));
    }
    if cycle.len() != k / 2 {
        return Err(Error::Precondition(format!("cycle length {} is not k/2 = {}", cycle.len(), k / 2)));
    }
    check_cycle_in(eg, cycle)?;
    let tuples: Vec<Vec<usize>> = cycle.vertices.iter().map(|&v| eg.tuple(v)).collect();
    let mut builder = Builder::new(g, &tuples);
    let mut steps = Vec::with_capacity(tuples.len());
    let mut stale = 0;
    for t in &tuples {
        let fresh = builder.add(t);
        let both_seen = fresh == 0;
        stale += usize::from(both_seen);
        steps.push(StepRecord {
            new_vertices: fresh,
            repetitions: usize::from(!both_seen),
            padding: None,
        });
    }
    let color = g.color(tuples[0][0], tuples[1][0]);
    let mut stale_steps = steps.iter_mut().filter(|s| s.repetitions == 0);
    for placed in 0..stale {
        let edge = builder.padding_edge(color).ok_or(Error::InsufficientPadding { deficit: stale - placed })?;
        let step = stale_steps.next().expect("one stale step per padding edge");
        step.padding = Some(edge);
        step.repetitions = 1;
    }
    builder.finish(k, k / 2, steps)
}

/// Replays the third-energy argument on an 8-cycle: 24 vertices and at
/// least 16 repetitions.
///
/// A step with two or three new vertices brings two repetitions from
/// `χ(a_j, a_{j+1}) = χ(b_j, b_{j+1}) = χ(c_j, c_{j+1})`. A step with one new
/// vertex brings one, plus one from a padding edge of color `χ(a_1, a_2)`.
/// A step with no new vertex (which the pruning is meant to rule out)
/// only gets the padding edge.
pub fn witness_from_cycle_3rd(g: &EdgeColoring, eg: &EnergyGraph, cycle: &CyclePath) -> Result<WitnessSet> {
    if eg.r() != 3 {
        return Err(Error::Precondition(format!("expected a third energy graph, got r = {}", eg.r())));
    }
    if cycle.len() != THIRD_ENERGY_CYCLE {
        return Err(Error::Precondition(format!("cycle length {} is not 8", cycle.len())));
    }
    if !eg.provenance().iter().any(|s| matches!(s, PruneStage::HalveParts { .. })) {
        return Err(Error::Precondition("the parts were not halved".into()));
    }
    if !eg.satisfies_coordinate_neighbor_property() {
        return Err(Error::Precondition("two neighbors of a vertex share a coordinate".into()));
    }
    let threshold = log_threshold(g.n());
    if let Some(e) = eg.edges().iter().find(|e| eg.class_sizes()[e.color.index()] < threshold) {
        return Err(Error::Precondition(format!(
            "color {} has {} base edges, fewer than {threshold}",
            g.label(e.color),
            eg.class_sizes()[e.color.index()]
        )));
    }
    check_cycle_in(eg, cycle)?;
    let tuples: Vec<Vec<usize>> = cycle.vertices.iter().map(|&v| eg.tuple(v)).collect();
    let color = g.color(tuples[0][0], tuples[1][0]);
    let mut builder = Builder::new(g, &tuples);
    let mut steps = Vec::with_capacity(THIRD_ENERGY_CYCLE);
    let mut claimed = 0;
    for t in &tuples {
        let fresh = builder.add(t);
        let mut step = StepRecord {
            new_vertices: fresh,
            repetitions: fresh.min(2),
            padding: None,
        };
        if fresh < 2 {
            let edge = builder.padding_edge(color).ok_or(Error::InsufficientPadding { deficit: 1 })?;
            step.padding = Some(edge);
            step.repetitions += 1;
        }
        claimed += step.repetitions;
        steps.push(step);
    }
    builder.finish(THIRD_ENERGY_K, claimed, steps)
}

/// `|A[left.0] − A[left.1]| = |A[right.0] − A[right.1]|`, by element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceEquality {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl DifferenceEquality {
    pub fn holds(&self, set: &RealSet) -> bool {
        let d = |(a, b): (usize, usize)| (set.numerator(a) - set.numerator(b)).abs();
        self.left.0 != self.left.1 && self.right.0 != self.right.1 && d(self.left) == d(self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    /// The 2k cycle tuples, pairwise adjacent after telescoping.
    pub clique: Vec<Vec<usize>>,
    /// All 2kr base elements, cycle position first then coordinate.
    pub base_vertices: Vec<usize>,
    pub signs: SignSequence,
    /// Number of listed equalities, `C(2k, 2)·(r − 1 + C(r, 2))`.
    pub repetitions: usize,
    pub equalities: Vec<DifferenceEquality>,
    /// `C(2kr, 2) − |S − S|`, which can be smaller than `repetitions`
    /// because the listed equalities need not involve distinct differences.
    pub verified_deficiency: usize,
}

fn sign_value(s: Sign) -> i128 {
    match s {
        Sign::Plus => 1,
        Sign::Minus => -1,
    }
}

/// Telescopes a 2k-cycle of one sign class into a clique and lists, for
/// each pair of cycle positions, the `r − 1` direct and `C(r, 2)`
/// regrouped difference equalities.
pub fn clique_from_cycle_arith(sub: &EnergyGraph, cycle: &CyclePath, k: usize, set: &RealSet) -> Result<CliqueWitness> {
    let r = sub.r();
    if k < 2 || cycle.len() != 2 * k {
        return Err(Error::Precondition(format!("cycle length {} is not 2k = {}", cycle.len(), 2 * k)));
    }
    if set.len() != sub.base_n() {
        return Err(Error::invalid("the set does not match the energy graph"));
    }
    check_cycle_in(sub, cycle)?;
    let m = cycle.len();
    let mut signs: Option<SignSequence> = None;
    for j in 0..m {
        let e = sub.edge_between(cycle.vertices[j], cycle.vertices[(j + 1) % m]).expect("checked above");
        let s = edge_signs(sub, set, e)?;
        match &signs {
            None => signs = Some(s),
            Some(prev) if *prev != s => {
                return Err(Error::Corrupted(format!("cycle mixes sign classes {prev} and {s}")));
            }
            Some(_) => {}
        }
    }
    let signs = signs.expect("cycle is non-empty");
    if let Some(PruneStage::SignClass { signs: class }) = sub.provenance().last() {
        if *class != signs {
            return Err(Error::Corrupted(format!("cycle has signs {signs} inside class {class}")));
        }
    }

    let tuples: Vec<Vec<usize>> = cycle.vertices.iter().map(|&v| sub.tuple(v)).collect();
    let value = |v: usize| set.numerator(v);
    let sign = |l: usize| sign_value(signs.relative(l));
    for j1 in 0..m {
        for j2 in j1 + 1..m {
            let base = value(tuples[j1][0]) - value(tuples[j2][0]);
            for l in 1..r {
                if base != sign(l) * (value(tuples[j1][l]) - value(tuples[j2][l])) {
                    return Err(Error::Corrupted(format!(
                        "positions {j1} and {j2} fail the telescoped equality in coordinate {l}"
                    )));
                }
            }
        }
    }
    let base_vertices: Vec<usize> = tuples.iter().flatten().copied().collect();
    let mut sorted = base_vertices.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Corrupted(format!("base element {} appears twice", w[0])));
    }

    let mut equalities = Vec::new();
    for j1 in 0..m {
        for j2 in j1 + 1..m {
            let (x, y) = (&tuples[j1], &tuples[j2]);
            for l in 1..r {
                equalities.push(DifferenceEquality {
                    left: (x[0], y[0]),
                    right: (x[l], y[l]),
                });
            }
            for l in 0..r {
                for l2 in l + 1..r {
                    equalities.push(if sign(l) == sign(l2) {
                        DifferenceEquality {
                            left: (x[l], x[l2]),
                            right: (y[l], y[l2]),
                        }
                    } else {
                        DifferenceEquality {
                            left: (x[l], y[l2]),
                            right: (y[l], x[l2]),
                        }
                    });
                }
            }
        }
    }
    if let Some(bad) = equalities.iter().find(|e| !e.holds(set)) {
        return Err(Error::Corrupted(format!("listed equality {bad:?} is false")));
    }
    let expected = binomial(m as u64, 2) as usize * (r - 1 + r * (r - 1) / 2);
    debug_assert_eq!(equalities.len(), expected);

    let mut diffs: Vec<i128> = Vec::new();
    for (i, &a) in sorted.iter().enumerate() {
        diffs.extend(sorted[i + 1..].iter().map(|&b| (value(a) - value(b)).abs()));
    }
    let pairs = diffs.len();
    diffs.sort_unstable();
    diffs.dedup();

    Ok(CliqueWitness {
        clique: tuples,
        base_vertices,
        signs,
        repetitions: equalities.len(),
        equalities,
        verified_deficiency: pairs - diffs.len(),
    })
}
