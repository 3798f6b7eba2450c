//! The pruning sequences that precede witness extraction.

use std::collections::BTreeMap;

use crate::arithmetic::{coloring_from_set, RealSet};
use crate::budget::{binomial, Budget};
use crate::coloring::EdgeColoring;
use crate::energy_graph::{
    build_rth_energy_graph_with, build_second_energy_graph_with, halve_parts_prune, log_threshold,
    prune_coordinate_neighbors, prune_diagonal, prune_rare_colors, sign_decompose, EnergyGraph, SignSequence,
};
use crate::error::Result;
use crate::partition::seeded_balanced_partition;

/// `100k²`, capped at `C(n, 2)` so that a color spanning all of `K_n` is
/// never called rare.
pub fn second_energy_rare_threshold(n: usize, k: usize) -> usize {
    (100 * k * k).min(binomial(n as u64, 2) as usize)
}

/// Full second energy graph, diagonal pruning, rare-color pruning.
pub fn second_energy_pipeline(g: &EdgeColoring, k: usize, budget: &Budget) -> Result<EnergyGraph> {
    let eg = prune_diagonal(&build_second_energy_graph_with(g, budget)?)?;
    Ok(prune_rare_colors(&eg, second_energy_rare_threshold(g.n(), k)))
}

/// Balanced 3-partition from `seed`, rare colors (fewer than `⌈ln n⌉` base
/// edges), halving with `seed`, then greedy coordinate-neighbor pruning.
pub fn third_energy_pipeline(g: &EdgeColoring, seed: u64, budget: &Budget) -> Result<EnergyGraph> {
    let parts = seeded_balanced_partition(g.n(), 3, seed)?;
    let eg = build_rth_energy_graph_with(g, 3, &parts, budget)?;
    let eg = prune_rare_colors(&eg, log_threshold(g.n()));
    Ok(prune_coordinate_neighbors(&halve_parts_prune(&eg, seed)?))
}

/// The arithmetic r-th energy graph (balanced parts from `seed`, rare
/// colors pruned at `rare_threshold`) and its sign classes.
pub fn arithmetic_pipeline(
    set: &RealSet,
    r: usize,
    seed: u64,
    rare_threshold: usize,
    budget: &Budget,
) -> Result<(EnergyGraph, BTreeMap<SignSequence, EnergyGraph>)> {
    let g = coloring_from_set(set)?;
    let parts = seeded_balanced_partition(g.n(), r, seed)?;
    let eg = prune_rare_colors(&build_rth_energy_graph_with(&g, r, &parts, budget)?, rare_threshold);
    let classes = sign_decompose(&eg, set)?;
    Ok((eg, classes))
}
