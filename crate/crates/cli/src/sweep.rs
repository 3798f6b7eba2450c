//! Seeded threshold experiments.
//!
//! CSV columns: `c,seeds,violations,frequency,min_colors_min,min_colors_mean`.
//! Trial `s` of palette size `c` colors `K_n` from seed `seed + s` and, in
//! sampled mode, draws its k-subsets from the same seed.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use locallab_core::coloring::{check_local_property_with, random_coloring};
use locallab_core::{Budget, CheckMode};
use rayon::prelude::*;
use serde::Serialize;

use crate::Outcome;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// Every edge colored uniformly from `0..c`.
    Random,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepFamily::Random)]
    family: SweepFamily,
    #[arg(long)]
    n: usize,
    /// Palette sizes: `40`, `30..120` (inclusive), `30..120:10` or `10,20,40`.
    #[arg(long)]
    c: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Trials per palette size.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random k-subsets examined per trial.
    #[arg(long, default_value_t = 20_000)]
    trials: u64,
    /// Enumerate every k-subset instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub c: u32,
    pub seeds: u64,
    pub violations: u64,
    pub frequency: f64,
    pub min_colors_min: usize,
    pub min_colors_mean: f64,
}

pub fn parse_palettes(text: &str) -> anyhow::Result<Vec<u32>> {
    let text = text.trim();
    let num = |s: &str| -> anyhow::Result<u32> {
        s.trim().parse::<u32>().with_context(|| format!("{s:?} is not a palette size"))
    };
    let values: Vec<u32> = if let Some((lo, rest)) = text.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (num(hi)?, num(step)?),
            None => (num(rest)?, 1),
        };
        let lo = num(lo)?;
        if step == 0 || lo > hi {
            bail!("empty palette range {text:?}");
        }
        (lo..=hi).step_by(step as usize).collect()
    } else {
        text.split(',').map(num).collect::<anyhow::Result<_>>()?
    };
    if values.contains(&0) {
        bail!("palette sizes must be positive");
    }
    Ok(values)
}

/// Runs every trial in parallel and aggregates in palette order.
pub fn sweep_rows(
    n: usize,
    palettes: &[u32],
    k: usize,
    l: usize,
    seeds: u64,
    first_seed: u64,
    mode: Option<u64>,
    budget: &Budget,
) -> anyhow::Result<Vec<SweepRow>> {
    if seeds == 0 {
        bail!("at least one seed is needed");
    }
    let jobs: Vec<(u32, u64)> = palettes
        .iter()
        .flat_map(|&c| (0..seeds).map(move |s| (c, first_seed + s)))
        .collect();
    let results: Vec<locallab_core::Result<(bool, usize)>> = jobs
        .par_iter()
        .map(|&(c, seed)| {
            let g = random_coloring(n, c, seed)?;
            let check = match mode {
                Some(trials) => CheckMode::Sampled { trials, seed },
                None => CheckMode::Exhaustive,
            };
            let v = check_local_property_with(&g, k, l, check, budget)?;
            Ok((v.holds, v.min_colors_seen))
        })
        .collect();
    let mut rows = Vec::with_capacity(palettes.len());
    for (i, &c) in palettes.iter().enumerate() {
        let chunk = &results[i * seeds as usize..(i + 1) * seeds as usize];
        let mut violations = 0;
        let mut min = usize::MAX;
        let mut sum = 0usize;
        for r in chunk {
            let (holds, seen) = r.clone()?;
            violations += u64::from(!holds);
            min = min.min(seen);
            sum += seen;
        }
        rows.push(SweepRow {
            c,
            seeds,
            violations,
            frequency: violations as f64 / seeds as f64,
            min_colors_min: min,
            min_colors_mean: sum as f64 / seeds as f64,
        });
    }
    Ok(rows)
}

pub fn run(args: &SweepArgs, budget: &Budget) -> anyhow::Result<Outcome> {
    let SweepFamily::Random = args.family;
    let palettes = parse_palettes(&args.c)?;
    let mode = (!args.exhaustive).then_some(args.trials);
    let rows = sweep_rows(args.n, &palettes, args.k, args.l, args.seeds, args.seed, mode, budget)?;

    println!(
        "n = {}, k = {}, l = {}, {} seeds from {}, {}",
        args.n,
        args.k,
        args.l,
        args.seeds,
        args.seed,
        match mode {
            Some(t) => format!("{t} sampled subsets per trial"),
            None => "exhaustive".to_owned(),
        }
    );
    println!("{:>6} {:>10} {:>10} {:>8} {:>8}", "c", "violations", "frequency", "min", "mean");
    for r in &rows {
        println!(
            "{:>6} {:>10} {:>10.4} {:>8} {:>8.3}",
            r.c, r.violations, r.frequency, r.min_colors_min, r.min_colors_mean
        );
    }
    if let Some(path) = &args.out {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
        println!("csv written to {}", path.display());
    }
    Ok(Outcome::Clean)
}
