use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use locallab_core::arithmetic::{behrend_construction, coloring_from_set, difference_set, is_3ap_free, RealSet};
use locallab_core::budget::binomial;
use locallab_core::certificate::{self, Certificate};
use locallab_core::coloring::{check_local_property_with, min_colors_over_k_subsets_with, ColorId, ColorLabel};
use locallab_core::energy::{energy_bruteforce_with, energy_lower_bound, holder_check, implied_color_lower_bound};
use locallab_core::energy_graph::{build_second_energy_graph_with, prune_diagonal, EnergyGraph};
use locallab_core::forbidden::{
    self, arithmetic_pipeline, clique_from_cycle_arith, cycles, second_energy_pipeline, third_energy_pipeline,
    witness_from_cycle_2nd, witness_from_cycle_3rd, THIRD_ENERGY_CYCLE,
};
use locallab_core::oracle::{exact_f_with, exact_g_integers_with, upper_bound_exponent};
use locallab_core::{Budget, CheckMode, EdgeColoring, Error};

use crate::io::{load_certificate, load_coloring, load_set, write_certificate, write_json, write_text};
use crate::{GraphArgs, Outcome, Preset};

fn found_if(hit: bool) -> Outcome {
    if hit {
        Outcome::Found
    } else {
        Outcome::Clean
    }
}

pub fn check(
    input: &Path,
    k: usize,
    l: usize,
    sampled: Option<u64>,
    seed: u64,
    cert: Option<&Path>,
    budget: &Budget,
) -> anyhow::Result<Outcome> {
    let g = load_coloring(input)?;
    let mode = match sampled {
        Some(trials) => CheckMode::Sampled { trials, seed },
        None => CheckMode::Exhaustive,
    };
    let verdict = check_local_property_with(&g, k, l, mode, budget)?;
    let witness = verdict.witness.clone().unwrap_or_default();
    println!("n = {}, colors = {}, k = {k}, l = {l}", g.n(), g.palette_size());
    match mode {
        CheckMode::Exhaustive => println!("mode: exhaustive"),
        CheckMode::Sampled { trials, seed } => println!("mode: sampled ({trials} trials, seed {seed})"),
    }
    println!("fewest colors on a {k}-set: {} at {witness:?}", verdict.min_colors_seen);
    if verdict.holds {
        println!("property holds{}", if sampled.is_some() { " on every sampled set" } else { "" });
        return Ok(Outcome::Clean);
    }
    println!("property refuted: {witness:?} spans {} < {l} colors", verdict.min_colors_seen);
    if let Some(c) = Certificate::from_verdict(&g, k, l, &verdict) {
        write_certificate(cert, &c)?;
    }
    Ok(Outcome::Found)
}

pub fn energy(input: &Path, r: u32, brute: bool, budget: &Budget) -> anyhow::Result<Outcome> {
    let g = load_coloring(input)?;
    let n = g.n() as u64;
    let colors = g.palette_size() as u64;
    let e = locallab_core::energy::energy(&g, r)?;
    println!("n = {n}, colors = {colors}, r = {r}");
    println!("energy: {}", e.value);
    if brute {
        let b = energy_bruteforce_with(&g, r, budget)?;
        println!("brute force: {} ({})", b.value, if b == e { "agrees" } else { "DISAGREES" });
        if b != e {
            bail!("closed form and brute force disagree");
        }
    }
    let lower = energy_lower_bound(n, colors, r)?;
    println!("lower bound (n(n-1))^r / |C|^(r-1): {lower} ≈ {:.6}", lower.to_f64());
    let implied = implied_color_lower_bound(n, r, &e)?;
    println!(
        "implied |C|^{} ≥ {} ≈ {:.6}, so |C| ≥ {}",
        implied.root,
        implied.bound,
        implied.bound.to_f64(),
        implied.min_colors()
    );
    let (ok, tight) = holder_check(&g, r)?;
    println!("Hölder inequality: {}{}", if ok { "holds" } else { "FAILS" }, if tight { " with equality" } else { "" });
    Ok(Outcome::Clean)
}

/// The coloring (or the set's difference coloring) and the preset graphs.
pub struct Built {
    pub coloring: EdgeColoring,
    pub set: Option<RealSet>,
    pub graphs: Vec<(String, EnergyGraph)>,
}

pub fn build(args: &GraphArgs, budget: &Budget) -> anyhow::Result<Built> {
    if args.preset == Preset::Thm4 {
        let path = args.set.as_deref().context("preset thm4 needs --set")?;
        let set = load_set(path)?;
        let (_, classes) = arithmetic_pipeline(&set, args.r, args.seed, args.rare, budget)?;
        return Ok(Built {
            coloring: coloring_from_set(&set)?,
            set: Some(set),
            graphs: classes.into_iter().map(|(s, g)| (s.to_string(), g)).collect(),
        });
    }
    let path = args.input.as_deref().context("this preset needs --input")?;
    let g = load_coloring(path)?;
    let eg = match args.preset {
        Preset::Raw => prune_diagonal(&build_second_energy_graph_with(&g, budget)?)?,
        Preset::Thm2 => second_energy_pipeline(&g, args.k, budget)?,
        Preset::Thm3 => third_energy_pipeline(&g, args.seed, budget)?,
        Preset::Thm4 => unreachable!(),
    };
    Ok(Built {
        coloring: g,
        set: None,
        graphs: vec![(format!("{:?}", args.preset).to_lowercase(), eg)],
    })
}

fn describe(name: &str, eg: &EnergyGraph) {
    println!(
        "{name}: r = {}, vertices = {}, edges = {}",
        eg.r(),
        eg.vertex_count(),
        eg.edge_count()
    );
    for stage in eg.provenance() {
        println!("  {}", serde_json::to_string(stage).expect("stages serialize"));
    }
}

pub fn energy_graph(args: &GraphArgs, export: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let built = build(args, budget)?;
    for (name, eg) in &built.graphs {
        describe(name, eg);
    }
    if let Some(path) = export {
        let map: BTreeMap<&str, _> = built
            .graphs
            .iter()
            .map(|(name, eg)| (name.as_str(), eg.export(&built.coloring)))
            .collect();
        write_json(path, &map)?;
        println!("graph written to {}", path.display());
    }
    Ok(Outcome::Clean)
}

pub fn find_cycles(args: &GraphArgs, length: usize, limit: usize, budget: &Budget) -> anyhow::Result<Outcome> {
    let built = build(args, budget)?;
    let mut total = 0;
    for (name, eg) in &built.graphs {
        let found = cycles(&eg.to_simple(), length, limit)?;
        println!("{name}: {} cycle(s) of length {length}{}", found.len(), if found.len() == limit { " (limit reached)" } else { "" });
        for c in &found {
            let tuples: Vec<Vec<usize>> = c.vertices.iter().map(|&v| eg.tuple(v)).collect();
            println!("  {tuples:?}");
        }
        total += found.len();
    }
    Ok(found_if(total > 0))
}

fn colors_to_scan(g: &EdgeColoring, label: Option<&str>) -> anyhow::Result<Vec<ColorId>> {
    let Some(raw) = label else {
        return Ok(g.palette().collect());
    };
    let parsed = raw.parse::<i64>().map(ColorLabel::Int).ok();
    parsed
        .and_then(|l| g.color_by_label(&l))
        .or_else(|| g.color_by_label(&ColorLabel::from(raw)))
        .map(|c| vec![c])
        .with_context(|| format!("color {raw:?} does not occur in the coloring"))
}

pub fn find_kst(input: &Path, s: usize, t: usize, color: Option<&str>, cert: Option<&Path>) -> anyhow::Result<Outcome> {
    let g = load_coloring(input)?;
    for c in colors_to_scan(&g, color)? {
        if let Some(b) = forbidden::find_complete_bipartite(&g, c, s, t)? {
            println!("K_{{{s},{t}}} in color {}: {:?} x {:?}", g.label(c), b.side_s, b.side_t);
            write_certificate(cert, &Certificate::from_complete_bipartite(g.label(c).clone(), &b))?;
            return Ok(Outcome::Found);
        }
    }
    println!("no monochromatic K_{{{s},{t}}}");
    Ok(Outcome::Clean)
}

pub fn find_subdivision(input: &Path, t: usize, color: Option<&str>, cert: Option<&Path>) -> anyhow::Result<Outcome> {
    let g = load_coloring(input)?;
    for c in colors_to_scan(&g, color)? {
        if let Some(h) = forbidden::find_subdivision(&g, c, t)? {
            println!("subdivided K_{t} in color {}: branch {:?}", g.label(c), h.branch);
            for (i, j, w) in &h.midpoints {
                println!("  {i} - {w} - {j}");
            }
            write_certificate(cert, &Certificate::from_subdivision(g.label(c).clone(), &h))?;
            return Ok(Outcome::Found);
        }
    }
    println!("no monochromatic subdivision of K_{t}");
    Ok(Outcome::Clean)
}

/// Extraction failures that only rule out the current cycle.
fn skippable(e: &Error) -> bool {
    matches!(e, Error::Corrupted(_) | Error::InsufficientPadding { .. })
}

pub fn witness(args: &GraphArgs, limit: usize, cert: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let built = build(args, budget)?;
    let g = &built.coloring;
    let length = match args.preset {
        Preset::Raw | Preset::Thm2 => {
            if args.k < 8 || !args.k.is_multiple_of(4) {
                bail!("k = {} must be a multiple of 4 and at least 8", args.k);
            }
            args.k / 2
        }
        Preset::Thm3 => THIRD_ENERGY_CYCLE,
        Preset::Thm4 => 2 * args.k,
    };
    let mut rejected = 0;
    for (name, eg) in &built.graphs {
        for cycle in cycles(&eg.to_simple(), length, limit)? {
            let attempt = match (args.preset, &built.set) {
                (Preset::Thm4, Some(set)) => clique_from_cycle_arith(eg, &cycle, args.k, set).map(|w| {
                    println!(
                        "{name}: clique on base elements {:?}, {} listed equalities, |S-S| deficiency {}",
                        w.base_vertices, w.repetitions, w.verified_deficiency
                    );
                    Certificate::from_clique(&w)
                }),
                (Preset::Thm3, _) => witness_from_cycle_3rd(g, eg, &cycle).map(|w| report_set(g, name, &w)),
                _ => witness_from_cycle_2nd(g, eg, &cycle, args.k).map(|w| report_set(g, name, &w)),
            };
            match attempt {
                Ok(c) => {
                    let report = certificate::verify(&c, Some(g), budget)?;
                    println!("verified: {}", report.detail);
                    write_certificate(cert, &c)?;
                    return Ok(Outcome::Found);
                }
                Err(e) if skippable(&e) => rejected += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    println!("no witness: {rejected} cycle(s) of length {length} rejected by the extractor");
    Ok(Outcome::Clean)
}

fn report_set(g: &EdgeColoring, name: &str, w: &forbidden::WitnessSet) -> Certificate {
    println!(
        "{name}: {}-set {:?} with {} claimed repetitions, deficiency {}",
        w.target_k, w.vertices, w.claimed_repetitions, w.verified_deficiency
    );
    Certificate::from_witness(g, w)
}

pub fn oracle_f(n: usize, k: usize, l: usize, cert: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let res = exact_f_with(n, k, l, budget)?;
    println!("f({n}, {k}, {l}) = {}", res.value);
    for level in &res.stats.levels {
        println!(
            "  {} colors: {} nodes, {}",
            level.bound,
            level.nodes,
            if level.found { "found" } else { "exhausted" }
        );
    }
    println!("witness: {}", serde_json::to_string(&res.witness.to_file())?);
    let reference = upper_bound_exponent(n as u64, k, l)?;
    println!(
        "growth reference n^({}/{}) = {:.3} (constant-free, not a bound)",
        reference.exponent_numer, reference.exponent_denom, reference.reference
    );
    write_certificate(cert, &Certificate::from_oracle_f(k, l, &res))?;
    Ok(Outcome::Clean)
}

pub fn oracle_g(n: usize, k: usize, l: usize, max: u64, cert: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let res = exact_g_integers_with(n, k, l, max, budget)?;
    println!("g({n}, {k}, {l}) over subsets of {{0, ..., {max}}} = {}", res.value);
    println!("search nodes: {}", res.stats.nodes);
    println!("witness: {}", res.witness);
    write_certificate(cert, &Certificate::from_oracle_g(k, l, max, &res))?;
    Ok(Outcome::Clean)
}

pub fn behrend(n: usize, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let b = behrend_construction(n)?;
    let max = b.set.numerators().last().copied().unwrap_or(0);
    println!("n = {n}, m = {}, d = {}, base = {}, radius² = {}, shell = {}", b.m, b.d, b.base, b.radius_sq, b.shell_size);
    println!("largest element: {max}");
    if n >= 2 {
        println!("|A - A| = {}", difference_set(&b.set)?.len());
    }
    let free = is_3ap_free(&b.set);
    println!("3-AP free: {free}");
    if !free {
        bail!("construction produced a 3-term progression");
    }
    if let Some(p) = out {
        write_text(p, &b.set.to_json())?;
        println!("set written to {}", p.display());
    }
    Ok(Outcome::Clean)
}

pub fn diffset(path: &Path, k: Option<usize>, out: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let set = load_set(path)?;
    let n = set.len();
    let d = difference_set(&set)?;
    let pairs = binomial(n as u64, 2);
    println!("|A| = {n}, |A - A| = {} of {pairs} pairs, {} repeated", d.len(), pairs - d.len() as u128);
    println!("3-AP free: {}", is_3ap_free(&set));
    if let Some(k) = k {
        let g = coloring_from_set(&set)?;
        let (min, witness) = min_colors_over_k_subsets_with(&g, k, budget)?;
        let chosen: Vec<String> = witness.iter().map(|&i| set.element(i).to_string()).collect();
        println!("smallest |B - B| over {k}-subsets: {min} at {{{}}}", chosen.join(", "));
    }
    if let Some(p) = out {
        write_json(p, &d.to_file())?;
        println!("difference set written to {}", p.display());
    }
    Ok(Outcome::Clean)
}

pub fn verify(cert_path: &Path, input: Option<&Path>, set: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let cert = load_certificate(cert_path)?;
    let coloring = match (input, set) {
        (Some(_), Some(_)) => bail!("pass either --input or --set, not both"),
        (Some(p), None) => Some(load_coloring(p)?),
        (None, Some(p)) => Some(coloring_from_set(&load_set(p)?)?),
        (None, None) => None,
    };
    match certificate::verify(&cert, coloring.as_ref(), budget) {
        Ok(report) => {
            println!("{} certificate accepted: {}", report.kind, report.detail);
            Ok(Outcome::Clean)
        }
        Err(Error::WitnessRejected(why)) => {
            println!("{} certificate REJECTED: {why}", cert.kind());
            Ok(Outcome::Found)
        }
        Err(e) => Err(e.into()),
    }
}

