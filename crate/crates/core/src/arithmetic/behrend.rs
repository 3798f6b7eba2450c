//! Behrend's sphere construction of 3-AP-free sets.
//!
//! Points of `{0, …, d-1}^m` with a fixed squared norm are read as base
//! `2d - 1` numerals (plus one, to make them positive). Adding two numerals
//! never carries, so `x + z = 2y` forces the same relation coordinatewise,
//! and strict convexity of the sphere forces `x = y = z`.

use num_rational::Ratio;
use serde::Serialize;

use super::RealSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BehrendSet {
    /// Dimension.
    pub m: u32,
    /// Digits range over `0..d`.
    pub d: u64,
    pub base: u64,
    /// Squared radius of the chosen shell.
    pub radius_sq: u64,
    /// Points on the shell before truncation.
    pub shell_size: u64,
    #[serde(skip)]
    pub set: RealSet,
}

/// The `n` smallest elements of the best shell for the chosen `(m, d)`.
pub fn behrend_set(n: usize) -> Result<RealSet> {
    Ok(behrend_construction(n)?.set)
}

/// Tries `m = 2..=⌈√log₂ n⌉ + 2` and, for each, the smallest `d` whose
/// largest shell holds `n` points; keeps the pair with the smallest numeral
/// range `(2d-1)^m` (smaller `m` on ties).
pub fn behrend_construction(n: usize) -> Result<BehrendSet> {
    if n == 0 {
        return Err(Error::invalid("a Behrend set needs n ≥ 1"));
    }
    let target = n as u64;
    let max_m = ((n as f64).log2().max(0.0).sqrt().ceil() as u32) + 2;

    let mut best: Option<(u128, u32, u64, u64, u64)> = None;
    for m in (2..=max_m).rev() {
        // A shell holds at most d^{m-1} points (the last digit is forced).
        let mut d = (target as f64).powf(1.0 / (m - 1) as f64).floor().max(1.0) as u64;
        while pow_u128(d, m - 1) < target as u128 {
            d += 1;
        }
        loop {
            let range = match (2 * d as u128 - 1).checked_pow(m) {
                Some(v) => v,
                None => break,
            };
            if best.is_some_and(|(b, ..)| range > b) {
                break;
            }
            if let Some((radius_sq, size)) = largest_shell(m, d, target) {
                if best.is_none_or(|(b, ..)| range <= b) {
                    best = Some((range, m, d, radius_sq, size));
                }
                break;
            }
            d += 1;
        }
    }
    let (_, m, d, radius_sq, shell_size) = best.expect("d = n^{1/(m-1)} large enough always succeeds");
    let base = 2 * d - 1;

    let mut values = Vec::with_capacity(shell_size as usize);
    let mut digits = vec![0u64; m as usize];
    shell_points(d, radius_sq, 0, &mut digits, &mut |digits| {
        let mut x: u128 = 0;
        for &dig in digits.iter().rev() {
            x = x * base as u128 + dig as u128;
        }
        values.push(x as i128 + 1);
    });
    values.sort_unstable();
    values.truncate(n);
    let set = RealSet::from_rationals(values.into_iter().map(Ratio::from_integer))?;
    Ok(BehrendSet {
        m,
        d,
        base,
        radius_sq,
        shell_size,
        set,
    })
}

fn pow_u128(d: u64, e: u32) -> u128 {
    (d as u128).checked_pow(e).unwrap_or(u128::MAX)
}

/// The most populated squared radius (smallest on ties) if it holds at
/// least `target` points.
fn largest_shell(m: u32, d: u64, target: u64) -> Option<(u64, u64)> {
    let squares: Vec<usize> = (0..d as usize).map(|a| a * a).collect();
    let mut counts: Vec<u64> = vec![1];
    for step in 1..=m {
        let mut next = vec![0u64; counts.len() + squares[squares.len() - 1]];
        for (s, &c) in counts.iter().enumerate() {
            if c > 0 {
                for &sq in &squares {
                    next[s + sq] += c;
                }
            }
        }
        counts = next;
        // Each further digit can at most multiply a shell by d.
        let peak = *counts.iter().max().unwrap() as u128;
        if peak.saturating_mul(pow_u128(d, m - step)) < target as u128 {
            return None;
        }
    }
    let (radius_sq, &size) = counts
        .iter()
        .enumerate()
        .max_by(|(s1, c1), (s2, c2)| c1.cmp(c2).then(s2.cmp(s1)))
        .unwrap();
    (size >= target).then_some((radius_sq as u64, size))
}

fn shell_points(d: u64, remaining: u64, i: usize, digits: &mut [u64], visit: &mut impl FnMut(&[u64])) {
    if i == digits.len() {
        if remaining == 0 {
            visit(digits);
        }
        return;
    }
    let rest = (digits.len() - i - 1) as u64 * (d - 1) * (d - 1);
    for a in 0..d {
        let sq = a * a;
        if sq > remaining {
            break;
        }
        if remaining - sq > rest {
            continue;
        }
        digits[i] = a;
        shell_points(d, remaining - sq, i + 1, digits, visit);
    }
}
