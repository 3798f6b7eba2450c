//! r-th color energies and the Hölder lower bound on the palette size.
//!
//! `energy(g, r) = Σ_c m_c^r` counts ordered 2r-tuples `(a_1, …, a_2r)` with
//! `a_{2i-1} ≠ a_{2i}` whose r consecutive pairs all share one color. With
//! `Σ_c m_c = n(n-1)`, Hölder gives `energy · |C|^{r-1} ≥ (n(n-1))^r`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::{self, Budget};
use crate::coloring::{color_multiplicities, EdgeColoring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyValue {
    pub r: u32,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub value: BigUint,
}

/// Exact non-negative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundValue(pub BigRational);

impl BoundValue {
    fn new(numer: BigUint, denom: BigUint) -> Self {
        BoundValue(BigRational::new(numer.into(), denom.into()))
    }

    pub fn numerator(&self) -> BigUint {
        self.0.numer().to_biguint().expect("bounds are non-negative")
    }

    pub fn denominator(&self) -> BigUint {
        self.0.denom().to_biguint().expect("denominators are positive")
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn check_order(r: u32) -> Result<()> {
    if r < 2 {
        Err(Error::invalid(format!("energy order r = {r} must be at least 2")))
    } else {
        Ok(())
    }
}

/// Closed form `Σ_c m_c^r`.
pub fn energy(g: &EdgeColoring, r: u32) -> Result<EnergyValue> {
    check_order(r)?;
    let value = color_multiplicities(g)
        .multiplicity
        .iter()
        .map(|&m| BigUint::from(m).pow(r))
        .sum();
    Ok(EnergyValue { r, value })
}

/// Counts the 2r-tuples directly over `V^{2r}`.
pub fn energy_bruteforce(g: &EdgeColoring, r: u32) -> Result<EnergyValue> {
    energy_bruteforce_with(g, r, &Budget::default())
}

pub fn energy_bruteforce_with(g: &EdgeColoring, r: u32, budget: &Budget) -> Result<EnergyValue> {
    check_order(r)?;
    let n = g.n();
    let width = 2 * r as usize;
    let tuples = (n as u128).checked_pow(width as u32).unwrap_or(u128::MAX);
    budget::ensure("brute-force energy", tuples, budget.energy_tuples)?;

    let mut tuple = vec![0usize; width];
    let mut count: u128 = 0;
    'odometer: loop {
        let valid = tuple.chunks(2).all(|p| p[0] != p[1]) && {
            let first = g.color(tuple[0], tuple[1]);
            tuple.chunks(2).skip(1).all(|p| g.color(p[0], p[1]) == first)
        };
        if valid {
            count += 1;
        }
        for slot in tuple.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                continue 'odometer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(EnergyValue {
        r,
        value: BigUint::from(count),
    })
}

/// `n^r (n-1)^r / |C|^{r-1}`.
pub fn energy_lower_bound(n: u64, num_colors: u64, r: u32) -> Result<BoundValue> {
    check_order(r)?;
    if num_colors == 0 {
        return Err(Error::invalid("the palette must contain at least one color"));
    }
    let ordered_pairs = BigUint::from(n) * BigUint::from(n.saturating_sub(1));
    Ok(BoundValue::new(
        ordered_pairs.pow(r),
        BigUint::from(num_colors).pow(r - 1),
    ))
}

/// Rearranged Hölder bound `|C|^{root} ≥ bound` with `root = r - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpliedColorBound {
    pub bound: BoundValue,
    pub root: u32,
}

impl ImpliedColorBound {
    /// Smallest integer `c` with `c^root ≥ bound`.
    pub fn min_colors(&self) -> BigUint {
        let numer = self.bound.numerator();
        let denom = self.bound.denominator();
        let target = Integer::div_ceil(&numer, &denom);
        if target.is_zero() {
            return BigUint::zero();
        }
        let mut c = target.nth_root(self.root);
        while c.pow(self.root) < target {
            c += BigUint::one();
        }
        c
    }
}

pub fn implied_color_lower_bound(n: u64, r: u32, e: &EnergyValue) -> Result<ImpliedColorBound> {
    check_order(r)?;
    if e.value.is_zero() {
        return Err(Error::invalid("energy must be positive"));
    }
    let ordered_pairs = BigUint::from(n) * BigUint::from(n.saturating_sub(1));
    Ok(ImpliedColorBound {
        bound: BoundValue::new(ordered_pairs.pow(r), e.value.clone()),
        root: r - 1,
    })
}

/// Whether `energy · |C|^{r-1} ≥ (n(n-1))^r` holds for `g`, and whether it
/// is tight.
pub fn holder_check(g: &EdgeColoring, r: u32) -> Result<(bool, bool)> {
    let e = energy(g, r)?;
    let n = g.n() as u64;
    let lhs = e.value * BigUint::from(g.palette_size()).pow(r - 1);
    let rhs = (BigUint::from(n) * BigUint::from(n - 1)).pow(r);
    Ok((lhs >= rhs, lhs == rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::random_coloring;

    fn k4_matchings() -> EdgeColoring {
        EdgeColoring::new(4, [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)]).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let mono = EdgeColoring::monochromatic(3).unwrap();
        let rainbow = EdgeColoring::rainbow(3).unwrap();
        assert_eq!(energy(&mono, 2).unwrap().value, BigUint::from(36u32));
        assert_eq!(energy(&rainbow, 2).unwrap().value, BigUint::from(12u32));
        assert_eq!(energy(&mono, 3).unwrap().value, BigUint::from(216u32));
        assert!(energy(&mono, 1).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(energy_bruteforce(&EdgeColoring::rainbow(3).unwrap(), 2).unwrap().value, BigUint::from(12u32));
        assert_eq!(
            energy_bruteforce(&EdgeColoring::monochromatic(4).unwrap(), 2).unwrap().value,
            BigUint::from(144u32)
        );
        let err = energy_bruteforce_with(&EdgeColoring::rainbow(10).unwrap(), 3, &Budget::uniform(1000)).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn bruteforce_matches_closed_form_on_random_colorings() {
        for seed in 0..50 {
            let n = 3 + (seed as usize % 4);
            let g = random_coloring(n, 1 + (seed as u32 % 5), seed).unwrap();
            assert_eq!(energy(&g, 2).unwrap(), energy_bruteforce(&g, 2).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(energy_lower_bound(3, 3, 2).unwrap().to_string(), "12");
        assert_eq!(energy_lower_bound(3, 1, 2).unwrap().to_string(), "36");
        assert_eq!(energy_lower_bound(4, 3, 3).unwrap().to_string(), "192");
        assert_eq!(energy(&k4_matchings(), 3).unwrap().value, BigUint::from(192u32));
        assert_eq!(energy_lower_bound(4, 7, 2).unwrap().to_string(), "144/7");
        assert!(energy_lower_bound(3, 0, 2).is_err());
    }

    #[test]
    fn implied_bound_examples() {
        let e = |v: u32, r| EnergyValue { r, value: BigUint::from(v) };
        let b = implied_color_lower_bound(3, 2, &e(12, 2)).unwrap();
        assert_eq!((b.bound.to_string(), b.min_colors()), ("3".into(), BigUint::from(3u32)));
        let b = implied_color_lower_bound(3, 2, &e(36, 2)).unwrap();
        assert_eq!(b.bound.to_string(), "1");
        let b = implied_color_lower_bound(4, 3, &e(192, 3)).unwrap();
        assert_eq!((b.bound.to_string(), b.root, b.min_colors()), ("9".into(), 2, BigUint::from(3u32)));
        assert!(implied_color_lower_bound(4, 3, &e(0, 3)).is_err());
    }

    #[test]
    fn holder_is_tight_on_balanced_palettes() {
        assert_eq!(holder_check(&EdgeColoring::rainbow(3).unwrap(), 2).unwrap(), (true, true));
        assert_eq!(holder_check(&k4_matchings(), 3).unwrap(), (true, true));
        let skewed = EdgeColoring::new(3, [(0, 1, 0), (0, 2, 0), (1, 2, 1)]).unwrap();
        assert_eq!(holder_check(&skewed, 2).unwrap(), (true, false));
    }
}
