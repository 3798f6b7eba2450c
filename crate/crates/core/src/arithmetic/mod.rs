//! Finite sets of rationals, their positive difference sets, and the
//! colorings of `K_n` they induce (the color of `{a, a'}` is `|a - a'|`).
//!
//! A [`RealSet`] stores every element over one common denominator so that
//! differences, sums and comparisons are plain integer operations.

mod behrend;

pub use behrend::{behrend_construction, behrend_set, BehrendSet};

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coloring::{check_local_property, CheckMode, ColorLabel, EdgeColoring, PropertyVerdict};
use crate::error::{Error, Result};

/// An element as written in set files: an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberRepr {
    Int(i64),
    Str(String),
}

impl NumberRepr {
    pub fn parse(&self) -> Result<Ratio<i128>> {
        match self {
            NumberRepr::Int(v) => Ok(Ratio::from_integer(*v as i128)),
            NumberRepr::Str(s) => parse_rational(s),
        }
    }

    fn from_ratio(r: Ratio<i128>) -> Self {
        if r.is_integer() {
            if let Ok(v) = i64::try_from(*r.numer()) {
                return NumberRepr::Int(v);
            }
        }
        NumberRepr::Str(format_ratio(r))
    }
}

fn parse_rational(s: &str) -> Result<Ratio<i128>> {
    let bad = || Error::InvalidNumber(s.to_owned());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => s.parse::<i128>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

fn format_ratio(r: Ratio<i128>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// On-disk form: `{"elements": [ints or "p/q" strings]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSetFile {
    pub elements: Vec<NumberRepr>,
}

/// A strictly increasing list of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealSet {
    nums: Vec<i128>,
    den: i128,
}

impl RealSet {
    pub fn from_rationals(values: impl IntoIterator<Item = Ratio<i128>>) -> Result<Self> {
        let mut values: Vec<Ratio<i128>> = values.into_iter().collect();
        values.sort();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(format_ratio(w[0])));
        }
        let mut den: i128 = 1;
        for v in &values {
            let g = den.gcd(v.denom());
            den = (den / g)
                .checked_mul(*v.denom())
                .ok_or(Error::Overflow("taking a common denominator"))?;
        }
        let nums = values
            .iter()
            .map(|v| {
                v.numer()
                    .checked_mul(den / v.denom())
                    .ok_or(Error::Overflow("scaling to a common denominator"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RealSet { nums, den })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        RealSet::from_rationals(values.iter().map(|&v| Ratio::from_integer(v as i128)))
    }

    pub fn from_file(file: &RealSetFile) -> Result<Self> {
        RealSet::from_rationals(file.elements.iter().map(NumberRepr::parse).collect::<Result<Vec<_>>>()?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        RealSet::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> RealSetFile {
        RealSetFile {
            elements: self.elements().map(NumberRepr::from_ratio).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("set serializes")
    }

    pub fn len(&self) -> usize {
        self.nums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }

    /// Element `i` times the common denominator.
    pub fn numerator(&self, i: usize) -> i128 {
        self.nums[i]
    }

    pub fn numerators(&self) -> &[i128] {
        &self.nums
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn element(&self, i: usize) -> Ratio<i128> {
        Ratio::new(self.nums[i], self.den)
    }

    pub fn elements(&self) -> impl Iterator<Item = Ratio<i128>> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn contains(&self, value: Ratio<i128>) -> bool {
        let scaled = value * Ratio::from_integer(self.den);
        scaled.is_integer() && self.nums.binary_search(scaled.numer()).is_ok()
    }

    /// `s·A + t`, with `s > 0`.
    pub fn affine(&self, scale: Ratio<i128>, shift: Ratio<i128>) -> Result<RealSet> {
        if scale <= Ratio::from_integer(0) {
            return Err(Error::invalid("scale must be positive"));
        }
        RealSet::from_rationals(self.elements().map(|a| a * scale + shift))
    }

    /// The difference `|a_i − a_j|` as a color label.
    fn difference_label(&self, i: usize, j: usize) -> ColorLabel {
        let d = Ratio::new((self.nums[i] - self.nums[j]).abs(), self.den);
        match NumberRepr::from_ratio(d) {
            NumberRepr::Int(v) => ColorLabel::Int(v),
            NumberRepr::Str(s) => ColorLabel::Str(s),
        }
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_ratio(e))?;
        }
        f.write_str("}")
    }
}

/// Sorted distinct positive differences, over the source set's denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    nums: Vec<i128>,
    den: i128,
}

impl DifferenceSet {
    pub fn len(&self) -> usize {
        self.nums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = Ratio<i128>> + '_ {
        self.nums.iter().map(|&v| Ratio::new(v, self.den))
    }

    pub fn to_file(&self) -> RealSetFile {
        RealSetFile {
            elements: self.values().map(NumberRepr::from_ratio).collect(),
        }
    }
}

/// `A − A = { a − a' : a > a' }`.
pub fn difference_set(set: &RealSet) -> Result<DifferenceSet> {
    if set.len() < 2 {
        return Err(Error::invalid("a difference set needs at least 2 elements"));
    }
    let mut nums = Vec::with_capacity(set.len() * (set.len() - 1) / 2);
    for (i, &a) in set.nums.iter().enumerate() {
        nums.extend(set.nums[..i].iter().map(|&b| a - b));
    }
    nums.sort_unstable();
    nums.dedup();
    Ok(DifferenceSet { nums, den: set.den })
}

/// `K_{|A|}` with vertex `i` standing for the i-th smallest element.
pub fn coloring_from_set(set: &RealSet) -> Result<EdgeColoring> {
    EdgeColoring::from_fn(set.len(), |i, j| set.difference_label(i, j))
}

/// Whether every k-subset spans at least `l` distinct differences.
pub fn check_g_property(set: &RealSet, k: usize, l: usize) -> Result<PropertyVerdict> {
    check_local_property(&coloring_from_set(set)?, k, l, CheckMode::Exhaustive)
}

/// No distinct `x < y < z` in the set with `x + z = 2y`.
pub fn is_3ap_free(set: &RealSet) -> bool {
    let nums = &set.nums;
    for (i, &x) in nums.iter().enumerate() {
        for &z in &nums[i + 1..] {
            let sum = x + z;
            if sum % 2 == 0 && nums.binary_search(&(sum / 2)).is_ok() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> RealSet {
        RealSet::from_integers(v).unwrap()
    }

    fn diffs(set: &RealSet) -> Vec<String> {
        difference_set(set).unwrap().values().map(format_ratio).collect()
    }

    #[test]
    fn difference_set_examples() {
        assert_eq!(diffs(&ints(&[0, 1, 3])), vec!["1", "2", "3"]);
        assert_eq!(diffs(&ints(&[0, 1, 2, 3])), vec!["1", "2", "3"]);
        // pairwise: 1 4 9 11 3 8 10 5 7 2
        assert_eq!(
            diffs(&ints(&[0, 1, 4, 9, 11])),
            vec!["1", "2", "3", "4", "5", "7", "8", "9", "10", "11"]
        );
        assert!(difference_set(&ints(&[5])).is_err());
    }

    #[test]
    fn rationals_share_a_denominator() {
        let file: RealSetFile = serde_json::from_str(r#"{"elements": ["1/2", 0, "-1/3", "5"]}"#).unwrap();
        let set = RealSet::from_file(&file).unwrap();
        assert_eq!(set.denominator(), 6);
        assert_eq!(set.numerators(), &[-2, 0, 3, 30]);
        assert_eq!(set.to_string(), "{-1/3, 0, 1/2, 5}");
        assert!(set.contains(Ratio::new(1, 2)));
        assert_eq!(RealSet::from_json(&set.to_json()).unwrap(), set);
        let g = coloring_from_set(&set).unwrap();
        assert_eq!(g.label(g.color(0, 2)), &ColorLabel::Str("5/6".into()));
        assert_eq!(g.label(g.color(1, 3)), &ColorLabel::Int(5));
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(matches!(RealSet::from_integers(&[1, 1]), Err(Error::DuplicateElement(_))));
        let bad = RealSetFile {
            elements: vec![NumberRepr::Str("1/0".into())],
        };
        assert!(RealSet::from_file(&bad).is_err());
        let bad = RealSetFile {
            elements: vec![NumberRepr::Str("abc".into())],
        };
        assert!(matches!(RealSet::from_file(&bad), Err(Error::InvalidNumber(_))));
    }

    #[test]
    fn coloring_examples() {
        let g = coloring_from_set(&ints(&[0, 1, 2])).unwrap();
        assert_eq!(g.palette_size(), 2);
        assert_eq!(g.color(0, 1), g.color(1, 2));
        assert_eq!(coloring_from_set(&ints(&[0, 1, 3])).unwrap().palette_size(), 3);
    }

    #[test]
    fn g_property_examples() {
        assert!(!check_g_property(&ints(&[0, 1, 2]), 3, 3).unwrap().holds);
        assert!(check_g_property(&ints(&[0, 1, 3]), 3, 3).unwrap().holds);
    }

    #[test]
    fn three_ap_examples() {
        assert!(!is_3ap_free(&ints(&[1, 2, 3])));
        assert!(is_3ap_free(&ints(&[1, 2, 4, 8])));
        assert!(!is_3ap_free(&RealSet::from_rationals([Ratio::new(1, 2), Ratio::new(1, 1), Ratio::new(3, 2)]).unwrap()));
    }
}
