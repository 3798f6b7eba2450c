use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "config")]
pub enum ExtremalConfig {
    /// `C_{2k}` with `length = 2k`.
    EvenCycle { length: usize },
    /// The subdivision `H_t` of `K_t`.
    Subdivision { t: usize },
}

/// A constant-free growth rate `n^exponent`. The hidden constants are
/// unknown, so this is never a certified bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReference {
    pub exponent_numer: u64,
    pub exponent_denom: u64,
    pub reference: f64,
    pub certified: bool,
}

impl GrowthReference {
    pub(crate) fn new(n: u64, exponent: Ratio<u64>) -> Self {
        GrowthReference {
            exponent_numer: *exponent.numer(),
            exponent_denom: *exponent.denom(),
            reference: (n as f64).powf(*exponent.numer() as f64 / *exponent.denom() as f64),
            certified: false,
        }
    }

    pub fn exponent(&self) -> Ratio<u64> {
        Ratio::new(self.exponent_numer, self.exponent_denom)
    }
}

/// Edge-count scale for graphs avoiding the configuration: `n^{1+1/k}` for
/// `C_{2k}`, `n^{3/2 − 1/(4t−6)}` for `H_t`.
pub fn extremal_edge_reference(n: u64, config: ExtremalConfig) -> Result<GrowthReference> {
    let exponent = match config {
        ExtremalConfig::EvenCycle { length } => {
            if length < 4 || length % 2 != 0 {
                return Err(Error::invalid(format!("cycle length {length} must be even and at least 4")));
            }
            Ratio::new(length as u64 / 2 + 1, length as u64 / 2)
        }
        ExtremalConfig::Subdivision { t } => {
            if t < 3 {
                return Err(Error::invalid(format!("t = {t} must be at least 3")));
            }
            Ratio::new(3, 2) - Ratio::new(1, 4 * t as u64 - 6)
        }
    };
    Ok(GrowthReference::new(n, exponent))
}
