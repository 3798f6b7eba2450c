//! Enumeration ceilings shared by every exhaustive routine.

use crate::error::{Error, Result};

/// Environment variable that overrides every ceiling at once.
pub const BUDGET_ENV: &str = "LOCALLAB_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Ordered 2r-tuples visited by the brute-force energy count.
    pub energy_tuples: u64,
    /// Edges materialized in an energy graph.
    pub energy_graph_edges: u64,
    /// Partial assignments explored by the exact f/g searches.
    pub oracle_nodes: u64,
    /// k-subsets visited by exhaustive local-property checks.
    pub subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            energy_tuples: 1_000_000_000,
            energy_graph_edges: 10_000_000,
            oracle_nodes: 100_000_000,
            subsets: 1_000_000_000,
        }
    }
}

impl Budget {
    /// Every ceiling set to the same value.
    pub fn uniform(limit: u64) -> Self {
        Budget {
            energy_tuples: limit,
            energy_graph_edges: limit,
            oracle_nodes: limit,
            subsets: limit,
        }
    }

    /// Defaults, or `LOCALLAB_BUDGET` when it is set to an integer.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .replace('_', "")
                .parse::<u64>()
                .map(Budget::uniform)
                .map_err(|_| Error::invalid(format!("{BUDGET_ENV}={raw:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }
}

pub(crate) fn ensure(what: &'static str, required: u128, budget: u64) -> Result<()> {
    if required > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            required,
            budget,
        })
    } else {
        Ok(())
    }
}

/// C(n, k) saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 8), 76_904_685);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn ensure_reports_budget() {
        assert!(ensure("x", 10, 10).is_ok());
        assert!(ensure("x", 11, 10).unwrap_err().is_budget());
    }
}
