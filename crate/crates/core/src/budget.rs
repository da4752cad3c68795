//! Enumeration budget guard.
//!
//! Exhaustive sweeps charge one unit per candidate visited; exceeding the
//! limit aborts the check with [`Error::BudgetExceeded`] instead of running
//! away on instances that are too large for desk-scale verification.

use crate::error::{Error, Result};

/// Default limit: at most 10^7 candidates per check.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn standard() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::standard()
    }
}
