use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable overriding the default operation budget.
pub const BUDGET_ENV: &str = "SESQUI_BUDGET";

/// Counter of elementary matrix operations shared by one command.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Default limit, or the value of `SESQUI_BUDGET` when set.
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_LIMIT);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed).saturating_add(n);
        if used > self.limit {
            return Err(Error::BudgetExceeded { estimate: used, limit: self.limit });
        }
        Ok(())
    }

    /// Fails up front when `estimate` more operations would not fit.
    pub fn check_estimate(&self, estimate: u64) -> Result<()> {
        let total = self.used().saturating_add(estimate);
        if total > self.limit {
            return Err(Error::BudgetExceeded { estimate: total, limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
