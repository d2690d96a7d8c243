use thiserror::Error;

/// Returned when a search visits more nodes than its budget allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("budget exhausted after {limit} search nodes")]
pub struct BudgetExhausted {
    pub limit: u64,
}

/// Node-count guardrail for exponential searches.
///
/// One budget is threaded through a whole operation, so nested searches draw
/// from the same pool. Exhaustion is always reported, never turned into an
/// answer.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    /// Default node limit used by the CLI and by the budget-free wrappers.
    pub const DEFAULT_LIMIT: u64 = 2_000_000_000;
    /// Environment variable consulted by the CLI for the default limit.
    pub const ENV_VAR: &'static str = "PTX_BUDGET";

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), BudgetExhausted> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExhausted { limit: self.limit })
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
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}
