use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A search ran out of its node budget before finishing.
    #[error("budget exceeded after {0} search nodes")]
    BudgetExceeded(u64),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A construction whose output would be infinite at the requested bounds.
    #[error("construction is infinite: {0}")]
    Infinite(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Node counter shared by the backtracking searches.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 1_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn spend(&mut self, nodes: u64) -> Result<()> {
        self.used += nodes;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.used))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}
