use crate::error::{Error, Result};

/// Resource limits. Exceeding one is an error naming the budget, never a
/// silent slowdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Ordered types a full spectrum may visit.
    pub max_types: u128,
    /// Vertex-generator products (or edge checks) a brute-force oracle may do.
    pub max_oracle_work: u128,
}

impl Budget {
    pub const DEFAULT_MAX_TYPES: u128 = 10_000_000;
    pub const DEFAULT_MAX_ORACLE_WORK: u128 = 1 << 24;

    pub fn unlimited() -> Self {
        Self {
            max_types: u128::MAX,
            max_oracle_work: u128::MAX,
        }
    }

    pub fn with_oracle_work(mut self, limit: u128) -> Self {
        self.max_oracle_work = limit;
        self
    }

    pub(crate) fn check_types(&self, required: u128) -> Result<()> {
        if required > self.max_types {
            return Err(Error::Budget {
                budget: "max_types",
                required,
                limit: self.max_types,
            });
        }
        Ok(())
    }

    pub(crate) fn check_oracle(&self, required: u128) -> Result<()> {
        if required > self.max_oracle_work {
            return Err(Error::Budget {
                budget: "max_oracle_work",
                required,
                limit: self.max_oracle_work,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_types: Self::DEFAULT_MAX_TYPES,
            max_oracle_work: Self::DEFAULT_MAX_ORACLE_WORK,
        }
    }
}
