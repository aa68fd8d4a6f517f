use crate::error::{Error, Result};

/// Resource limits for brute-force enumerations and backtracking searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate L-subsets an enumeration may range over.
    pub enumeration: u64,
    /// Maximum number of nodes a backtracking search may visit.
    pub search: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { enumeration: 2_000_000, search: 5_000_000 }
    }
}

impl Budget {
    /// Fails unless `base^exp` candidates fit in the enumeration budget.
    pub fn check_enumeration(&self, base: usize, exp: usize) -> Result<()> {
        let required = saturating_pow(base as u64, exp);
        if required > self.enumeration {
            Err(Error::EnumerationBudgetExceeded { required, budget: self.enumeration })
        } else {
            Ok(())
        }
    }

    pub fn check_count(&self, required: u64) -> Result<()> {
        if required > self.enumeration {
            Err(Error::EnumerationBudgetExceeded { required, budget: self.enumeration })
        } else {
            Ok(())
        }
    }

    pub(crate) fn counter(&self) -> SearchCounter {
        SearchCounter { used: 0, limit: self.search }
    }
}

pub(crate) fn saturating_pow(base: u64, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Node counter for backtracking searches.
#[derive(Debug)]
pub(crate) struct SearchCounter {
    used: u64,
    limit: u64,
}

impl SearchCounter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}
