//! Enumeration budgets.
//!
//! Every exhaustive search in the crate is guarded by an explicit budget.
//! Exceeding a budget is an error, never a silent truncation: callers either
//! raise the limits deliberately or get a refusal naming the limit that fired.

use thiserror::Error;

/// Caps for the exhaustive enumerations. `Default` is deliberately
/// conservative; `unlocked()` raises the caps for callers that know what
/// they are asking for. The environment variable `GALOIS_BUDGET_OVERRIDE=1`
/// makes `Budget::from_env` start from the unlocked limits.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Largest degree for action enumeration.
    pub max_degree: usize,
    /// Most generators admitted when enumerating actions of a presentation.
    pub max_generators: usize,
    /// Hard cap on candidate tuples visited by a single enumeration.
    pub max_tuples: u64,
    /// Largest group order for subgroup-lattice style searches.
    pub max_group_order: usize,
    /// Hard cap on the order of a group built by closure.
    pub max_closure: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 6,
            max_generators: 2,
            max_tuples: 5_000_000,
            max_group_order: 24,
            max_closure: 50_000,
        }
    }
}

impl Budget {
    pub fn unlocked() -> Self {
        Budget {
            max_degree: 8,
            max_generators: 16,
            max_tuples: 200_000_000,
            max_group_order: 64,
            max_closure: 2_000_000,
        }
    }

    pub fn from_env() -> Self {
        if std::env::var("GALOIS_BUDGET_OVERRIDE").as_deref() == Ok("1") {
            Budget::unlocked()
        } else {
            Budget::default()
        }
    }

    /// A default budget whose generator cap is raised to `gens`; the
    /// orbifold presentations legitimately have many generators while the
    /// tuple cap still bounds the actual work.
    pub fn with_generators(gens: usize) -> Self {
        Budget {
            max_generators: gens,
            ..Budget::default()
        }
    }

    pub fn check_degree(&self, degree: usize) -> Result<(), BudgetError> {
        if degree > self.max_degree {
            return Err(BudgetError::Exceeded {
                what: "degree",
                requested: degree as u64,
                limit: self.max_degree as u64,
            });
        }
        Ok(())
    }

    pub fn check_generators(&self, gens: usize) -> Result<(), BudgetError> {
        if gens > self.max_generators {
            return Err(BudgetError::Exceeded {
                what: "generator count",
                requested: gens as u64,
                limit: self.max_generators as u64,
            });
        }
        Ok(())
    }

    pub fn check_tuples(&self, tuples: u64) -> Result<(), BudgetError> {
        if tuples > self.max_tuples {
            return Err(BudgetError::Exceeded {
                what: "candidate tuples",
                requested: tuples,
                limit: self.max_tuples,
            });
        }
        Ok(())
    }

    pub fn check_group_order(&self, order: usize) -> Result<(), BudgetError> {
        if order > self.max_group_order {
            return Err(BudgetError::Exceeded {
                what: "group order",
                requested: order as u64,
                limit: self.max_group_order as u64,
            });
        }
        Ok(())
    }

    pub fn check_closure(&self, size: usize) -> Result<(), BudgetError> {
        if size > self.max_closure {
            return Err(BudgetError::Exceeded {
                what: "closure size",
                requested: size as u64,
                limit: self.max_closure as u64,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("budget exceeded: {what} {requested} over limit {limit}")]
    Exceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
}
