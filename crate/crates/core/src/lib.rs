//! Solvers for distance-r (sigma, rho)-domination and locally checkable
//! vertex partitioning problems, driven by branch decompositions of bounded
//! mim-width, plus the exact cut tooling and brute-force oracles backing
//! them.

pub mod decomposition;
pub mod equivalence;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod problems;
pub mod solver;

use thiserror::Error;

/// A bounded search or closure ran past its configured budget. Callers get
/// an explicit error instead of an open-ended computation.
#[derive(Error, Debug, Clone, Copy, PartialEq, Eq)]
#[error("{what} budget of {budget} exceeded")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub budget: u64,
}
