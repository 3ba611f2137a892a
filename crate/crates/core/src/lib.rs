//! Crisp priority weights from triangular-fuzzy pairwise comparisons.
//!
//! The crate derives weights for each block of a decision hierarchy with
//! fuzzy preference programming (maximize the smallest judgment membership
//! `λ`), composes them into global leaf weights, and ranks the leaves. It
//! also carries the survey-screening arithmetic (CASP, Delphi, Cronbach's
//! alpha) used to build such a hierarchy, and the bundled Supply Chain 4.0
//! case study.
//!
//! ```
//! use fahp_core::{case_study, solver};
//!
//! let study = case_study::paper_study();
//! let block = study.matrix("W3").unwrap();
//! let r = solver::solve_fpp(block, &solver::SolverConfig::default()).unwrap();
//! assert_eq!(r.lambda, 1.0);
//! assert!((r.weights["W32"] / r.weights["W31"] - 3.47).abs() < 1e-9);
//! ```

pub mod case_study;
pub mod composition;
pub mod fuzzy;
pub mod hierarchy;
pub mod par;
pub mod solver;
pub mod survey;

pub use composition::{
    compose_global, compose_hierarchy, normalize, rank, GlobalRanking, RankingRow,
};
pub use fuzzy::{LinguisticScale, Tfn};
pub use hierarchy::{ComparisonJudgment, ComparisonMatrix, Hierarchy, Node};
pub use par::Execution;
pub use solver::{
    feasible_at, lambda_at, oracle_solve, solve_fpp, SolveResult, SolverConfig, SolverError,
};
