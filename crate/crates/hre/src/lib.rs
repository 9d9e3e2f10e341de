//! Ranking by pairwise comparisons with a reference set.
//!
//! Given an n x n matrix of judgment ratios and known priorities for some of
//! the concepts, this crate estimates the missing priorities. Two estimation
//! postulates are provided: an arithmetic mean of judgment-scaled priorities,
//! which can fail on inconsistent input, and a geometric mean, whose solution
//! exists and stays strictly positive for every positive judgment matrix.
//! Classic full-matrix derivations (principal eigenvector, geometric mean of
//! rows), consistency measurement, optimality diagnostics, and a reproducible
//! simulation harness round out the toolkit.
//!
//! ```
//! use hre::{HreProblem, PcMatrix, ReferenceAssignment};
//!
//! // Ratios generated from weights (4, 2, 1); concept 3 is known to be 1.0.
//! let matrix = PcMatrix::from_weights(&[4.0, 2.0, 1.0])?;
//! let reference = ReferenceAssignment::from_pairs(&[(3, 1.0)])?;
//! let problem = HreProblem::new(matrix, reference)?;
//!
//! let solution = hre::solve_geometric(&problem, 10.0)?;
//! let mu = solution.priorities.values();
//! assert!((mu[0] - 4.0).abs() < 1e-9);
//! assert!((mu[1] - 2.0).abs() < 1e-9);
//! # Ok::<(), hre::Error>(())
//! ```

pub mod classic;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod optimality;
pub mod priority;
pub mod problem;
pub mod simulate;
pub mod solver;

pub use classic::{ev_method, gm_method};
pub use error::{Error, Result};
pub use matrix::{
    koczkodaj_index, validate, ConsistencyReport, PcMatrix, ReciprocityViolation, Warning,
};
pub use optimality::{error_function, error_gradient, optimality_report, OptimalityReport};
pub use priority::{normalize, PriorityVector, Solution};
pub use problem::{HreProblem, ReferenceAssignment};
pub use simulate::{
    gen_consistent, perturb_reciprocal, run_experiment, run_experiment_serial, CellStats,
    ExperimentConfig, ExperimentResult, KRule,
};
pub use solver::{
    build_arithmetic_system, build_geometric_system, geometric_residual, solve_arithmetic,
    solve_geometric, ArithmeticOutcome, ArithmeticSystem, GeometricSystem,
};
