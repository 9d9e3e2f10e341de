//! Rating estimation against a reference set.
//!
//! Both solvers estimate each unknown priority as a mean of the judgment-
//! scaled priorities of all other concepts, and reduce that postulate to a
//! k x k linear system over the unknowns (k = number of unknown concepts).
//!
//! * The arithmetic variant averages `m[j][i] * mu(i)` directly. Its system
//!   matrix depends on the judgments, and for strongly inconsistent input the
//!   solved values can come out nonpositive, which is reported as an
//!   [`ArithmeticOutcome::Infeasible`] outcome rather than an error so
//!   callers can count or fall back.
//! * The geometric variant averages in log space. Its system matrix is fixed
//!   by the dimensions alone: diagonal `n - 1`, off-diagonal `-1`, row sums
//!   `n - k > 0`. A matrix of that shape is inverse-nonnegative and never
//!   singular, so a strictly positive solution exists for every valid
//!   problem, no matter how inconsistent the judgments are.
//!
//! Both accept non-reciprocal matrices (only the rows of unknown concepts are
//! read) and attach a warning when reciprocity fails.

use crate::classic::reciprocity_warnings;
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, DenseVector};
use crate::matrix::Warning;
use crate::priority::{PriorityVector, Solution};
use crate::problem::HreProblem;

/// Linear system of the arithmetic-mean postulate, unknowns first.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticSystem {
    /// k x k matrix: diagonal 1, entry `(r, c) = -m[u_r][u_c] / (n - 1)`.
    pub a: DenseMatrix,
    /// Constant terms: `b[r] = sum over known j of m[u_r][j] * mu(j) / (n - 1)`.
    pub b: DenseVector,
    /// 1-based original concept index for each system row.
    pub index_map: Vec<usize>,
}

/// Linear system of the geometric-mean postulate in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSystem {
    /// k x k matrix with diagonal n - 1 and off-diagonal -1. Depends only on
    /// the dimensions, never on the judgment values.
    pub a_hat: DenseMatrix,
    /// Constant terms, in the logarithm base recorded below:
    /// `b[r] = sum over unknown j != u_r of log m[u_r][j]`
    /// `     + sum over known j of (log m[u_r][j] + log mu(j))`.
    pub b: DenseVector,
    /// Logarithm base used for `b` (and for solutions of this system).
    pub base: f64,
    /// 1-based original concept index for each system row.
    pub index_map: Vec<usize>,
}

impl GeometricSystem {
    /// Solves for the log-priorities of the unknown concepts, in this
    /// system's base, one per `index_map` row.
    pub fn solve_log(&self) -> Result<Vec<f64>> {
        Ok(linalg::solve_linear(&self.a_hat, &self.b)?.into_vec())
    }
}

/// Result of the arithmetic solver: a ranking when all solved values are
/// strictly positive, otherwise the raw merged vector for inspection.
#[derive(Debug, Clone, PartialEq)]
pub enum ArithmeticOutcome {
    Feasible(Solution),
    Infeasible {
        /// Full vector in original concept order; unknown entries may be
        /// nonpositive, known entries are the reference values.
        raw: Vec<f64>,
        warnings: Vec<Warning>,
    },
}

impl ArithmeticOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ArithmeticOutcome::Feasible(_))
    }
}

/// Builds the arithmetic-mean system `a * mu = b` over the unknown concepts.
pub fn build_arithmetic_system(problem: &HreProblem) -> ArithmeticSystem {
    let n = problem.n();
    let k = problem.unknown_count();
    let matrix = problem.matrix();
    let scale = 1.0 / (n as f64 - 1.0);

    let mut a = DenseMatrix::zeros(k, k);
    for r in 0..k {
        let row = problem.concept_at(r);
        for c in 0..k {
            if r == c {
                a.set(r, c, 1.0);
            } else {
                a.set(r, c, -scale * matrix.get(row, problem.concept_at(c)));
            }
        }
    }
    let b: Vec<f64> = (0..k)
        .map(|r| {
            let row = problem.concept_at(r);
            scale
                * problem
                    .reference()
                    .iter()
                    .map(|(index, value)| matrix.get(row, index - 1) * value)
                    .sum::<f64>()
        })
        .collect();
    ArithmeticSystem {
        a,
        b: DenseVector::new(b).expect("finite by construction"),
        index_map: (0..k).map(|r| problem.concept_at(r) + 1).collect(),
    }
}

/// Solves the arithmetic-mean system and merges with the reference values.
///
/// A singular system is an error; a solution with nonpositive entries is the
/// structured [`ArithmeticOutcome::Infeasible`] outcome.
pub fn solve_arithmetic(problem: &HreProblem) -> Result<ArithmeticOutcome> {
    let system = build_arithmetic_system(problem);
    let solved = linalg::solve_linear(&system.a, &system.b)?;
    let full = problem.merge(solved.data());
    let warnings = reciprocity_warnings(problem.matrix());
    if solved.data().iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Ok(ArithmeticOutcome::Infeasible {
            raw: full,
            warnings,
        });
    }
    Ok(ArithmeticOutcome::Feasible(Solution {
        priorities: PriorityVector::new(full)?,
        warnings,
    }))
}

/// Builds the geometric-mean system in log space, in the given base (> 1).
pub fn build_geometric_system(problem: &HreProblem, base: f64) -> Result<GeometricSystem> {
    if !base.is_finite() || base <= 1.0 {
        return Err(Error::BadBase(base));
    }
    let ln_base = base.ln();
    let (a_hat, b_nat, index_map) = geometric_parts(problem);
    let b: Vec<f64> = b_nat.iter().map(|v| v / ln_base).collect();
    Ok(GeometricSystem {
        a_hat,
        b: DenseVector::new(b).expect("finite by construction"),
        base,
        index_map,
    })
}

/// System matrix and natural-log constant terms of the geometric postulate.
fn geometric_parts(problem: &HreProblem) -> (DenseMatrix, Vec<f64>, Vec<usize>) {
    let n = problem.n();
    let k = problem.unknown_count();
    let matrix = problem.matrix();

    let mut a_hat = DenseMatrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            a_hat.set(r, c, if r == c { (n - 1) as f64 } else { -1.0 });
        }
    }

    let b: Vec<f64> = (0..k)
        .map(|r| {
            let row = problem.concept_at(r);
            let mut acc = 0.0;
            for c in 0..k {
                if c != r {
                    acc += matrix.get(row, problem.concept_at(c)).ln();
                }
            }
            for (index, value) in problem.reference().iter() {
                acc += matrix.get(row, index - 1).ln() + value.ln();
            }
            acc
        })
        .collect();
    let index_map = (0..k).map(|r| problem.concept_at(r) + 1).collect();
    (a_hat, b, index_map)
}

/// Solves the geometric-mean system and merges with the reference values.
///
/// The solution is always strictly positive and finite. The computation runs
/// in natural log regardless of `base`; the base only selects the scale of
/// the intermediate log system (see [`build_geometric_system`]) and provably
/// does not change the resulting priorities. A singular report from the
/// linear solver would contradict the fixed structure of the system matrix
/// and is escalated as a panic rather than returned.
pub fn solve_geometric(problem: &HreProblem, base: f64) -> Result<Solution> {
    if !base.is_finite() || base <= 1.0 {
        return Err(Error::BadBase(base));
    }
    let (a_hat, b_nat, _) = geometric_parts(problem);
    let b = DenseVector::new(b_nat).expect("finite by construction");
    let solved = linalg::solve_linear(&a_hat, &b)
        .expect("system with diagonal n-1, off-diagonal -1 is never singular");
    let unknowns: Vec<f64> = solved.data().iter().map(|&v| v.exp()).collect();
    let full = problem.merge(&unknowns);
    Ok(Solution {
        priorities: PriorityVector::new(full)?,
        warnings: reciprocity_warnings(problem.matrix()),
    })
}

/// Worst relative defect of the geometric-mean postulate at a solution:
/// `max over unknown j of |mu(j) - (prod over i != j of m[j][i] * mu(i))^(1/(n-1))| / mu(j)`.
pub fn geometric_residual(solution: &PriorityVector, problem: &HreProblem) -> Result<f64> {
    let n = problem.n();
    if solution.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: solution.len(),
        });
    }
    let matrix = problem.matrix();
    let mu = solution.values();
    let mut worst = 0.0_f64;
    for r in 0..problem.unknown_count() {
        let j = problem.concept_at(r);
        let log_mean = (0..n)
            .filter(|&i| i != j)
            .map(|i| matrix.get(j, i).ln() + mu[i].ln())
            .sum::<f64>()
            / (n as f64 - 1.0);
        worst = worst.max((mu[j] - log_mean.exp()).abs() / mu[j]);
    }
    Ok(worst)
}
