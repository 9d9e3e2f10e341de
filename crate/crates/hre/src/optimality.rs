//! Optimality diagnostics for a derived ranking.
//!
//! The quality of a ranking `mu` against a judgment matrix is measured by the
//! squared-log error
//!
//! ```text
//! e(mu) = sum over i, j of (ln m[i][j] - ln(mu[i] / mu[j]))^2
//! ```
//!
//! The geometric-mean postulate is exactly the stationarity condition of `e`
//! in the unknown coordinates, so at a geometric solution the gradient over
//! the unknowns vanishes. Whether the stationary point is a minimum is probed
//! through the Hessian, which at a stationary point has diagonal
//! `4(n-1)/mu[i]^2` and off-diagonal `-4/(mu[i]*mu[j])`.
//!
//! Because `e` only reads ratios, rescaling `mu` never changes it, and the
//! direction of `mu` itself is always a zero mode of that Hessian. Strict
//! definiteness and strict row dominance are therefore unattainable in exact
//! arithmetic; the report states each check separately instead of collapsing
//! them into a single verdict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{worst_reciprocity_violation, PcMatrix};
use crate::priority::PriorityVector;

/// Diagnostics of a ranking as a candidate minimizer of the squared-log
/// error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityReport {
    /// Value of the squared-log error at the ranking.
    pub error_value: f64,
    /// Largest absolute gradient component over the examined concepts.
    pub gradient_max: f64,
    /// True when no priority exceeds (n-1) times the sum of the others.
    pub spread_condition: bool,
    /// Strict row diagonal dominance of the stationary-point Hessian.
    pub hessian_dominant: bool,
    /// Strict positive definiteness of the stationary-point Hessian,
    /// established through Cholesky pivots.
    pub hessian_positive_definite: bool,
}

/// Sum of squared log deviations between judgments and priority ratios.
pub fn error_function(mu: &PriorityVector, matrix: &PcMatrix) -> Result<f64> {
    let n = matrix.n();
    if mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mu.len(),
        });
    }
    let v = mu.values();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = matrix.get(i, j).ln() - (v[i] / v[j]).ln();
            total += d * d;
        }
    }
    Ok(total)
}

/// Analytic gradient of the squared-log error.
///
/// The closed form collapses each row/column pair through reciprocity, so a
/// non-reciprocal matrix is refused.
pub fn error_gradient(mu: &PriorityVector, matrix: &PcMatrix) -> Result<Vec<f64>> {
    let n = matrix.n();
    if mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mu.len(),
        });
    }
    if let Some(v) = worst_reciprocity_violation(matrix) {
        return Err(Error::NotReciprocal {
            i: v.i,
            j: v.j,
            product: v.product,
        });
    }
    let v = mu.values();
    let grad = (0..n)
        .map(|i| {
            let acc = (0..n)
                .filter(|&j| j != i)
                .map(|j| v[j].ln() + matrix.get(i, j).ln())
                .sum::<f64>()
                - (n as f64 - 1.0) * v[i].ln();
            -4.0 * acc / v[i]
        })
        .collect();
    Ok(grad)
}

/// Evaluates the error, its gradient, and the Hessian conditions at `mu`.
///
/// `focus` selects the 1-based concept indices whose gradient components
/// enter `gradient_max` (the unknown concepts of a reference problem);
/// `None` examines every concept.
pub fn optimality_report(
    mu: &PriorityVector,
    matrix: &PcMatrix,
    focus: Option<&[usize]>,
) -> Result<OptimalityReport> {
    let n = matrix.n();
    let error_value = error_function(mu, matrix)?;
    let gradient = error_gradient(mu, matrix)?;
    let gradient_max = match focus {
        Some(indices) => {
            let mut worst = 0.0_f64;
            for &index in indices {
                if index == 0 || index > n {
                    return Err(Error::ReferenceOutOfRange { index, n });
                }
                worst = worst.max(gradient[index - 1].abs());
            }
            worst
        }
        None => gradient.iter().fold(0.0_f64, |m, g| m.max(g.abs())),
    };

    let v = mu.values();
    let spread_condition = (0..n).all(|i| {
        let others: f64 = (0..n).filter(|&j| j != i).map(|j| v[j]).sum();
        v[i] < (n as f64 - 1.0) * others
    });

    let hessian = stationary_hessian(v);
    let hessian_dominant = (0..n).all(|i| {
        let off: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| hessian[i][j].abs())
            .sum();
        hessian[i][i].abs() > off
    });
    let hessian_positive_definite = cholesky_positive(&hessian);

    Ok(OptimalityReport {
        error_value,
        gradient_max,
        spread_condition,
        hessian_dominant,
        hessian_positive_definite,
    })
}

/// Hessian of the squared-log error at a stationary point.
fn stationary_hessian(mu: &[f64]) -> Vec<Vec<f64>> {
    let n = mu.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        4.0 * (n as f64 - 1.0) / (mu[i] * mu[i])
                    } else {
                        -4.0 / (mu[i] * mu[j])
                    }
                })
                .collect()
        })
        .collect()
}

/// Cholesky-pivot test for strict positive definiteness. Pivots must stay
/// above a relative floor, so a semidefinite boundary case reports false.
fn cholesky_positive(h: &[Vec<f64>]) -> bool {
    let n = h.len();
    let scale = h
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = 1e-10 * scale;
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut acc = h[i][j];
            acc -= l[i][..j]
                .iter()
                .zip(&l[j][..j])
                .map(|(a, b)| a * b)
                .sum::<f64>();
            if i == j {
                if acc <= floor {
                    return false;
                }
                l[i][j] = acc.sqrt();
            } else {
                l[i][j] = acc / l[j][j];
            }
        }
    }
    true
}
