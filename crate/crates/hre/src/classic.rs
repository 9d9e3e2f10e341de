//! Full-matrix priority derivation without a reference set: the principal
//! eigenvector of the matrix and the rescaled geometric mean of its rows.
//! On a consistent matrix both methods return the same ranking.

use crate::error::Result;
use crate::linalg::{self, DenseMatrix, POWER_MAX_ITER, POWER_TOL};
use crate::matrix::{PcMatrix, Warning};
use crate::priority::{PriorityVector, Solution};

/// Principal-eigenvector priorities, rescaled to sum 1.
///
/// Defined for any positive matrix; a warning is attached when the matrix is
/// not reciprocal. Power-iteration non-convergence is propagated.
pub fn ev_method(matrix: &PcMatrix) -> Result<Solution> {
    let n = matrix.n();
    let dense = DenseMatrix::new(n, n, matrix.entries().to_vec())?;
    let (_, vector) = linalg::power_iteration(&dense, POWER_TOL, POWER_MAX_ITER)?;
    Ok(Solution {
        priorities: PriorityVector::new(vector.into_vec())?,
        warnings: reciprocity_warnings(matrix),
    })
}

/// Geometric-mean-of-rows priorities, rescaled to sum 1.
///
/// The per-row product is accumulated in log space so large matrices and
/// extreme judgment ratios cannot overflow.
pub fn gm_method(matrix: &PcMatrix) -> Result<Solution> {
    let n = matrix.n();
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let log_sum: f64 = (0..n).map(|j| matrix.get(i, j).ln()).sum();
            (log_sum / n as f64).exp()
        })
        .collect();
    Ok(Solution {
        priorities: PriorityVector::new(values)?,
        warnings: reciprocity_warnings(matrix),
    })
}

pub(crate) fn reciprocity_warnings(matrix: &PcMatrix) -> Vec<Warning> {
    match crate::matrix::worst_reciprocity_violation(matrix) {
        Some(v) => vec![Warning::NotReciprocal {
            i: v.i,
            j: v.j,
            product: v.product,
        }],
        None => Vec::new(),
    }
}
