//! Small dense linear algebra: Gaussian elimination with partial pivoting,
//! matrix inversion, and dominant-eigenpair extraction by power iteration.
//!
//! Problem sizes here are tiny (a few hundred at most), so there is a single
//! dense row-major implementation and no backend abstraction.

use crate::error::{Error, Result};

/// Relative pivot threshold: a pivot below `SINGULAR_TOL * max|entry|`
/// makes the matrix singular for our purposes.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Default convergence tolerance for [`power_iteration`].
pub const POWER_TOL: f64 = 1e-10;

/// Default iteration cap for [`power_iteration`].
pub const POWER_MAX_ITER: usize = 10_000;

/// Dense row-major matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data. All entries must be finite.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadShape {
                n: rows.max(cols),
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                n: rows,
                expected: rows * cols,
                got: data.len(),
            });
        }
        for (pos, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::BadEntry {
                    i: pos / cols + 1,
                    j: pos % cols + 1,
                    value: v,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &DenseVector) -> Result<DenseVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let out = self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v.data()).map(|(a, b)| a * b).sum())
            .collect();
        DenseVector::new(out)
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Dense vector of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    data: Vec<f64>,
}

impl DenseVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (pos, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::BadValue {
                    index: pos + 1,
                    value: v,
                });
            }
        }
        Ok(Self { data })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

/// Solves `a * x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot with magnitude below `SINGULAR_TOL * max|a|` aborts with
/// [`Error::Singular`].
pub fn solve_linear(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    let mut cols = eliminate(a, &[b.data().to_vec()])?;
    DenseVector::new(cols.pop().expect("one solution per right-hand side"))
}

/// Inverts a square matrix; errors on singular input.
pub fn invert(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    let rhs: Vec<Vec<f64>> = (0..n)
        .map(|c| {
            let mut e = vec![0.0; n];
            e[c] = 1.0;
            e
        })
        .collect();
    let cols = eliminate(a, &rhs)?;
    let mut inv = DenseMatrix::zeros(n, n);
    for r in 0..n {
        for (c, col) in cols.iter().enumerate() {
            inv.set(r, c, col[r]);
        }
    }
    Ok(inv)
}

/// Shared elimination kernel: factors once, back-substitutes every
/// right-hand side. Returns one solution column per input column.
fn eliminate(a: &DenseMatrix, rhs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    let n = a.rows();
    for col in rhs {
        if col.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: col.len(),
            });
        }
    }
    let threshold = SINGULAR_TOL * a.max_abs();
    let mut work = a.clone();
    let mut sols: Vec<Vec<f64>> = rhs.to_vec();

    for step in 0..n {
        // Partial pivoting: bring the largest remaining entry of this column up.
        let mut pivot_row = step;
        for r in step + 1..n {
            if work.get(r, step).abs() > work.get(pivot_row, step).abs() {
                pivot_row = r;
            }
        }
        let pivot = work.get(pivot_row, step);
        if pivot.abs() <= threshold {
            return Err(Error::Singular {
                step: step + 1,
                pivot,
            });
        }
        if pivot_row != step {
            for c in 0..n {
                let tmp = work.get(step, c);
                work.set(step, c, work.get(pivot_row, c));
                work.set(pivot_row, c, tmp);
            }
            for col in sols.iter_mut() {
                col.swap(step, pivot_row);
            }
        }
        for r in step + 1..n {
            let factor = work.get(r, step) / pivot;
            if factor == 0.0 {
                continue;
            }
            work.set(r, step, 0.0);
            for c in step + 1..n {
                let v = work.get(r, c) - factor * work.get(step, c);
                work.set(r, c, v);
            }
            for col in sols.iter_mut() {
                col[r] -= factor * col[step];
            }
        }
    }

    // Back substitution, per right-hand side.
    for col in sols.iter_mut() {
        for step in (0..n).rev() {
            let mut acc = col[step];
            for (c, &solved) in (step + 1..n).zip(&col[step + 1..]) {
                acc -= work.get(step, c) * solved;
            }
            col[step] = acc / work.get(step, step);
        }
    }
    Ok(sols)
}

/// Dominant eigenpair of an entrywise-positive square matrix.
///
/// Starts from the uniform vector, renormalizes to unit L1 norm each step,
/// and stops when successive iterates differ by at most `tol` in max norm.
/// Returns the eigenvalue and the eigenvector rescaled to sum 1; fails with
/// the last iterate attached if `max_iter` is exhausted.
pub fn power_iteration(
    m: &DenseMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, DenseVector)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c);
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::BadEntry {
                    i: r + 1,
                    j: c + 1,
                    value: v,
                });
            }
        }
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadConfig(format!(
            "power iteration tolerance must be positive, got {tol}"
        )));
    }

    let mut v = DenseVector::new(vec![1.0 / n as f64; n])?;
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let mut next = m.mul_vec(&v)?.into_vec();
        let sum: f64 = next.iter().sum();
        for x in next.iter_mut() {
            *x /= sum;
        }
        residual = next
            .iter()
            .zip(v.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let next = DenseVector::new(next)?;
        if residual <= tol {
            // v sums to 1, so lambda is the sum of m*v.
            let lambda: f64 = m.mul_vec(&next)?.data().iter().sum();
            return Ok((lambda, next));
        }
        v = next;
    }
    Err(Error::NoConvergence {
        max_iter,
        residual,
        last: v.into_vec(),
    })
}
