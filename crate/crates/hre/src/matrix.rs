//! Judgment matrices and their consistency diagnostics.
//!
//! A [`PcMatrix`] holds pairwise judgment ratios: entry `(i, j)` states how
//! many times more important concept `i` is than concept `j`. Matrices are
//! validated on construction (positive finite entries, unit diagonal) and are
//! immutable afterwards. [`validate`] measures reciprocity and consistency;
//! [`koczkodaj_index`] quantifies the worst triad deviation.

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `m[i][j] * m[j][i]` for a pair to count as reciprocal.
/// Judgments printed with three significant digits stay inside it only when
/// entered exactly, so rounded published tables typically fail reciprocity
/// and are reported as such rather than silently repaired.
pub const RECIPROCITY_TOL: f64 = 1e-6;

/// Tolerance on triple products `m[i][j] * m[j][k] * m[k][i]` for consistency.
pub const CONSISTENCY_TOL: f64 = 1e-6;

/// Relative tolerance on diagonal entries.
pub const DIAGONAL_TOL: f64 = 1e-9;

/// Square matrix of positive pairwise judgment ratios.
///
/// Entries are validated once, at construction. Optional labels are carried
/// as metadata only; no computation reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    entries: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl PcMatrix {
    /// Builds a matrix from rows. Every entry must be positive and finite and
    /// the diagonal must equal 1 within [`DIAGONAL_TOL`].
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape {
                    n,
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
            let _ = i;
        }
        Self::from_entries(n, entries)
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        if entries.len() != n * n {
            return Err(Error::BadShape {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        for (pos, &v) in entries.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::BadEntry {
                    i: pos / n + 1,
                    j: pos % n + 1,
                    value: v,
                });
            }
        }
        for i in 0..n {
            let d = entries[i * n + i];
            if (d - 1.0).abs() > DIAGONAL_TOL {
                return Err(Error::BadDiagonal { i: i + 1, value: d });
            }
        }
        Ok(Self {
            n,
            entries,
            labels: None,
        })
    }

    /// Builds the consistent ratio matrix `m[i][j] = w[i] / w[j]` from
    /// positive weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        for (pos, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::BadValue {
                    index: pos + 1,
                    value: w,
                });
            }
        }
        let n = weights.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if i == j { 1.0 } else { weights[i] / weights[j] });
            }
        }
        Self::from_entries(n, entries)
    }

    /// Attaches concept labels (metadata only).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::BadLabels {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based position `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Row-major rows, mainly for display and serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

/// A pair breaking reciprocity: `product = m[i][j] * m[j][i]`.
/// Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReciprocityViolation {
    pub i: usize,
    pub j: usize,
    pub product: f64,
}

/// Reciprocity and consistency diagnostics for one matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub reciprocal: bool,
    pub violations: Vec<ReciprocityViolation>,
    pub consistent: bool,
    /// Worst triad deviation; absent for n <= 2 or non-reciprocal matrices.
    pub koczkodaj: Option<f64>,
}

/// Non-fatal conditions attached to solver results.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The matrix failed the reciprocity check; the worst pair is attached.
    NotReciprocal {
        i: usize,
        j: usize,
        product: f64,
    },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::NotReciprocal { i, j, product } => write!(
                f,
                "matrix is not reciprocal: m({i},{j})*m({j},{i}) = {product:.6}"
            ),
        }
    }
}

/// Checks reciprocity pair by pair and consistency triple by triple.
pub fn validate(matrix: &PcMatrix) -> ConsistencyReport {
    let n = matrix.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let product = matrix.get(i, j) * matrix.get(j, i);
            if (product - 1.0).abs() > RECIPROCITY_TOL {
                violations.push(ReciprocityViolation {
                    i: i + 1,
                    j: j + 1,
                    product,
                });
            }
        }
    }
    let reciprocal = violations.is_empty();

    let mut consistent = reciprocal;
    if consistent {
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let p = matrix.get(i, j) * matrix.get(j, k) * matrix.get(k, i);
                    if (p - 1.0).abs() > CONSISTENCY_TOL {
                        consistent = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let koczkodaj = if reciprocal && n > 2 {
        Some(triad_max(matrix))
    } else {
        None
    };

    ConsistencyReport {
        reciprocal,
        violations,
        consistent,
        koczkodaj,
    }
}

/// Worst relative triad deviation over the whole matrix.
///
/// Defined for reciprocal matrices with n > 2; refuses anything else. The
/// scan walks unordered triples and evaluates all six orientations of each,
/// so it sees exactly the triads a full ordered enumeration would.
pub fn koczkodaj_index(matrix: &PcMatrix) -> Result<f64> {
    let n = matrix.n();
    if n <= 2 {
        return Err(Error::IndexUndefined(n));
    }
    if let Some(v) = worst_reciprocity_violation(matrix) {
        return Err(Error::NotReciprocal {
            i: v.i,
            j: v.j,
            product: v.product,
        });
    }
    Ok(triad_max(matrix))
}

/// The pair deviating most from reciprocity, if any pair deviates beyond
/// [`RECIPROCITY_TOL`].
pub fn worst_reciprocity_violation(matrix: &PcMatrix) -> Option<ReciprocityViolation> {
    let n = matrix.n();
    let mut worst: Option<ReciprocityViolation> = None;
    for i in 0..n {
        for j in i + 1..n {
            let product = matrix.get(i, j) * matrix.get(j, i);
            let dev = (product - 1.0).abs();
            if dev > RECIPROCITY_TOL
                && worst.is_none_or(|w| dev > (w.product - 1.0).abs())
            {
                worst = Some(ReciprocityViolation {
                    i: i + 1,
                    j: j + 1,
                    product,
                });
            }
        }
    }
    worst
}

fn triad_max(matrix: &PcMatrix) -> f64 {
    let n = matrix.n();
    let mut best = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // All six orientations of the unordered triple {i, j, k}.
                best = best.max(triad_value(matrix, i, j, k));
                best = best.max(triad_value(matrix, i, k, j));
                best = best.max(triad_value(matrix, j, i, k));
                best = best.max(triad_value(matrix, j, k, i));
                best = best.max(triad_value(matrix, k, i, j));
                best = best.max(triad_value(matrix, k, j, i));
            }
        }
    }
    best
}

#[inline]
fn triad_value(m: &PcMatrix, i: usize, j: usize, k: usize) -> f64 {
    let direct = m.get(i, j);
    let via = m.get(i, k) * m.get(k, j);
    (1.0 - direct / via).abs().min((1.0 - via / direct).abs())
}
