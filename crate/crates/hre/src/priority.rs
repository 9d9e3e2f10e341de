//! Priority vectors: strictly positive per-concept values in raw and
//! sum-to-one form, with a deterministic ranking order.

use serde::Serialize;

use crate::error::{Error, Result};

/// Positive priority values for all concepts, in original concept order.
///
/// Holds both the raw values (natural units such as prices or audience
/// counts) and the rescaled form summing to 1. Ratios between concepts are
/// identical in both forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorityVector {
    values: Vec<f64>,
    normalized: Vec<f64>,
}

impl PriorityVector {
    /// Builds a priority vector; every value must be positive and finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (pos, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::BadValue {
                    index: pos + 1,
                    value: v,
                });
            }
        }
        let sum: f64 = values.iter().sum();
        let normalized = values.iter().map(|v| v / sum).collect();
        Ok(Self { values, normalized })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Raw values in natural units.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values rescaled to sum 1.
    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }

    /// 1-based concept indices sorted by descending priority; ties are broken
    /// by ascending concept index so the order is always deterministic.
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (1..=self.values.len()).collect();
        idx.sort_by(|&a, &b| {
            self.values[b - 1]
                .total_cmp(&self.values[a - 1])
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Rescales positive values to sum 1, preserving all ratios.
pub fn normalize(values: &[f64]) -> Result<PriorityVector> {
    PriorityVector::new(values.to_vec())
}

/// A derived ranking plus any non-fatal conditions met along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub priorities: PriorityVector,
    pub warnings: Vec<crate::matrix::Warning>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_normalizes_to_quarter() {
        let p = normalize(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(p.normalized(), &[0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn two_element_thirds() {
        let p = normalize(&[3.0, 6.0]).unwrap();
        assert!((p.normalized()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.normalized()[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn worked_example_rescaling() {
        let p = normalize(&[2.16, 5.0, 7.0, 2.514, 2.08]).unwrap();
        let want = [0.115, 0.267, 0.373, 0.134, 0.111];
        for (got, want) in p.normalized().iter().zip(want) {
            assert!((got - want).abs() <= 1e-3, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert_eq!(
            normalize(&[1.0, 0.0]),
            Err(Error::BadValue {
                index: 2,
                value: 0.0
            })
        );
        assert!(matches!(
            normalize(&[1.0, f64::INFINITY]),
            Err(Error::BadValue { index: 2, .. })
        ));
    }

    #[test]
    fn ranking_breaks_ties_by_index() {
        let p = normalize(&[2.0, 5.0, 2.0, 7.0]).unwrap();
        assert_eq!(p.ranking(), vec![4, 2, 1, 3]);
    }

    #[test]
    fn normalize_is_idempotent() {
        let p = normalize(&[0.3, 1.9, 0.44]).unwrap();
        let q = normalize(p.normalized()).unwrap();
        for (a, b) in p.normalized().iter().zip(q.normalized()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}
