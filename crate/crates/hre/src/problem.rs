//! Ranking problems with a reference set: a judgment matrix plus known
//! priorities for some concepts, with the internal reordering that places
//! unknown concepts first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::PcMatrix;

/// Known priorities for the reference concepts, keyed by 1-based concept
/// index. At least one concept must be known and at least one unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceAssignment {
    known: BTreeMap<usize, f64>,
}

impl ReferenceAssignment {
    pub fn new(known: BTreeMap<usize, f64>) -> Result<Self> {
        if known.is_empty() {
            return Err(Error::EmptyReference);
        }
        for (&index, &value) in &known {
            if index == 0 {
                return Err(Error::ReferenceOutOfRange { index, n: 0 });
            }
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::BadReference { index, value });
            }
        }
        Ok(Self { known })
    }

    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }

    /// Priority of a known concept (1-based index).
    pub fn get(&self, index: usize) -> Option<f64> {
        self.known.get(&index).copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.known.contains_key(&index)
    }

    /// Known (1-based index, value) pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.known.iter().map(|(&i, &v)| (i, v))
    }

    /// Returns a copy with every known value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.known.iter().map(|(&i, &v)| (i, v * factor)).collect())
    }
}

/// A judgment matrix paired with a reference assignment.
///
/// The unknown concepts come first in the internal order (each kind sorted by
/// concept index); the inverse permutation restores original order for
/// output.
#[derive(Debug, Clone, PartialEq)]
pub struct HreProblem {
    matrix: PcMatrix,
    reference: ReferenceAssignment,
    /// order[p] = 0-based original concept at internal position p.
    order: Vec<usize>,
    /// position[c] = internal position of 0-based original concept c.
    position: Vec<usize>,
}

impl HreProblem {
    pub fn new(matrix: PcMatrix, reference: ReferenceAssignment) -> Result<Self> {
        let n = matrix.n();
        for (index, _) in reference.iter() {
            if index > n {
                return Err(Error::ReferenceOutOfRange { index, n });
            }
        }
        if reference.len() >= n {
            return Err(Error::NoUnknowns { n });
        }

        let mut order: Vec<usize> = (0..n).filter(|c| !reference.contains(c + 1)).collect();
        order.extend((0..n).filter(|c| reference.contains(c + 1)));
        let mut position = vec![0usize; n];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }
        Ok(Self {
            matrix,
            reference,
            order,
            position,
        })
    }

    pub fn matrix(&self) -> &PcMatrix {
        &self.matrix
    }

    pub fn reference(&self) -> &ReferenceAssignment {
        &self.reference
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Number of unknown concepts.
    pub fn unknown_count(&self) -> usize {
        self.n() - self.reference.len()
    }

    /// 1-based indices of the unknown concepts, ascending.
    pub fn unknown_indices(&self) -> Vec<usize> {
        self.order[..self.unknown_count()]
            .iter()
            .map(|&c| c + 1)
            .collect()
    }

    /// 0-based original concept at internal position `p` (unknowns first).
    pub(crate) fn concept_at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Merges solved unknown values (in internal order) with the known
    /// reference values, restoring original concept order.
    pub(crate) fn merge(&self, unknown_values: &[f64]) -> Vec<f64> {
        let n = self.n();
        let k = self.unknown_count();
        debug_assert_eq!(unknown_values.len(), k);
        let mut full = vec![0.0; n];
        for (p, &v) in unknown_values.iter().enumerate() {
            full[self.order[p]] = v;
        }
        for (index, value) in self.reference.iter() {
            full[index - 1] = value;
        }
        full
    }

    /// Internal position of 0-based concept `c`.
    #[cfg(test)]
    pub(crate) fn position_of(&self, c: usize) -> usize {
        self.position[c]
    }
}
