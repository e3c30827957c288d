//! Permutation chromosomes and closed-tour cost.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tsplib::Instance;

/// Why a label sequence is not a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TourViolation {
    #[error("duplicate label {0}")]
    Duplicate(u32),
    #[error("label {0} out of range")]
    OutOfRange(u32),
    #[error("length {found} does not match {expected} cities")]
    Length { expected: usize, found: usize },
}

/// Checks that `labels` is a permutation of `1..=n`, reporting the first
/// offending label in sequence order.
pub fn validate_tour(labels: &[u32], n: usize) -> Result<(), TourViolation> {
    let mut seen = vec![false; n + 1];
    for &label in labels {
        let idx = label as usize;
        if label == 0 || idx > n {
            return Err(TourViolation::OutOfRange(label));
        }
        if std::mem::replace(&mut seen[idx], true) {
            return Err(TourViolation::Duplicate(label));
        }
    }
    if labels.len() != n {
        return Err(TourViolation::Length {
            expected: n,
            found: labels.len(),
        });
    }
    Ok(())
}

/// A closed tour: a permutation of the 1-based city labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tour(Vec<u32>);

impl Tour {
    /// Checked constructor.
    pub fn new(labels: Vec<u32>, n: usize) -> Result<Self> {
        validate_tour(&labels, n)?;
        Ok(Tour(labels))
    }

    /// Wraps labels produced by an operator that guarantees validity.
    pub(crate) fn from_valid(labels: Vec<u32>) -> Self {
        debug_assert!(
            validate_tour(&labels, labels.len()).is_ok(),
            "operator produced an invalid tour: {labels:?}"
        );
        Tour(labels)
    }

    /// `[1, 2, ..., n]`.
    pub fn identity(n: usize) -> Self {
        Tour((1..=n as u32).collect())
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.0
    }

    pub(crate) fn labels_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn reversed(&self) -> Tour {
        Tour(self.0.iter().rev().copied().collect())
    }

    pub fn rotated(&self, k: usize) -> Tour {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Tour(v)
    }

    /// Closed-tour cost without validation; the caller guarantees the tour
    /// belongs to `instance`.
    #[inline]
    pub fn cost_unchecked(&self, instance: &Instance) -> f64 {
        let labels = &self.0;
        let closing = instance.cost(labels[labels.len() - 1], labels[0]);
        labels
            .windows(2)
            .map(|w| instance.cost(w[0], w[1]))
            .sum::<f64>()
            + closing
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// Sum of consecutive edge costs plus the edge from the last city back to the first.
pub fn tour_cost(tour: &Tour, instance: &Instance) -> Result<f64> {
    validate_tour(tour.labels(), instance.n())?;
    Ok(tour.cost_unchecked(instance))
}

/// Uniform random permutation of `1..=n` (Fisher-Yates).
pub fn random_tour<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tour> {
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "random tour needs at least 3 cities, got {n}"
        )));
    }
    let mut labels: Vec<u32> = (1..=n as u32).collect();
    labels.shuffle(rng);
    Ok(Tour(labels))
}

/// A tour with its cached cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub tour: Tour,
    pub cost: f64,
}

impl Individual {
    /// Evaluates `tour` on `instance`. This does not touch any evaluation
    /// budget; engines count through [`crate::engine::Evaluator`].
    pub fn evaluate(tour: Tour, instance: &Instance) -> Self {
        let cost = tour.cost_unchecked(instance);
        Individual { tour, cost }
    }
}
