//! Crossover and mutation operators on [`Tour`]s.

mod mutation;
mod rx;
mod sequential;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use mutation::mutate;
pub use rx::{rx, rx_offspring, rx_selection_size};
pub use sequential::{mscx, mscx_radius, mscx_radius_traced, mscx_traced, Trace};

use crate::error::{Error, Result};
use crate::tour::Tour;
use crate::tsplib::Instance;

/// Crossover operator used by a GA.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossoverKind {
    Mscx,
    MscxRadius {
        r: usize,
    },
    /// `pr` is the percentage of cities copied position-wise from the first parent.
    Rx {
        pr: f64,
    },
}

impl CrossoverKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CrossoverKind::Mscx => Ok(()),
            CrossoverKind::MscxRadius { r } if r >= 1 => Ok(()),
            CrossoverKind::MscxRadius { r } => {
                Err(Error::config(format!("MSCX_Radius needs r >= 1, got {r}")))
            }
            CrossoverKind::Rx { pr } if (0.0..=100.0).contains(&pr) => Ok(()),
            CrossoverKind::Rx { pr } => {
                Err(Error::config(format!("RX needs 0 <= pr <= 100, got {pr}")))
            }
        }
    }

    /// Number of offspring one application produces.
    pub fn offspring_per_application(&self) -> usize {
        match self {
            CrossoverKind::Rx { .. } => 2,
            _ => 1,
        }
    }

    /// Applies the operator to valid parents, pushing offspring onto `out`.
    pub(crate) fn apply_into<R: Rng + ?Sized>(
        &self,
        p1: &Tour,
        p2: &Tour,
        instance: &Instance,
        rng: &mut R,
        out: &mut Vec<Tour>,
    ) {
        match *self {
            CrossoverKind::Mscx => {
                out.push(sequential::construct(p1, p2, instance, sequential::Fallback::Mscx).0)
            }
            CrossoverKind::MscxRadius { r } => {
                out.push(sequential::construct(p1, p2, instance, sequential::Fallback::Radius(r)).0)
            }
            CrossoverKind::Rx { pr } => {
                let (a, b) = rx::rx_unchecked(p1, p2, pr, rng);
                out.push(a);
                out.push(b);
            }
        }
    }
}

impl fmt::Display for CrossoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossoverKind::Mscx => write!(f, "MSCX"),
            CrossoverKind::MscxRadius { r } => write!(f, "MSCX_Radius(r={r})"),
            CrossoverKind::Rx { pr } => write!(f, "RX(pr={pr}%)"),
        }
    }
}

fn check_parents(p1: &Tour, p2: &Tour, n: usize) -> Result<()> {
    crate::tour::validate_tour(p1.labels(), n)?;
    crate::tour::validate_tour(p2.labels(), n)?;
    Ok(())
}
