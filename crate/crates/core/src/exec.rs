//! Data-parallel map over independent jobs.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs jobs on
//! the rayon pool; without it every execution mode is sequential. Results are
//! always returned in input order, so outputs never depend on scheduling.

use serde::{Deserialize, Serialize};

use crate::tour::{Individual, Tour};
use crate::tsplib::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this mode actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_jobs<T, U, F>(execution: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = execution;
    items.iter().map(f).collect()
}

/// Evaluates a batch of tours without touching any run's evaluation counter.
pub fn evaluate_batch(
    execution: Execution,
    instance: &Instance,
    tours: &[Tour],
) -> Vec<Individual> {
    map_jobs(execution, tours, |t| {
        Individual::evaluate(t.clone(), instance)
    })
}
