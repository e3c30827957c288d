//! Exhaustive optimum for tiny instances, used as ground truth in tests.

use crate::error::{Error, Result};
use crate::tour::Tour;
use crate::tsplib::Instance;

/// Largest instance [`brute_force_optimum`] accepts: (11 - 1)! / 2 ≈ 1.8M tours.
pub const ORACLE_MAX_CITIES: usize = 11;

struct Search<'a> {
    instance: &'a Instance,
    n: usize,
    path: Vec<u32>,
    used: Vec<bool>,
    best_cost: f64,
    best: Vec<u32>,
}

impl Search<'_> {
    fn extend(&mut self, partial: f64) {
        if partial > self.best_cost {
            return;
        }
        let last = *self.path.last().expect("path starts at city 1");
        if self.path.len() == self.n {
            // one orientation per cycle: second city below the last one
            if self.path[1] > last {
                return;
            }
            let total = partial + self.instance.cost(last, 1);
            if total < self.best_cost {
                self.best_cost = total;
                self.best.clone_from(&self.path);
            }
            return;
        }
        for city in 2..=self.n as u32 {
            if self.used[city as usize] {
                continue;
            }
            self.used[city as usize] = true;
            self.path.push(city);
            self.extend(partial + self.instance.cost(last, city));
            self.path.pop();
            self.used[city as usize] = false;
        }
    }
}

/// Minimum-cost tour by enumerating every cycle with city 1 first and one
/// orientation. Ties resolve to the lexicographically first tour. The
/// returned cost is recomputed from the returned tour.
pub fn brute_force_optimum(instance: &Instance) -> Result<(f64, Tour)> {
    let n = instance.n();
    if n > ORACLE_MAX_CITIES {
        return Err(Error::TooLargeForOracle {
            n,
            cap: ORACLE_MAX_CITIES,
        });
    }
    let mut search = Search {
        instance,
        n,
        path: Vec::with_capacity(n),
        used: vec![false; n + 1],
        best_cost: f64::INFINITY,
        best: Vec::new(),
    };
    search.path.push(1);
    search.used[1] = true;
    search.extend(0.0);

    let tour = Tour::new(search.best, n)?;
    let cost = tour.cost_unchecked(instance);
    Ok((cost, tour))
}
