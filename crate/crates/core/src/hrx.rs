//! The HRX combination mechanism and the CXGA algorithm built on it.
//!
//! HRX sorts the population, splits it into a best part and a rest part and
//! evolves them separately for `ng` generations: the best part with a mix of
//! RX and MSCX_Radius, the rest with MSCX. The two lineages are merged at the
//! end. CXGA is the ordinary generational GA in which some generations are
//! produced by HRX instead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{pick_pair, Evaluator, GaConfig, GaRun, RunReport};
use crate::error::{Error, Result};
use crate::operators::{mutate, CrossoverKind};
use crate::tour::{Individual, Tour};
use crate::tsplib::Instance;

/// When CXGA hands a generation to HRX.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HrxSchedule {
    /// Every `round(100 / pc_hrx)`-th generation.
    #[default]
    Periodic,
    /// Each generation independently with probability `pc_hrx / 100`.
    Bernoulli,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HrxConfig {
    /// Share of the population (best first) forming the first part, in percent.
    pub first_part_pct: f64,
    /// Share of the first part bred with RX, in percent.
    pub prx: f64,
    /// RX selection percentage.
    pub pr: f64,
    /// MSCX_Radius candidate count.
    pub r: usize,
    /// Generations per HRX invocation.
    pub ng: usize,
    /// Percentage of outer generations produced by HRX.
    pub pc_hrx: f64,
    pub schedule: HrxSchedule,
}

impl Default for HrxConfig {
    fn default() -> Self {
        HrxConfig {
            first_part_pct: 90.0,
            prx: 40.0,
            pr: 30.0,
            r: 5,
            ng: 1,
            pc_hrx: 15.0,
            schedule: HrxSchedule::Periodic,
        }
    }
}

impl HrxConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("first_part_pct", self.first_part_pct),
            ("prx", self.prx),
            ("pr", self.pr),
            ("pc_hrx", self.pc_hrx),
        ] {
            if !(0.0..=100.0).contains(&v) {
                return Err(Error::config(format!(
                    "{name} must be in [0, 100], got {v}"
                )));
            }
        }
        if self.r < 1 {
            return Err(Error::config(format!("r must be >= 1, got {}", self.r)));
        }
        if self.ng < 1 {
            return Err(Error::config("ng must be >= 1"));
        }
        Ok(())
    }

    /// Generation period of the periodic schedule; `None` when HRX never fires.
    pub fn period(&self) -> Option<usize> {
        (self.pc_hrx > 0.0).then(|| ((100.0 / self.pc_hrx).round() as usize).max(1))
    }
}

/// Size of the first part: `round(pct * len / 100)`, clamped so both parts are non-empty.
pub fn first_part_size(len: usize, first_part_pct: f64) -> usize {
    let raw = (first_part_pct * len as f64 / 100.0).round() as usize;
    let clamped = raw.clamp(1, len.saturating_sub(1).max(1));
    if clamped != raw {
        log::warn!(
            "first part of {first_part_pct}% of {len} individuals clamped from {raw} to {clamped}"
        );
    }
    clamped
}

/// Sorts by cost and splits into (best part, rest).
pub fn split_population(
    population: &[Individual],
    first_part_pct: f64,
) -> Result<(Vec<Individual>, Vec<Individual>)> {
    if population.len() < 2 {
        return Err(Error::config(format!(
            "cannot split a population of {}",
            population.len()
        )));
    }
    let mut sorted = population.to_vec();
    sorted.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    let rest = sorted.split_off(first_part_size(population.len(), first_part_pct));
    Ok((sorted, rest))
}

/// Number of first-part offspring produced by RX: `prx%` of the part rounded
/// to the nearest even number, never more than the part holds.
pub fn rx_share(first_part_len: usize, prx: f64) -> usize {
    let raw = prx * first_part_len as f64 / 100.0;
    let even = 2 * (raw / 2.0).round() as usize;
    even.min(first_part_len - first_part_len % 2)
}

/// The two lineages produced by one HRX invocation.
#[derive(Debug, Clone)]
pub struct HrxParts {
    /// Descendants of the best part (RX and MSCX_Radius).
    pub first: Vec<Individual>,
    /// Descendants of the rest (MSCX).
    pub second: Vec<Individual>,
}

impl HrxParts {
    pub fn merge(mut self) -> Vec<Individual> {
        self.first.append(&mut self.second);
        self.first
    }
}

fn offspring<R: Rng + ?Sized>(
    tour: Tour,
    pm: f64,
    rng: &mut R,
    eval: &mut Evaluator<'_>,
    out: &mut Vec<Individual>,
) {
    let mut tour = tour;
    mutate(&mut tour, pm, rng);
    out.push(eval.evaluate(tour));
}

/// Runs HRX and returns both lineages separately.
pub fn hrx_parts<R: Rng + ?Sized>(
    population: &[Individual],
    cfg: &HrxConfig,
    pm: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<HrxParts> {
    cfg.validate()?;
    let instance = eval.instance();
    let (mut first, mut second) = split_population(population, cfg.first_part_pct)?;
    let in_rx = rx_share(first.len(), cfg.prx);
    let rx = CrossoverKind::Rx { pr: cfg.pr };
    let radius = CrossoverKind::MscxRadius { r: cfg.r };
    let mut scratch = Vec::with_capacity(2);

    for _ in 0..cfg.ng {
        let mut next_first = Vec::with_capacity(first.len());
        for _ in 0..in_rx / 2 {
            let (i, j) = pick_pair(first.len(), rng);
            scratch.clear();
            rx.apply_into(&first[i].tour, &first[j].tour, instance, rng, &mut scratch);
            for child in scratch.drain(..) {
                offspring(child, pm, rng, eval, &mut next_first);
            }
        }
        for _ in 0..first.len() - in_rx {
            let (i, j) = pick_pair(first.len(), rng);
            scratch.clear();
            radius.apply_into(&first[i].tour, &first[j].tour, instance, rng, &mut scratch);
            for child in scratch.drain(..) {
                offspring(child, pm, rng, eval, &mut next_first);
            }
        }

        let mut next_second = Vec::with_capacity(second.len());
        for _ in 0..second.len() {
            let (i, j) = pick_pair(second.len(), rng);
            scratch.clear();
            CrossoverKind::Mscx.apply_into(
                &second[i].tour,
                &second[j].tour,
                instance,
                rng,
                &mut scratch,
            );
            for child in scratch.drain(..) {
                offspring(child, pm, rng, eval, &mut next_second);
            }
        }

        debug_assert_eq!(next_first.len(), first.len());
        debug_assert_eq!(next_second.len(), second.len());
        first = next_first;
        second = next_second;
    }

    Ok(HrxParts { first, second })
}

/// HRX on a population; the result has the same size.
pub fn hrx<R: Rng + ?Sized>(
    population: &[Individual],
    cfg: &HrxConfig,
    pm: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    hrx_parts(population, cfg, pm, eval, rng).map(HrxParts::merge)
}

/// CXGA: the generational GA with `ga.crossover` (MSCX in the standard
/// preset) where scheduled generations are produced by HRX. Elites of the
/// previous generation replace the worst HRX offspring.
pub fn run_cxga(instance: &Instance, ga: &GaConfig, hrx_cfg: &HrxConfig) -> Result<RunReport> {
    hrx_cfg.validate()?;
    let mut run = GaRun::start(instance, ga)?;
    let period = hrx_cfg.period();
    let mut schedule_rng = ChaCha8Rng::seed_from_u64(ga.seed);
    schedule_rng.set_stream(1);

    while !run.done() {
        let generation = run.generation() + 1;
        let fires = match hrx_cfg.schedule {
            HrxSchedule::Periodic => period.is_some_and(|p| generation % p == 0),
            HrxSchedule::Bernoulli => {
                hrx_cfg.pc_hrx > 0.0 && schedule_rng.gen_bool(hrx_cfg.pc_hrx / 100.0)
            }
        };
        if fires {
            let elites = run.elites();
            let mut next = hrx(
                &run.population,
                hrx_cfg,
                run.pm,
                &mut run.eval,
                &mut run.rng,
            )?;
            if !elites.is_empty() {
                next.sort_by(|a, b| a.cost.total_cmp(&b.cost));
                next.truncate(ga.population_size - elites.len());
                next.splice(0..0, elites);
            }
            run.advance(next, true);
        } else {
            let next = run.breed(ga.crossover);
            run.advance(next, false);
        }
    }
    Ok(run.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tour::random_tour;
    use crate::tsplib::Rounding;

    fn instance(n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n)
            .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        Instance::from_coords("rand", coords, Rounding::Nint).unwrap()
    }

    fn population(inst: &Instance, size: usize, seed: u64) -> Vec<Individual> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..size)
            .map(|_| Individual::evaluate(random_tour(inst.n(), &mut rng).unwrap(), inst))
            .collect()
    }

    #[test]
    fn split_sizes() {
        let inst = instance(10, 1);
        let pop = population(&inst, 100, 2);
        let (p1, p2) = split_population(&pop, 90.0).unwrap();
        assert_eq!((p1.len(), p2.len()), (90, 10));
        let worst_first = p1.iter().map(|i| i.cost).fold(f64::MIN, f64::max);
        let best_rest = p2.iter().map(|i| i.cost).fold(f64::MAX, f64::min);
        assert!(worst_first <= best_rest);

        let (p1, p2) = split_population(&pop[..2], 90.0).unwrap();
        assert_eq!((p1.len(), p2.len()), (1, 1));
        let (p1, p2) = split_population(&pop[..10], 0.0).unwrap();
        assert_eq!((p1.len(), p2.len()), (1, 9));
        assert!(split_population(&pop[..1], 50.0).is_err());
    }

    #[test]
    fn rx_share_rounds_to_even() {
        assert_eq!(rx_share(90, 40.0), 36);
        assert_eq!(rx_share(9, 40.0), 4); // 3.6 -> 4
        assert_eq!(rx_share(9, 100.0), 8);
        assert_eq!(rx_share(10, 0.0), 0);
        assert_eq!(rx_share(5, 30.0), 2); // 1.5 -> 2
    }

    #[test]
    fn schedule_period() {
        let cfg = HrxConfig::default();
        assert_eq!(cfg.period(), Some(7));
        assert_eq!(
            HrxConfig {
                pc_hrx: 100.0,
                ..cfg.clone()
            }
            .period(),
            Some(1)
        );
        assert_eq!(HrxConfig { pc_hrx: 0.0, ..cfg }.period(), None);
    }

    #[test]
    fn config_errors() {
        assert!(HrxConfig {
            ng: 0,
            ..HrxConfig::default()
        }
        .validate()
        .is_err());
        assert!(HrxConfig {
            r: 0,
            ..HrxConfig::default()
        }
        .validate()
        .is_err());
        assert!(HrxConfig {
            prx: 101.0,
            ..HrxConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn hrx_preserves_size_and_counts_evaluations() {
        let inst = instance(20, 3);
        let pop = population(&inst, 100, 4);
        let mut eval = Evaluator::new(&inst);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = HrxConfig {
            ng: 3,
            ..HrxConfig::default()
        };
        let parts = hrx_parts(&pop, &cfg, 0.05, &mut eval, &mut rng).unwrap();
        assert_eq!(parts.first.len(), 90);
        assert_eq!(parts.second.len(), 10);
        assert_eq!(eval.count(), 300);
    }
}
