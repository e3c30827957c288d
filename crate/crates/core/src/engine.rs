//! Generational GA loop shared by the single-operator GAs and CXGA.
//!
//! Each generation copies the `elitism` best individuals unchanged and fills
//! the rest with children of uniformly drawn parent pairs: crossover with
//! probability `pc` (otherwise the parents are cloned), then swap mutation.
//! Every newly built or mutated tour costs one evaluation; a run stops at the
//! first generation boundary where the evaluation count reaches the budget.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{mutate, CrossoverKind};
use crate::tour::{random_tour, Individual, Tour};
use crate::tsplib::Instance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_rate: f64,
    /// Per-gene swap probability; `None` means `1 / n`.
    pub mutation_rate: Option<f64>,
    /// Maximum number of cost evaluations.
    pub budget: u64,
    pub crossover: CrossoverKind,
    pub elitism: usize,
    pub seed: u64,
    /// Keep per-generation best/mean/size statistics in the report.
    pub record_generations: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            crossover_rate: 0.9,
            mutation_rate: None,
            budget: 1_000_000,
            crossover: CrossoverKind::Mscx,
            elitism: 1,
            seed: 0,
            record_generations: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let ps = self.population_size;
        if ps < 2 {
            return Err(Error::config(format!(
                "population size must be >= 2, got {ps}"
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::config(format!(
                "crossover rate must be in [0, 1], got {}",
                self.crossover_rate
            )));
        }
        if let Some(pm) = self.mutation_rate {
            if !(0.0..=1.0).contains(&pm) {
                return Err(Error::config(format!(
                    "mutation rate must be in [0, 1], got {pm}"
                )));
            }
        }
        if self.budget < ps as u64 {
            return Err(Error::config(format!(
                "budget {} is smaller than the population size {ps}",
                self.budget
            )));
        }
        if self.elitism >= ps {
            return Err(Error::config(format!(
                "elitism {} must be smaller than the population size {ps}",
                self.elitism
            )));
        }
        self.crossover.validate()
    }

    pub fn mutation_rate_for(&self, n: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / n as f64)
    }
}

/// Counts cost evaluations for one run.
#[derive(Debug)]
pub struct Evaluator<'a> {
    instance: &'a Instance,
    count: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Evaluator { instance, count: 0 }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn evaluate(&mut self, tour: Tour) -> Individual {
        self.count += 1;
        Individual::evaluate(tour, self.instance)
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
    pub population: usize,
    /// Whether this generation was produced by the HRX module.
    pub hrx: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub best_cost: f64,
    pub best_tour: Tour,
    pub evaluations_used: u64,
    pub generations: usize,
    pub wall_seconds: f64,
    pub seed: u64,
    pub generation_log: Option<Vec<GenerationStats>>,
}

impl RunReport {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &RunReport) -> bool {
        self.best_cost.to_bits() == other.best_cost.to_bits()
            && self.best_tour == other.best_tour
            && self.evaluations_used == other.evaluations_used
            && self.generations == other.generations
            && self.seed == other.seed
            && self.generation_log == other.generation_log
    }
}

/// Index pair drawn uniformly; distinct whenever `len >= 2`.
pub(crate) fn pick_pair<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    if len < 2 {
        return (0, 0);
    }
    let i = rng.gen_range(0..len);
    let mut j = rng.gen_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Two parents drawn uniformly at random, at distinct indices when possible.
pub fn select_parents<'p, R: Rng + ?Sized>(
    population: &'p [Individual],
    rng: &mut R,
) -> Result<(&'p Individual, &'p Individual)> {
    if population.is_empty() {
        return Err(Error::config(
            "cannot select parents from an empty population",
        ));
    }
    let (i, j) = pick_pair(population.len(), rng);
    Ok((&population[i], &population[j]))
}

/// Indices of the `k` cheapest individuals, cheapest first; ties keep population order.
pub(crate) fn best_indices(population: &[Individual], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..population.len()).collect();
    idx.sort_by(|&a, &b| {
        population[a]
            .cost
            .total_cmp(&population[b].cost)
            .then(a.cmp(&b))
    });
    idx.truncate(k);
    idx
}

/// State of a single run between generations.
pub(crate) struct GaRun<'a> {
    pub(crate) cfg: &'a GaConfig,
    pub(crate) pm: f64,
    pub(crate) rng: ChaCha8Rng,
    pub(crate) eval: Evaluator<'a>,
    pub(crate) population: Vec<Individual>,
    best: Individual,
    generation: usize,
    log: Option<Vec<GenerationStats>>,
    started: Instant,
}

impl<'a> GaRun<'a> {
    pub(crate) fn start(instance: &'a Instance, cfg: &'a GaConfig) -> Result<Self> {
        cfg.validate()?;
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut eval = Evaluator::new(instance);
        let population = (0..cfg.population_size)
            .map(|_| random_tour(instance.n(), &mut rng).map(|t| eval.evaluate(t)))
            .collect::<Result<Vec<_>>>()?;
        let best = population[best_indices(&population, 1)[0]].clone();
        let mut run = GaRun {
            cfg,
            pm: cfg.mutation_rate_for(instance.n()),
            rng,
            eval,
            population,
            best,
            generation: 0,
            log: cfg.record_generations.then(Vec::new),
            started,
        };
        run.record(false);
        Ok(run)
    }

    pub(crate) fn done(&self) -> bool {
        self.eval.count() >= self.cfg.budget
    }

    pub(crate) fn elites(&self) -> Vec<Individual> {
        best_indices(&self.population, self.cfg.elitism)
            .into_iter()
            .map(|i| self.population[i].clone())
            .collect()
    }

    /// One ordinary generation with the given crossover.
    pub(crate) fn breed(&mut self, crossover: CrossoverKind) -> Vec<Individual> {
        let ps = self.cfg.population_size;
        let instance = self.eval.instance();
        let mut next = self.elites();
        let mut kids: Vec<(Tour, Option<f64>)> = Vec::with_capacity(2);
        let mut crossed = Vec::with_capacity(2);

        while next.len() < ps {
            let (i, j) = pick_pair(ps, &mut self.rng);
            let (a, b) = (&self.population[i], &self.population[j]);
            kids.clear();
            if self.rng.gen_bool(self.cfg.crossover_rate) {
                crossed.clear();
                crossover.apply_into(&a.tour, &b.tour, instance, &mut self.rng, &mut crossed);
                kids.extend(crossed.drain(..).map(|t| (t, None)));
            } else {
                kids.push((a.tour.clone(), Some(a.cost)));
                if crossover.offspring_per_application() == 2 {
                    kids.push((b.tour.clone(), Some(b.cost)));
                }
            }
            let room = ps - next.len();
            for (mut tour, cached) in kids.drain(..).take(room) {
                let swaps = mutate(&mut tour, self.pm, &mut self.rng);
                let child = match cached {
                    Some(cost) if swaps == 0 => Individual { tour, cost },
                    _ => self.eval.evaluate(tour),
                };
                next.push(child);
            }
        }
        next
    }

    /// Installs the next generation.
    pub(crate) fn advance(&mut self, next: Vec<Individual>, hrx: bool) {
        assert_eq!(
            next.len(),
            self.cfg.population_size,
            "population size must be preserved across generations"
        );
        self.population = next;
        self.generation += 1;
        let best = &self.population[best_indices(&self.population, 1)[0]];
        if best.cost < self.best.cost {
            self.best = best.clone();
        }
        self.record(hrx);
    }

    fn record(&mut self, hrx: bool) {
        if let Some(log) = self.log.as_mut() {
            let mean =
                self.population.iter().map(|i| i.cost).sum::<f64>() / self.population.len() as f64;
            log.push(GenerationStats {
                generation: self.generation,
                best: self.best.cost,
                mean,
                population: self.population.len(),
                hrx,
            });
        }
    }

    pub(crate) fn generation(&self) -> usize {
        self.generation
    }

    pub(crate) fn finish(self) -> RunReport {
        debug_assert!(crate::tour::validate_tour(
            self.best.tour.labels(),
            self.eval.instance().n()
        )
        .is_ok());
        RunReport {
            best_cost: self.best.cost,
            best_tour: self.best.tour,
            evaluations_used: self.eval.count(),
            generations: self.generation,
            wall_seconds: self.started.elapsed().as_secs_f64(),
            seed: self.cfg.seed,
            generation_log: self.log,
        }
    }
}

/// Runs a GA with the configured crossover until the evaluation budget is spent.
pub fn run_ga(instance: &Instance, config: &GaConfig) -> Result<RunReport> {
    let mut run = GaRun::start(instance, config)?;
    while !run.done() {
        let next = run.breed(config.crossover);
        run.advance(next, false);
    }
    Ok(run.finish())
}
