//! Genetic algorithms for the symmetric Euclidean TSP.
//!
//! * [`tsplib`]: EUC_2D TSPLIB reader and cost matrices.
//! * [`tour`]: permutation chromosomes, closed-tour cost, validation.
//! * [`operators`]: MSCX, MSCX_Radius, RX crossovers and swap mutation.
//! * [`engine`]: the generational GA loop (GA1/GA2/GA3).
//! * [`hrx`]: the HRX combination module and CXGA.
//! * [`oracle`]: brute-force optimum for tiny instances.
//! * [`experiment`]: multi-seed benchmark harness and reports.
//! * [`exec`]: parallel or sequential execution of independent jobs.
//!
//! City labels are 1-based everywhere in the public API.

pub mod engine;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod hrx;
pub mod operators;
pub mod oracle;
pub mod tour;
pub mod tsplib;

pub use engine::{run_ga, select_parents, Evaluator, GaConfig, GenerationStats, RunReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hrx::{hrx, run_cxga, split_population, HrxConfig, HrxSchedule};
pub use operators::{mscx, mscx_radius, mutate, rx, CrossoverKind};
pub use oracle::brute_force_optimum;
pub use tour::{random_tour, tour_cost, validate_tour, Individual, Tour, TourViolation};
pub use tsplib::{build_cost_matrix, load_instance, parse_instance, Instance, Rounding};

/// The seeded random stream used throughout the crate.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// A fresh stream for `seed`.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    <SeededRng as rand::SeedableRng>::seed_from_u64(seed)
}
