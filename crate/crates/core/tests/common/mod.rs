#![allow(dead_code)]

use std::path::PathBuf;

use cxga::{rng_from_seed, Instance, Rounding, SeededRng};
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn data_file(name: &str) -> PathBuf {
    data_dir().join(name)
}

/// Cities uniform in [0, 100)², nint distances.
pub fn random_instance(n: usize, seed: u64) -> Instance {
    let mut rng = rng_from_seed(seed);
    let coords = (0..n)
        .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
        .collect();
    Instance::from_coords(format!("rand{n}-{seed}"), coords, Rounding::Nint).unwrap()
}

pub fn rng(seed: u64) -> SeededRng {
    rng_from_seed(seed)
}

/// Straight-line sum of a closed tour, written independently of the library.
pub fn summed_cost(instance: &Instance, labels: &[u32]) -> f64 {
    let n = labels.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = labels[i] as usize - 1;
        let b = labels[(i + 1) % n] as usize - 1;
        total += instance.cost_matrix().at(a, b);
    }
    total
}
