//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{data_file, random_instance, rng};
use cxga::exec::map_jobs;
use cxga::experiment::{read_runs_csv, run_experiment, AlgorithmSpec, ExperimentSpec, RUNS_FILE};
use cxga::operators::{mscx_radius_traced, mscx_traced};
use cxga::{
    brute_force_optimum, load_instance, mscx, mscx_radius, random_tour, run_cxga, run_ga, rx,
    validate_tour, CrossoverKind, Execution, GaConfig, HrxConfig, Instance, Rounding, Tour,
};
use rand::Rng;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn ga_config(crossover: CrossoverKind, seed: u64, budget: u64) -> GaConfig {
    GaConfig {
        crossover,
        seed,
        budget,
        ..GaConfig::default()
    }
}

/// Mean best cost of one crossover over seeds `0..seeds`.
fn mean_ga_cost(inst: &Instance, crossover: CrossoverKind, seeds: u64, budget: u64) -> f64 {
    let seeds: Vec<u64> = (0..seeds).collect();
    let costs = map_jobs(Execution::Parallel, &seeds, |&s| {
        run_ga(inst, &ga_config(crossover, s, budget))
            .unwrap()
            .best_cost
    });
    mean(&costs)
}

fn random_parents(n: usize, r: &mut impl Rng) -> (Instance, Tour, Tour) {
    let inst = random_instance(n, r.gen());
    let p1 = random_tour(n, r).unwrap();
    let p2 = random_tour(n, r).unwrap();
    (inst, p1, p2)
}

fn operator_closure() -> Outcome {
    let mut kinds = vec![CrossoverKind::Mscx];
    kinds.extend([1, 2, 5, 10].map(|r| CrossoverKind::MscxRadius { r }));
    kinds.extend([0.0, 10.0, 30.0, 50.0, 100.0].map(|pr| CrossoverKind::Rx { pr }));
    let mut r = rng(1);
    let mut failures = 0;
    for kind in &kinds {
        for _ in 0..10_000 {
            let n = r.gen_range(5..=100);
            let (inst, p1, p2) = random_parents(n, &mut r);
            let children = match *kind {
                CrossoverKind::Mscx => vec![mscx(&p1, &p2, &inst).unwrap()],
                CrossoverKind::MscxRadius { r: radius } => {
                    vec![mscx_radius(&p1, &p2, &inst, radius).unwrap()]
                }
                CrossoverKind::Rx { pr } => {
                    let (a, b) = rx(&p1, &p2, pr, &mut r).unwrap();
                    vec![a, b]
                }
            };
            failures += children
                .iter()
                .filter(|c| validate_tour(c.labels(), n).is_err())
                .count();
        }
    }
    outcome(
        failures == 0,
        format!(
            "{} operator settings x 10000 applications, {failures} invalid",
            kinds.len()
        ),
    )
}

fn all_tours(n: u32) -> Vec<Tour> {
    fn go(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
        }
        for i in 0..rest.len() {
            let c = rest.remove(i);
            prefix.push(c);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, c);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out.into_iter()
        .map(|p| Tour::new(p, n as usize).unwrap())
        .collect()
}

fn operator_identities() -> Outcome {
    let mut r = rng(2);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = r.gen_range(5..=100);
        let (inst, p1, p2) = random_parents(n, &mut r);
        if mscx(&p1, &p1, &inst).unwrap() != p1 {
            bad += 1;
        }
        if rx(&p1, &p2, 100.0, &mut r).unwrap() != (p1.clone(), p2.clone()) {
            bad += 1;
        }
        if rx(&p1, &p2, 0.0, &mut r).unwrap() != (p2.clone(), p1.clone()) {
            bad += 1;
        }
    }
    let perms = all_tours(5);
    let inst = random_instance(5, 2);
    let mut pairs = 0;
    for p1 in &perms {
        for p2 in &perms {
            pairs += 1;
            if mscx_radius(p1, p2, &inst, 1).unwrap() != mscx(p1, p2, &inst).unwrap() {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("3000 random identity checks + {pairs} exhaustive n=5 pairs, {bad} mismatches"),
    )
}

fn fallback_equivalence() -> Outcome {
    let mut r = rng(3);
    let (mut qualifying, mut mismatches, mut tried) = (0, 0, 0);
    while qualifying < 2000 && tried < 200_000 {
        tried += 1;
        let n = r.gen_range(5..=30);
        let (inst, p1, p2) = random_parents(n, &mut r);
        let (a, trace) = mscx_traced(&p1, &p2, &inst).unwrap();
        let radius = r.gen_range(1..=10);
        let (b, radius_trace) = mscx_radius_traced(&p1, &p2, &inst, radius).unwrap();
        if trace.fallbacks == 0 && radius_trace.fallbacks == 0 {
            qualifying += 1;
            if a != b {
                mismatches += 1;
            }
        }
    }
    outcome(
        qualifying >= 1000 && mismatches == 0,
        format!("{qualifying} fallback-free cases of {tried} sampled, {mismatches} mismatches"),
    )
}

fn oracle_equivalence() -> Outcome {
    let jobs: Vec<(usize, u64)> = (0..20).flat_map(|i| (0..10).map(move |s| (i, s))).collect();
    let instances: Vec<(Instance, f64)> = (0..20)
        .map(|i| {
            let inst = random_instance(6 + i % 4, 4_000 + i as u64);
            let opt = brute_force_optimum(&inst).unwrap().0;
            (inst, opt)
        })
        .collect();
    let hits = map_jobs(Execution::Parallel, &jobs, |&(i, s)| {
        let (inst, opt) = &instances[i];
        let preset = AlgorithmSpec::preset("GA3").unwrap();
        let report = preset
            .run(inst, &ga_config(CrossoverKind::Mscx, s, 50_000))
            .unwrap();
        report.best_cost == *opt
    });
    let hit = hits.iter().filter(|&&h| h).count();
    outcome(
        hit * 10 >= jobs.len() * 9,
        format!("{hit}/{} runs reached the optimum", jobs.len()),
    )
}

/// rat99 when supplied through `CXGA_DATA_DIR`, otherwise the bundled kroA100.
fn third_instance() -> PathBuf {
    if let Some(dir) = std::env::var_os("CXGA_DATA_DIR") {
        let p = PathBuf::from(dir).join("rat99.tsp");
        if p.is_file() {
            return p;
        }
    }
    data_file("kroA100.tsp")
}

fn directional_reproduction() -> Outcome {
    let paths = [
        data_file("eil51.tsp"),
        data_file("pr76.tsp"),
        third_instance(),
    ];
    let ga3 = AlgorithmSpec::preset("GA3").unwrap();
    let cxga = AlgorithmSpec::preset("CXGA").unwrap();
    let mut wins = 0;
    let mut lines = Vec::new();
    for path in &paths {
        let inst = load_instance(path, Rounding::Nint).unwrap();
        let seeds: Vec<u64> = (0..10).collect();
        let pairs = map_jobs(Execution::Parallel, &seeds, |&s| {
            let cfg = ga_config(CrossoverKind::Mscx, s, 200_000);
            (
                ga3.run(&inst, &cfg).unwrap().best_cost,
                cxga.run(&inst, &cfg).unwrap().best_cost,
            )
        });
        let base = mean(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
        let chal = mean(&pairs.iter().map(|p| p.1).collect::<Vec<_>>());
        if chal <= base * 1.005 {
            wins += 1;
        }
        lines.push(format!(
            "{} GA3 {base:.1} CXGA {chal:.1} ({:+.2}%)",
            inst.name(),
            100.0 * (base - chal) / base
        ));
    }
    outcome(
        wins >= 2,
        format!("{wins}/3 within tolerance: {}", lines.join("; ")),
    )
}

fn tuning_direction() -> Outcome {
    let inst = load_instance(data_file("eil51.tsp"), Rounding::Nint).unwrap();
    let budget = 100_000;
    let r2 = mean_ga_cost(&inst, CrossoverKind::MscxRadius { r: 2 }, 10, budget);
    let r5 = mean_ga_cost(&inst, CrossoverKind::MscxRadius { r: 5 }, 10, budget);
    let pr10 = mean_ga_cost(&inst, CrossoverKind::Rx { pr: 10.0 }, 10, budget);
    let pr50 = mean_ga_cost(&inst, CrossoverKind::Rx { pr: 50.0 }, 10, budget);
    outcome(
        r2 <= r5 && pr10 <= pr50,
        format!("r=2 {r2:.1} vs r=5 {r5:.1}; pr=10 {pr10:.1} vs pr=50 {pr50:.1}"),
    )
}

fn determinism() -> Outcome {
    let inst = load_instance(data_file("eil51.tsp"), Rounding::Nint).unwrap();
    let mut bad = 0;
    let mut checked = 0;
    for name in ["GA1", "GA2", "GA3", "CXGA"] {
        let alg = AlgorithmSpec::preset(name).unwrap();
        for seed in [0, 7, u64::MAX] {
            let cfg = ga_config(CrossoverKind::Mscx, seed, 20_000);
            let a = alg.run(&inst, &cfg).unwrap();
            let b = alg.run(&inst, &cfg).unwrap();
            checked += 1;
            if !(a.best_cost == b.best_cost
                && a.best_tour == b.best_tour
                && a.evaluations_used == b.evaluations_used)
            {
                bad += 1;
            }
        }
    }
    let columns = |exec| {
        let dir = tempfile::tempdir().unwrap();
        let spec = ExperimentSpec {
            instances: vec![data_file("eil51.tsp"), data_file("pr76.tsp")],
            algorithms: ["GA1", "GA2", "GA3", "CXGA"]
                .iter()
                .map(|a| AlgorithmSpec::preset(a).unwrap())
                .collect(),
            repeats: 2,
            base_seed: 11,
            budget: 5_000,
            output_dir: dir.path().to_path_buf(),
            rounding: Rounding::Nint,
            ga: GaConfig::default(),
            execution: exec,
        };
        run_experiment(&spec).unwrap();
        read_runs_csv(&dir.path().join(RUNS_FILE))
            .unwrap()
            .into_iter()
            .map(|r| (r.instance, r.algorithm, r.seed, r.best_cost, r.evaluations))
            .collect::<Vec<_>>()
    };
    let same_experiment = columns(Execution::Parallel) == columns(Execution::Parallel)
        && columns(Execution::Parallel) == columns(Execution::Sequential);
    outcome(
        bad == 0 && same_experiment,
        format!("{checked} repeated runs, {bad} differing; experiment rerun identical: {same_experiment}"),
    )
}

fn budget_and_size() -> Outcome {
    let mut worst_overshoot: i64 = 0;
    let mut violations = 0;
    let mut runs = 0;
    for (n, budget, ps) in [(20, 3_000, 30), (51, 25_000, 100), (76, 10_007, 64)] {
        let inst = random_instance(n, n as u64);
        for name in ["GA1", "GA2", "GA3", "CXGA"] {
            for seed in 0..3 {
                let cfg = GaConfig {
                    population_size: ps,
                    record_generations: true,
                    ..ga_config(CrossoverKind::Mscx, seed, budget)
                };
                let report = match AlgorithmSpec::preset(name).unwrap().algorithm {
                    cxga::experiment::Algorithm::Ga { crossover } => {
                        run_ga(&inst, &GaConfig { crossover, ..cfg }).unwrap()
                    }
                    cxga::experiment::Algorithm::Cxga { hrx } => {
                        let hrx = HrxConfig {
                            pc_hrx: 25.0,
                            ..hrx
                        };
                        run_cxga(&inst, &cfg, &hrx).unwrap()
                    }
                };
                runs += 1;
                let delta = report.evaluations_used as i64 - budget as i64;
                worst_overshoot = worst_overshoot.max(delta.abs());
                let sizes_ok = report
                    .generation_log
                    .as_ref()
                    .unwrap()
                    .iter()
                    .all(|g| g.population == ps);
                if delta.unsigned_abs() > ps as u64 || !sizes_ok {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{runs} runs, max |evaluations - budget| = {worst_overshoot}, {violations} violations"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "operator closure",
            Duration::from_secs(30),
            operator_closure,
        ),
        (
            "operator identities",
            Duration::from_secs(60),
            operator_identities,
        ),
        (
            "fallback equivalence",
            Duration::from_secs(60),
            fallback_equivalence,
        ),
        (
            "oracle equivalence",
            Duration::from_secs(300),
            oracle_equivalence,
        ),
        (
            "CXGA vs GA3 direction",
            Duration::from_secs(1800),
            directional_reproduction,
        ),
        (
            "tuning-curve direction",
            Duration::from_secs(1200),
            tuning_direction,
        ),
        ("determinism", Duration::from_secs(600), determinism),
        (
            "budget and population size",
            Duration::from_secs(600),
            budget_and_size,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if elapsed > *limit {
            result.pass = false;
            result.detail += &format!("; exceeded {}s limit", limit.as_secs());
        }
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} ({:.1}s) {}",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
