//! Multi-seed benchmark harness: named algorithm presets, experiment specs,
//! per-run CSV and aggregate JSON/CSV reports, and head-to-head comparison.
//!
//! Output files written into the experiment's output directory:
//!
//! * `runs.csv`: one row per run with columns
//!   `instance,algorithm,seed,best_cost,evaluations,wall_seconds,budget`.
//! * `aggregate.json`: the full [`AggregateReport`].
//! * `aggregate.csv`: one row per (instance, algorithm) with
//!   `instance,name,n,algorithm,runs,min_cost,mean_cost,std_cost,mean_runtime_seconds`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::engine::{run_ga, GaConfig, RunReport};
use crate::error::{Error, Result};
use crate::exec::{map_jobs, Execution};
use crate::hrx::{run_cxga, HrxConfig, HrxSchedule};
use crate::operators::CrossoverKind;
use crate::tsplib::{load_instance, Instance, Rounding};

pub const RUNS_FILE: &str = "runs.csv";
pub const AGGREGATE_JSON: &str = "aggregate.json";
pub const AGGREGATE_CSV: &str = "aggregate.csv";

/// What an algorithm runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Algorithm {
    Ga { crossover: CrossoverKind },
    Cxga { hrx: HrxConfig },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSpec {
    pub name: String,
    pub algorithm: Algorithm,
}

pub const PRESET_NAMES: [&str; 4] = ["GA1", "GA2", "GA3", "CXGA"];

impl AlgorithmSpec {
    /// GA1 = MSCX_Radius(r = 2), GA2 = RX(pr = 10), GA3 = MSCX,
    /// CXGA = MSCX with HRX at (90, 40, 30, 5, 1, 15).
    pub fn preset(name: &str) -> Result<Self> {
        let algorithm = match name.to_ascii_uppercase().as_str() {
            "GA1" => Algorithm::Ga {
                crossover: CrossoverKind::MscxRadius { r: 2 },
            },
            "GA2" => Algorithm::Ga {
                crossover: CrossoverKind::Rx { pr: 10.0 },
            },
            "GA3" => Algorithm::Ga {
                crossover: CrossoverKind::Mscx,
            },
            "CXGA" => Algorithm::Cxga {
                hrx: HrxConfig::default(),
            },
            _ => {
                return Err(Error::UnknownAlgorithm {
                    name: name.to_string(),
                    available: PRESET_NAMES.iter().map(|s| s.to_string()).collect(),
                })
            }
        };
        Ok(AlgorithmSpec {
            name: name.to_ascii_uppercase(),
            algorithm,
        })
    }

    pub fn validate(&self) -> Result<()> {
        match &self.algorithm {
            Algorithm::Ga { crossover } => crossover.validate(),
            Algorithm::Cxga { hrx } => hrx.validate(),
        }
    }

    /// Runs once. `base` supplies population size, rates, elitism, budget
    /// and seed; the crossover comes from the algorithm (MSCX for CXGA).
    pub fn run(&self, instance: &Instance, base: &GaConfig) -> Result<RunReport> {
        match &self.algorithm {
            Algorithm::Ga { crossover } => {
                let cfg = GaConfig {
                    crossover: *crossover,
                    ..base.clone()
                };
                run_ga(instance, &cfg)
            }
            Algorithm::Cxga { hrx } => {
                let cfg = GaConfig {
                    crossover: CrossoverKind::Mscx,
                    ..base.clone()
                };
                run_cxga(instance, &cfg, hrx)
            }
        }
    }
}

/// A complete experiment: every algorithm on every instance, `repeats` times.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub instances: Vec<PathBuf>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub repeats: usize,
    pub base_seed: u64,
    pub budget: u64,
    pub output_dir: PathBuf,
    pub rounding: Rounding,
    /// Population size, rates and elitism; crossover, budget and seed are overridden per run.
    pub ga: GaConfig,
    pub execution: Execution,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::config("experiment lists no instances"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::config("experiment lists no algorithms"));
        }
        if self.repeats < 1 {
            return Err(Error::config("repeats must be >= 1"));
        }
        let mut names = BTreeSet::new();
        for a in &self.algorithms {
            if !names.insert(a.name.as_str()) {
                return Err(Error::config(format!(
                    "duplicate algorithm name `{}`",
                    a.name
                )));
            }
            a.validate()?;
        }
        self.run_config(0).validate()
    }

    fn run_config(&self, seed: u64) -> GaConfig {
        GaConfig {
            budget: self.budget,
            seed,
            record_generations: false,
            ..self.ga.clone()
        }
    }

    /// Parses a TOML experiment file. Relative paths are resolved against
    /// the file's directory.
    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml_str(&text, base)
    }

    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let file: ExperimentFile =
            toml::from_str(text).map_err(|e| Error::config(format!("experiment file: {e}")))?;
        file.into_spec(base_dir)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    instances: Vec<PathBuf>,
    algorithms: Vec<AlgorithmEntry>,
    #[serde(default = "default_repeats")]
    repeats: usize,
    #[serde(default)]
    base_seed: u64,
    #[serde(default = "default_budget")]
    budget: u64,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    #[serde(default)]
    rounding: Rounding,
    #[serde(default)]
    execution: Execution,
    #[serde(default)]
    ga: GaSection,
    #[serde(default)]
    hrx: HrxSection,
}

fn default_repeats() -> usize {
    10
}

fn default_budget() -> u64 {
    1_000_000
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaSection {
    population_size: Option<usize>,
    crossover_rate: Option<f64>,
    mutation_rate: Option<f64>,
    elitism: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct HrxSection {
    first_part_pct: Option<f64>,
    prx: Option<f64>,
    pr: Option<f64>,
    r: Option<usize>,
    ng: Option<usize>,
    pc_hrx: Option<f64>,
    schedule: Option<HrxSchedule>,
    /// Accepted so published parameter sets load unchanged; it has no
    /// defined meaning and is ignored.
    pn: Option<f64>,
}

impl HrxSection {
    fn apply(&self, hrx: &mut HrxConfig) {
        if let Some(v) = self.first_part_pct {
            hrx.first_part_pct = v;
        }
        if let Some(v) = self.prx {
            hrx.prx = v;
        }
        if let Some(v) = self.pr {
            hrx.pr = v;
        }
        if let Some(v) = self.r {
            hrx.r = v;
        }
        if let Some(v) = self.ng {
            hrx.ng = v;
        }
        if let Some(v) = self.pc_hrx {
            hrx.pc_hrx = v;
        }
        if let Some(v) = self.schedule {
            hrx.schedule = v;
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AlgorithmEntry {
    Preset(String),
    Custom(CustomAlgorithm),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomAlgorithm {
    name: String,
    /// Defaults to `name`.
    preset: Option<String>,
    r: Option<usize>,
    pr: Option<f64>,
    first_part_pct: Option<f64>,
    prx: Option<f64>,
    ng: Option<usize>,
    pc_hrx: Option<f64>,
}

impl CustomAlgorithm {
    fn into_spec(self, hrx_defaults: &HrxSection) -> Result<AlgorithmSpec> {
        let mut spec = AlgorithmSpec::preset(self.preset.as_deref().unwrap_or(&self.name))?;
        spec.name = self.name;
        match &mut spec.algorithm {
            Algorithm::Ga { crossover } => {
                match crossover {
                    CrossoverKind::MscxRadius { r } => {
                        if let Some(v) = self.r {
                            *r = v;
                        }
                    }
                    CrossoverKind::Rx { pr } => {
                        if let Some(v) = self.pr {
                            *pr = v;
                        }
                    }
                    CrossoverKind::Mscx => {}
                }
                if self.first_part_pct.is_some()
                    || self.prx.is_some()
                    || self.ng.is_some()
                    || self.pc_hrx.is_some()
                {
                    return Err(Error::config(format!(
                        "algorithm `{}`: HRX parameters only apply to CXGA",
                        spec.name
                    )));
                }
            }
            Algorithm::Cxga { hrx } => {
                hrx_defaults.apply(hrx);
                if let Some(v) = self.r {
                    hrx.r = v;
                }
                if let Some(v) = self.pr {
                    hrx.pr = v;
                }
                if let Some(v) = self.first_part_pct {
                    hrx.first_part_pct = v;
                }
                if let Some(v) = self.prx {
                    hrx.prx = v;
                }
                if let Some(v) = self.ng {
                    hrx.ng = v;
                }
                if let Some(v) = self.pc_hrx {
                    hrx.pc_hrx = v;
                }
            }
        }
        Ok(spec)
    }
}

impl ExperimentFile {
    fn into_spec(self, base_dir: &Path) -> Result<ExperimentSpec> {
        if self.hrx.pn.is_some() {
            log::warn!("HRX parameter `pn` has no defined meaning and is ignored");
        }
        let algorithms = self
            .algorithms
            .into_iter()
            .map(|entry| match entry {
                AlgorithmEntry::Preset(name) => {
                    let mut spec = AlgorithmSpec::preset(&name)?;
                    if let Algorithm::Cxga { hrx } = &mut spec.algorithm {
                        self.hrx.apply(hrx);
                    }
                    Ok(spec)
                }
                AlgorithmEntry::Custom(custom) => custom.into_spec(&self.hrx),
            })
            .collect::<Result<Vec<_>>>()?;
        let defaults = GaConfig::default();
        let ga = GaConfig {
            population_size: self.ga.population_size.unwrap_or(defaults.population_size),
            crossover_rate: self.ga.crossover_rate.unwrap_or(defaults.crossover_rate),
            mutation_rate: self.ga.mutation_rate.or(defaults.mutation_rate),
            elitism: self.ga.elitism.unwrap_or(defaults.elitism),
            ..defaults
        };
        let spec = ExperimentSpec {
            instances: self
                .instances
                .into_iter()
                .map(|p| base_dir.join(p))
                .collect(),
            algorithms,
            repeats: self.repeats,
            base_seed: self.base_seed,
            budget: self.budget,
            output_dir: base_dir.join(self.output_dir),
            rounding: self.rounding,
            ga,
            execution: self.execution,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// 64-bit FNV-1a; stable across platforms and toolchains.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of run `k` of `algorithm` on `instance`: `base ^ hash(algorithm, instance, k)`.
pub fn run_seed(base_seed: u64, algorithm: &str, instance: &str, k: usize) -> u64 {
    base_seed ^ fnv1a(format!("{algorithm}\0{instance}\0{k}").as_bytes())
}

/// One row of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub best_cost: f64,
    pub evaluations: u64,
    pub wall_seconds: f64,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub path: String,
    pub name: String,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateEntry {
    pub instance: String,
    pub algorithm: String,
    pub runs: usize,
    pub min_cost: f64,
    pub mean_cost: f64,
    /// Sample standard deviation of the per-run best costs (0 for a single run).
    pub std_cost: f64,
    pub mean_runtime_seconds: f64,
    pub seeds: Vec<u64>,
    pub best_costs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub budget: u64,
    pub base_seed: u64,
    pub repeats: usize,
    pub instances: Vec<InstanceInfo>,
    pub entries: Vec<AggregateEntry>,
}

/// Groups records by (instance, algorithm) in first-appearance order.
pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateEntry> {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in records {
        let key = (r.instance.as_str(), r.algorithm.as_str());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(instance, algorithm)| {
            let group: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.instance == instance && r.algorithm == algorithm)
                .collect();
            let costs: Vec<f64> = group.iter().map(|r| r.best_cost).collect();
            let runs = costs.len();
            let mean = costs.iter().sum::<f64>() / runs as f64;
            let std = if runs > 1 {
                (costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt()
            } else {
                0.0
            };
            AggregateEntry {
                instance: instance.to_string(),
                algorithm: algorithm.to_string(),
                runs,
                min_cost: costs.iter().copied().fold(f64::INFINITY, f64::min),
                mean_cost: mean,
                std_cost: std,
                mean_runtime_seconds: group.iter().map(|r| r.wall_seconds).sum::<f64>()
                    / runs as f64,
                seeds: group.iter().map(|r| r.seed).collect(),
                best_costs: costs,
            }
        })
        .collect()
}

impl AggregateReport {
    pub fn entry(&self, instance: &str, algorithm: &str) -> Option<&AggregateEntry> {
        self.entries.iter().find(|e| {
            e.algorithm == algorithm
                && (e.instance == instance || self.name_of(&e.instance) == instance)
        })
    }

    fn name_of<'s>(&'s self, path: &'s str) -> &'s str {
        self.instances
            .iter()
            .find(|i| i.path == path)
            .map_or(path, |i| i.name.as_str())
    }

    pub fn algorithms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.algorithm) {
                out.push(e.algorithm.clone());
            }
        }
        out
    }

    /// Plain-text table with the Min / Mean / Std / R_Time column set.
    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:>6}  {:<10} {:>12} {:>12} {:>10} {:>10}",
            "Instance", "NCity", "Algorithm", "Min", "Mean", "Std", "R_Time(s)"
        );
        for e in &self.entries {
            let info = self.instances.iter().find(|i| i.path == e.instance);
            let _ = writeln!(
                out,
                "{:<12} {:>6}  {:<10} {:>12.2} {:>12.2} {:>10.2} {:>10.3}",
                info.map_or(e.instance.as_str(), |i| i.name.as_str()),
                info.map_or(0, |i| i.n),
                e.algorithm,
                e.min_cost,
                e.mean_cost,
                e.std_cost,
                e.mean_runtime_seconds
            );
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(path, json).map_err(|e| Error::io(path, e))
    }

    /// Reads `aggregate.json`, or `<dir>/aggregate.json` when given a directory.
    pub fn read_json(path: &Path) -> Result<Self> {
        let path = if path.is_dir() {
            path.join(AGGREGATE_JSON)
        } else {
            path.to_path_buf()
        };
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Report(format!("{}: {e}", path.display())))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            instance: &'a str,
            name: &'a str,
            n: usize,
            algorithm: &'a str,
            runs: usize,
            min_cost: f64,
            mean_cost: f64,
            std_cost: f64,
            mean_runtime_seconds: f64,
        }
        let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
        for e in &self.entries {
            let info = self.instances.iter().find(|i| i.path == e.instance);
            w.serialize(Row {
                instance: &e.instance,
                name: info.map_or("", |i| i.name.as_str()),
                n: info.map_or(0, |i| i.n),
                algorithm: &e.algorithm,
                runs: e.runs,
                min_cost: e.min_cost,
                mean_cost: e.mean_cost,
                std_cost: e.std_cost,
                mean_runtime_seconds: e.mean_runtime_seconds,
            })
            .map_err(|e| csv_error(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Report(format!("{}: {other:?}", path.display())),
    }
}

pub fn write_runs_csv(path: &Path, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for r in records {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_runs_csv(path: &Path) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<RunRecord>, _>>()
        .map_err(|e| csv_error(path, e))
}

/// Runs the whole experiment and writes its reports. All inputs are loaded
/// and the output directory is created before the first run starts.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<AggregateReport> {
    spec.validate()?;
    let instances = spec
        .instances
        .iter()
        .map(|p| load_instance(p, spec.rounding))
        .collect::<Result<Vec<_>>>()?;
    std::fs::create_dir_all(&spec.output_dir).map_err(|e| Error::io(&spec.output_dir, e))?;
    let runs_path = spec.output_dir.join(RUNS_FILE);
    std::fs::File::create(&runs_path).map_err(|e| Error::io(&runs_path, e))?;

    let infos: Vec<InstanceInfo> = spec
        .instances
        .iter()
        .zip(&instances)
        .map(|(p, inst)| InstanceInfo {
            path: p.display().to_string(),
            name: inst.name().to_string(),
            n: inst.n(),
        })
        .collect();

    let mut jobs = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        for (a, alg) in spec.algorithms.iter().enumerate() {
            for k in 0..spec.repeats {
                jobs.push((i, a, run_seed(spec.base_seed, &alg.name, inst.name(), k)));
            }
        }
    }

    let total = jobs.len();
    let finished = AtomicUsize::new(0);
    let results = map_jobs(spec.execution, &jobs, |&(i, a, seed)| {
        let alg = &spec.algorithms[a];
        let report = alg.run(&instances[i], &spec.run_config(seed));
        let done = finished.fetch_add(1, Ordering::Relaxed) + 1;
        log::info!(
            "[{done}/{total}] {} on {} (seed {seed})",
            alg.name,
            instances[i].name()
        );
        report.map(|r| RunRecord {
            instance: infos[i].path.clone(),
            algorithm: alg.name.clone(),
            seed,
            best_cost: r.best_cost,
            evaluations: r.evaluations_used,
            wall_seconds: r.wall_seconds,
            budget: spec.budget,
        })
    });
    let records = results.into_iter().collect::<Result<Vec<_>>>()?;

    write_runs_csv(&runs_path, &records)?;
    let report = AggregateReport {
        budget: spec.budget,
        base_seed: spec.base_seed,
        repeats: spec.repeats,
        instances: infos,
        entries: aggregate(&records),
    };
    report.write_json(&spec.output_dir.join(AGGREGATE_JSON))?;
    report.write_csv(&spec.output_dir.join(AGGREGATE_CSV))?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub instance: String,
    /// `100 * (baseline - challenger) / baseline` on mean cost; positive favours the challenger.
    pub mean_delta_pct: f64,
    pub min_delta_pct: f64,
}

pub fn delta_pct(baseline: f64, challenger: f64) -> f64 {
    100.0 * (baseline - challenger) / baseline
}

/// Per-instance percentage improvement of `challenger` over `baseline`.
pub fn compare(report: &AggregateReport, baseline: &str, challenger: &str) -> Result<Vec<Delta>> {
    let available = report.algorithms();
    for name in [baseline, challenger] {
        if !available.iter().any(|a| a == name) {
            return Err(Error::UnknownAlgorithm {
                name: name.to_string(),
                available: available.clone(),
            });
        }
    }
    let mut instances: Vec<&str> = Vec::new();
    for e in &report.entries {
        if !instances.contains(&e.instance.as_str()) {
            instances.push(&e.instance);
        }
    }
    instances
        .into_iter()
        .map(|inst| {
            let find = |alg: &str| {
                report
                    .entries
                    .iter()
                    .find(|e| e.instance == inst && e.algorithm == alg)
                    .ok_or_else(|| Error::UnknownAlgorithm {
                        name: format!("{alg} on {inst}"),
                        available: available.clone(),
                    })
            };
            let (b, c) = (find(baseline)?, find(challenger)?);
            Ok(Delta {
                instance: report.name_of(inst).to_string(),
                mean_delta_pct: delta_pct(b.mean_cost, c.mean_cost),
                min_delta_pct: delta_pct(b.min_cost, c.min_cost),
            })
        })
        .collect()
}
