//! Declarative ensemble experiments.
//!
//! An [`ExperimentConfig`] names a graph family, an ensemble size, a model
//! and the seed-selection strategies to compare. Every strategy runs on the
//! same graph instances (and, for interventions, against the same false-news
//! creators), so each strategy can be compared with the random baseline by a
//! paired Wilcoxon test.

use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::centrality::{select_seeds, CentralityKind};
use crate::diffusion::{diffusion_metrics, run_single_diffusion, DiffusionParams};
use crate::error::{Error, Result};
use crate::generators::{
    gen_er, gen_gaussian_partition, gen_lfr, ErParams, GaussianPartitionParams, LfrParams,
};
use crate::graph::Graph;
use crate::intervention::{
    intervention_metrics, minimum_true_seeds, random_nodes, run_intervention, CombatParams,
    FalseSeedPolicy, MinimumSeedsOutcome,
};
use crate::seeding::{derive_seed, stream};
use crate::stats::{compare_strategies, Alternative, PairedSample, WilcoxonMethod};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorConfig {
    Er(ErParams),
    GaussianPartition(GaussianPartitionParams),
    Lfr(LfrParams),
}

impl GeneratorConfig {
    pub fn node_count(&self) -> usize {
        match self {
            GeneratorConfig::Er(p) => p.n,
            GeneratorConfig::GaussianPartition(p) => p.n,
            GeneratorConfig::Lfr(p) => p.n,
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match self {
            GeneratorConfig::Er(p) => gen_er(p, seed),
            GeneratorConfig::GaussianPartition(p) => gen_gaussian_partition(p, seed).map(|(g, _)| g),
            GeneratorConfig::Lfr(p) => gen_lfr(p, seed).map(|(g, _)| g),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GeneratorConfig::Er(p) => p.validate(),
            GeneratorConfig::GaussianPartition(p) => p.validate(),
            GeneratorConfig::Lfr(p) => p.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ModelConfig {
    Single {
        info_starter: usize,
        #[serde(flatten)]
        params: DiffusionParams,
    },
    Intervention {
        false_info_starter: usize,
        true_info_starter: usize,
        #[serde(flatten)]
        params: CombatParams,
    },
}

impl ModelConfig {
    fn validate(&self) -> Result<()> {
        match self {
            ModelConfig::Single { info_starter, params } => {
                if *info_starter == 0 {
                    return Err(Error::input("info_starter must be at least 1"));
                }
                params.validate()
            }
            ModelConfig::Intervention {
                false_info_starter,
                true_info_starter,
                params,
            } => {
                if *false_info_starter == 0 || *true_info_starter == 0 {
                    return Err(Error::input("starter counts must be at least 1"));
                }
                params.validate()
            }
        }
    }

    fn metrics(&self) -> &'static [(Metric, Alternative)] {
        match self {
            ModelConfig::Single { .. } => &[
                (Metric::Iterations, Alternative::XLess),
                (Metric::SumPI, Alternative::XGreater),
            ],
            ModelConfig::Intervention { .. } => &[
                (Metric::SumPIT, Alternative::XGreater),
                (Metric::Infected, Alternative::XLess),
                (Metric::Protected, Alternative::XGreater),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    TransmissionProb,
    Threshold,
    PF,
    PT,
    TD,
    TC,
    EdgeExistProb,
    V,
    PIn,
    POut,
    Mu,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generator: GeneratorConfig,
    pub ensemble_size: usize,
    pub strategies: Vec<CentralityKind>,
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    pub master_rng_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    /// Node count capped at 200 (densities rescaled to keep mean degree),
    /// ensembles capped at 30 graphs.
    Desk,
    /// Parameters exactly as configured.
    #[serde(alias = "paper")]
    Full,
}

impl std::str::FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "full" | "paper" => Ok(Scale::Full),
            other => Err(Error::input(format!("unknown scale `{other}` (expected desk or full)"))),
        }
    }
}

pub const DESK_NODE_COUNT: usize = 200;
pub const DESK_ENSEMBLE_SIZE: usize = 30;

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ensemble_size == 0 {
            return Err(Error::input("ensemble_size must be at least 1"));
        }
        if self.strategies.is_empty() {
            return Err(Error::input("at least one strategy is required"));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(Error::input("sweep grid must not be empty"));
            }
            for &v in &sweep.values {
                self.at_sweep_point(sweep.parameter, v)?;
            }
        }
        self.generator.validate()?;
        self.model.validate()
    }

    /// Strategy list with duplicates removed and the random baseline
    /// appended when missing.
    pub fn effective_strategies(&self) -> Vec<CentralityKind> {
        let mut out: Vec<CentralityKind> = Vec::new();
        for &s in &self.strategies {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        if !out.contains(&CentralityKind::Random) {
            out.push(CentralityKind::Random);
        }
        out
    }

    /// Copy of the configuration with one swept parameter set to `value`.
    pub fn at_sweep_point(&self, parameter: SweepParameter, value: f64) -> Result<Self> {
        let mut cfg = self.clone();
        let mismatch = || {
            Error::input(format!(
                "sweep parameter {parameter:?} does not apply to this generator/model"
            ))
        };
        match (parameter, &mut cfg.generator, &mut cfg.model) {
            (SweepParameter::TransmissionProb, _, ModelConfig::Single { params, .. }) => {
                params.transmission_prob = value
            }
            (SweepParameter::Threshold, _, ModelConfig::Single { params, .. }) => params.threshold = value,
            (SweepParameter::PF, _, ModelConfig::Intervention { params, .. }) => params.p_f = value,
            (SweepParameter::PT, _, ModelConfig::Intervention { params, .. }) => params.p_t = value,
            (SweepParameter::TD, _, ModelConfig::Intervention { params, .. }) => params.t_d = value,
            (SweepParameter::TC, _, ModelConfig::Intervention { params, .. }) => params.t_c = value,
            (SweepParameter::EdgeExistProb, GeneratorConfig::Er(p), _) => p.edge_exist_prob = value,
            (SweepParameter::V, GeneratorConfig::GaussianPartition(p), _) => p.v = value,
            (SweepParameter::PIn, GeneratorConfig::GaussianPartition(p), _) => p.p_in = value,
            (SweepParameter::POut, GeneratorConfig::GaussianPartition(p), _) => p.p_out = value,
            (SweepParameter::Mu, GeneratorConfig::Lfr(p), _) => p.mu = value,
            _ => return Err(mismatch()),
        }
        cfg.sweep = None;
        cfg.generator.validate()?;
        cfg.model.validate()?;
        Ok(cfg)
    }

    /// Rescales the configuration for the requested scale.
    pub fn scaled(&self, scale: Scale) -> Self {
        let mut cfg = self.clone();
        if scale == Scale::Full {
            return cfg;
        }
        cfg.ensemble_size = cfg.ensemble_size.min(DESK_ENSEMBLE_SIZE);
        let n = cfg.generator.node_count();
        if n <= DESK_NODE_COUNT {
            return cfg;
        }
        let factor = n as f64 / DESK_NODE_COUNT as f64;
        let densify = |p: f64| (p * factor).min(1.0);
        match &mut cfg.generator {
            GeneratorConfig::Er(p) => {
                p.n = DESK_NODE_COUNT;
                p.edge_exist_prob = densify(p.edge_exist_prob);
            }
            GeneratorConfig::GaussianPartition(p) => {
                // Communities keep their size and density; the inter-community
                // probability grows so each node keeps its expected outside degree.
                p.n = DESK_NODE_COUNT;
                p.p_out = densify(p.p_out);
            }
            GeneratorConfig::Lfr(p) => {
                p.n = DESK_NODE_COUNT;
                p.min_community = p.min_community.min(DESK_NODE_COUNT);
            }
        }
        if let Some(sweep) = &mut cfg.sweep {
            if matches!(sweep.parameter, SweepParameter::EdgeExistProb | SweepParameter::POut) {
                sweep.values.iter_mut().for_each(|v| *v = densify(*v));
            }
        }
        cfg
    }

    pub fn config_hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Iterations,
    SumPI,
    SumPIT,
    Infected,
    Protected,
}

/// Outcome of one strategy on one graph at one sweep point.
///
/// In intervention mode `sum_p_i` holds the false-news total and
/// `iterations` the number of global steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub strategy: CentralityKind,
    pub graph_index: usize,
    pub sweep_value: Option<f64>,
    pub iterations: usize,
    pub sum_p_i: f64,
    pub sum_p_it: Option<f64>,
    pub infected: usize,
    pub susceptible: usize,
    pub protected: usize,
    pub seed_count: usize,
}

impl RunRecord {
    pub fn metric(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Iterations => self.iterations as f64,
            Metric::SumPI => self.sum_p_i,
            Metric::SumPIT => self.sum_p_it.unwrap_or(0.0),
            Metric::Infected => self.infected as f64,
            Metric::Protected => self.protected as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub sweep_value: Option<f64>,
    pub strategy: CentralityKind,
    pub metric: Metric,
    pub alternative: Alternative,
    /// One-tailed p-value; 1 when the sample was degenerate.
    pub p_value: f64,
    pub degenerate: bool,
    pub statistic: Option<f64>,
    pub n_effective: usize,
    pub method: Option<WilcoxonMethod>,
}

/// Per-graph difference `strategy - random` for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Advantage {
    pub sweep_value: Option<f64>,
    pub strategy: CentralityKind,
    pub graph_index: usize,
    pub metric: Metric,
    pub advantage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub graph_seeds: Vec<u64>,
    pub random_strategy_seeds: Vec<u64>,
    /// False-news creators per `(sweep point, graph)` in intervention mode.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub false_creators: Vec<Vec<Vec<usize>>>,
    pub created_unix_secs: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<RunRecord>,
    pub comparisons: Vec<Comparison>,
    pub advantages: Vec<Advantage>,
    pub provenance: Provenance,
}

impl ExperimentResult {
    pub fn sweep_values(&self) -> Vec<Option<f64>> {
        match &self.config.sweep {
            Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        }
    }

    pub fn records_for(
        &self,
        strategy: CentralityKind,
        sweep_value: Option<f64>,
    ) -> impl Iterator<Item = &RunRecord> {
        self.records
            .iter()
            .filter(move |r| r.strategy == strategy && r.sweep_value == sweep_value)
    }

    pub fn mean_metric(&self, strategy: CentralityKind, sweep_value: Option<f64>, metric: Metric) -> Option<f64> {
        let values: Vec<f64> = self.records_for(strategy, sweep_value).map(|r| r.metric(metric)).collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }

    pub fn comparison(&self, strategy: CentralityKind, sweep_value: Option<f64>, metric: Metric) -> Option<&Comparison> {
        self.comparisons
            .iter()
            .find(|c| c.strategy == strategy && c.sweep_value == sweep_value && c.metric == metric)
    }

    pub fn mean_advantage(&self, strategy: CentralityKind, sweep_value: Option<f64>, metric: Metric) -> Option<f64> {
        let values: Vec<f64> = self
            .advantages
            .iter()
            .filter(|a| a.strategy == strategy && a.sweep_value == sweep_value && a.metric == metric)
            .map(|a| a.advantage)
            .collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }
}

struct GraphOutcome {
    records: Vec<RunRecord>,
    false_creators: Vec<usize>,
}

fn run_on_graph(
    cfg: &ExperimentConfig,
    strategies: &[CentralityKind],
    index: usize,
    sweep_value: Option<f64>,
) -> Result<GraphOutcome> {
    let master = cfg.master_rng_seed;
    let graph = cfg.generator.generate(derive_seed(master, stream::GRAPH, index as u64))?;
    let random_seed = derive_seed(master, stream::RANDOM_STRATEGY, index as u64);
    let n = graph.node_count();

    let mut false_creators = Vec::new();
    if let ModelConfig::Intervention { false_info_starter, .. } = &cfg.model {
        let seed = derive_seed(master, stream::FALSE_SEEDS, index as u64);
        false_creators = random_nodes(&graph, *false_info_starter, seed)?;
    }

    let mut records = Vec::with_capacity(strategies.len());
    for &strategy in strategies {
        let record = match &cfg.model {
            ModelConfig::Single { info_starter, params } => {
                let seeds = select_seeds(&graph, strategy, *info_starter, random_seed)?;
                let m = diffusion_metrics(&run_single_diffusion(&graph, &seeds, params)?);
                RunRecord {
                    strategy,
                    graph_index: index,
                    sweep_value,
                    iterations: m.iterations,
                    sum_p_i: m.sum_p_i,
                    sum_p_it: None,
                    infected: m.infected_count,
                    susceptible: n - m.infected_count,
                    protected: 0,
                    seed_count: seeds.len(),
                }
            }
            ModelConfig::Intervention {
                true_info_starter,
                params,
                ..
            } => {
                let seeds = select_seeds(&graph, strategy, *true_info_starter, random_seed)?;
                let state = run_intervention(&graph, &false_creators, &seeds, params)?;
                let m = intervention_metrics(&state);
                RunRecord {
                    strategy,
                    graph_index: index,
                    sweep_value,
                    iterations: state.steps_run,
                    sum_p_i: m.sum_p_if,
                    sum_p_it: Some(m.sum_p_it),
                    infected: m.infected,
                    susceptible: m.susceptible,
                    protected: m.protected,
                    seed_count: seeds.len(),
                }
            }
        };
        records.push(record);
    }
    Ok(GraphOutcome {
        records,
        false_creators,
    })
}

/// Runs the ensemble (on the current rayon pool) and compares every
/// strategy with the random baseline.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let strategies = config.effective_strategies();
    let points: Vec<Option<f64>> = match &config.sweep {
        Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };

    let mut records = Vec::new();
    let mut false_creators = Vec::new();
    for &point in &points {
        let cfg = match (point, &config.sweep) {
            (Some(v), Some(s)) => config.at_sweep_point(s.parameter, v)?,
            _ => config.clone(),
        };
        let outcomes: Vec<GraphOutcome> = (0..config.ensemble_size)
            .into_par_iter()
            .map(|i| {
                run_on_graph(&cfg, &strategies, i, point).map_err(|e| Error::Ensemble {
                    index: i,
                    source: Box::new(e),
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        let mut creators_here = Vec::with_capacity(outcomes.len());
        for outcome in outcomes {
            records.extend(outcome.records);
            creators_here.push(outcome.false_creators);
        }
        if matches!(config.model, ModelConfig::Intervention { .. }) {
            false_creators.push(creators_here);
        }
    }

    let (comparisons, advantages) = compare_against_random(config, &strategies, &points, &records);
    let provenance = Provenance {
        config_hash: config.config_hash(),
        graph_seeds: (0..config.ensemble_size as u64)
            .map(|i| derive_seed(config.master_rng_seed, stream::GRAPH, i))
            .collect(),
        random_strategy_seeds: (0..config.ensemble_size as u64)
            .map(|i| derive_seed(config.master_rng_seed, stream::RANDOM_STRATEGY, i))
            .collect(),
        false_creators,
        created_unix_secs: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok(ExperimentResult {
        config: config.clone(),
        records,
        comparisons,
        advantages,
        provenance,
    })
}

/// Runs on a dedicated pool of `threads` workers (all cores when `None`).
pub fn run_experiment_with_threads(config: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentResult> {
    with_pool(threads, || run_experiment(config))
}

/// Runs `f` on a dedicated pool of `threads` workers (the global pool when `None`).
pub fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::input(format!("cannot build a pool of {t} threads: {e}")))?
            .install(f),
    }
}

fn compare_against_random(
    config: &ExperimentConfig,
    strategies: &[CentralityKind],
    points: &[Option<f64>],
    records: &[RunRecord],
) -> (Vec<Comparison>, Vec<Advantage>) {
    let mut comparisons = Vec::new();
    let mut advantages = Vec::new();
    let column = |strategy: CentralityKind, point: Option<f64>| -> Vec<&RunRecord> {
        let mut rows: Vec<&RunRecord> = records
            .iter()
            .filter(|r| r.strategy == strategy && r.sweep_value == point)
            .collect();
        rows.sort_by_key(|r| r.graph_index);
        rows
    };
    for &point in points {
        let baseline = column(CentralityKind::Random, point);
        for &strategy in strategies.iter().filter(|&&s| s != CentralityKind::Random) {
            let rows = column(strategy, point);
            for &(metric, alternative) in config.model.metrics() {
                let pairs: Vec<(f64, f64)> = rows
                    .iter()
                    .zip(&baseline)
                    .map(|(a, b)| (a.metric(metric), b.metric(metric)))
                    .collect();
                for (r, (a, b)) in rows.iter().zip(&pairs) {
                    advantages.push(Advantage {
                        sweep_value: point,
                        strategy,
                        graph_index: r.graph_index,
                        metric,
                        advantage: a - b,
                    });
                }
                let comparison = match compare_strategies(&PairedSample::new(pairs), alternative) {
                    Ok(w) => Comparison {
                        sweep_value: point,
                        strategy,
                        metric,
                        alternative,
                        p_value: w.p_one_tailed,
                        degenerate: false,
                        statistic: Some(w.statistic),
                        n_effective: w.n_effective,
                        method: Some(w.method),
                    },
                    Err(_) => Comparison {
                        sweep_value: point,
                        strategy,
                        metric,
                        alternative,
                        p_value: 1.0,
                        degenerate: true,
                        statistic: None,
                        n_effective: 0,
                        method: None,
                    },
                };
                comparisons.push(comparison);
            }
        }
    }
    (comparisons, advantages)
}

pub fn run_density_sweep(base: &ExperimentConfig, densities: &[f64]) -> Result<ExperimentResult> {
    if !matches!(base.generator, GeneratorConfig::Er(_)) {
        return Err(Error::input("density sweeps need an Erdős–Rényi generator"));
    }
    if densities.is_empty() {
        return Err(Error::input("density grid must not be empty"));
    }
    let mut cfg = base.clone();
    cfg.sweep = Some(Sweep {
        parameter: SweepParameter::EdgeExistProb,
        values: densities.to_vec(),
    });
    run_experiment(&cfg)
}

pub fn run_variance_sweep(base: &ExperimentConfig, shapes: &[f64]) -> Result<ExperimentResult> {
    if !matches!(base.generator, GeneratorConfig::GaussianPartition(_)) {
        return Err(Error::input("variance sweeps need a Gaussian partition generator"));
    }
    if shapes.is_empty() {
        return Err(Error::input("shape grid must not be empty"));
    }
    let mut cfg = base.clone();
    cfg.sweep = Some(Sweep {
        parameter: SweepParameter::V,
        values: shapes.to_vec(),
    });
    run_experiment(&cfg)
}

/// Complete-intervention search for every configured strategy over the
/// configuration's ensemble. False creators are drawn once per graph and
/// shared by all strategies.
pub fn run_minimum_seeds(
    config: &ExperimentConfig,
    k_max: usize,
) -> Result<Vec<(CentralityKind, MinimumSeedsOutcome)>> {
    config.validate()?;
    let ModelConfig::Intervention { false_info_starter, params, .. } = &config.model else {
        return Err(Error::input("minimum-seed search needs an intervention model"));
    };
    let master = config.master_rng_seed;
    let graphs: Vec<Graph> = (0..config.ensemble_size)
        .into_par_iter()
        .map(|i| {
            config
                .generator
                .generate(derive_seed(master, stream::GRAPH, i as u64))
                .map_err(|e| Error::Ensemble { index: i, source: Box::new(e) })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_>>()?;
    let ensemble_seeds = |s: u64| -> Vec<u64> {
        (0..config.ensemble_size as u64).map(|i| derive_seed(master, s, i)).collect()
    };
    let policy = FalseSeedPolicy::Random {
        count: *false_info_starter,
        seeds: ensemble_seeds(stream::FALSE_SEEDS),
    };
    let strategy_seeds = ensemble_seeds(stream::RANDOM_STRATEGY);
    config
        .effective_strategies()
        .into_iter()
        .map(|s| Ok((s, minimum_true_seeds(&graphs, s, &policy, params, k_max, &strategy_seeds)?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    Csv,
    Json,
}

/// CSV: one row per [`RunRecord`] in a fixed column order. JSON: the full
/// result including comparisons and provenance.
pub fn export_results(result: &ExperimentResult, path: impl AsRef<Path>, format: ExportFormat) -> Result<()> {
    match format {
        ExportFormat::Csv => write_csv(&result.records, path),
        ExportFormat::Json => {
            let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
            serde_json::to_writer_pretty(&mut out, result)?;
            out.write_all(b"\n")?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn write_csv<T: Serialize>(rows: &[T], path: impl AsRef<Path>) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn import_records_csv(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_path(path)?;
    Ok(rdr.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn import_results_json(path: impl AsRef<Path>) -> Result<ExperimentResult> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    Ok(serde_json::from_reader(file)?)
}
