//! `infodiff`: command-line front end for graph generation, centrality,
//! diffusion, intervention, statistics and ensemble experiments.
//!
//! Exit codes: 0 success, 1 input error, 2 runtime or numeric error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infodiff::centrality::{self, CentralityKind};
use infodiff::diffusion::{diffusion_metrics, run_single_diffusion, DiffusionParams};
use infodiff::generators::{self, Communities, ErParams, GaussianPartitionParams, LfrParams};
use infodiff::harness::{self, ExperimentConfig, ExportFormat, Scale};
use infodiff::intervention::{intervention_metrics, run_intervention, CombatParams};
use infodiff::stats::{self, Alternative, WilcoxonOptions};
use infodiff::{Error, Graph, Result};

#[derive(Debug, Parser)]
#[command(name = "infodiff", version, about = "Layered information diffusion and false-news intervention on synthetic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random network and write it as an edge list.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Score every node with one or all centrality measures.
    Centrality(CentralityArgs),
    /// Run the single-message layered diffusion model.
    Diffuse(DiffuseArgs),
    /// Run competing false/true diffusion with blocking.
    Intervene(IntervenArgs),
    /// Wilcoxon signed-rank test and summaries on paired engagement data.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Ensemble experiments driven by a JSON config.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Args)]
struct GraphOutput {
    /// Edge-list output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed (required; no ambient randomness is used).
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum GenerateCommand {
    /// Erdős–Rényi graph.
    Er {
        /// Number of nodes (n).
        #[arg(long)]
        n: usize,
        /// Edge probability for every node pair (edge_exist_prob).
        #[arg(long = "edge-exist-prob", visible_alias = "p")]
        p: f64,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// Gaussian random partition graph.
    Gaussian {
        /// Number of nodes (n).
        #[arg(long)]
        n: usize,
        /// Mean community size (s).
        #[arg(long)]
        s: f64,
        /// Shape parameter (v); community-size variance is s/v.
        #[arg(long)]
        v: f64,
        /// Intra-community edge probability (p_in).
        #[arg(long)]
        p_in: f64,
        /// Inter-community edge probability (p_out).
        #[arg(long)]
        p_out: f64,
        /// Write `node community_id` lines to this file.
        #[arg(long)]
        communities: Option<PathBuf>,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// LFR community benchmark graph.
    Lfr {
        /// Number of nodes (n).
        #[arg(long)]
        n: usize,
        /// Degree power-law exponent (tau1).
        #[arg(long)]
        tau1: f64,
        /// Community-size power-law exponent (tau2).
        #[arg(long)]
        tau2: f64,
        /// Mixing parameter (mu).
        #[arg(long)]
        mu: f64,
        /// Target mean degree (average_degree).
        #[arg(long)]
        average_degree: f64,
        /// Smallest community size (min_community).
        #[arg(long)]
        min_community: usize,
        /// Write `node community_id` lines to this file.
        #[arg(long)]
        communities: Option<PathBuf>,
        #[command(flatten)]
        output: GraphOutput,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureArg {
    Degree,
    Eigenvector,
    Closeness,
    Betweenness,
    #[value(alias = "pagerank")]
    PageRank,
    All,
}

#[derive(Debug, Args)]
struct CentralityArgs {
    /// Edge-list input file.
    #[arg(long)]
    graph: PathBuf,
    /// Measure to compute.
    #[arg(long, value_enum, default_value = "all")]
    measure: MeasureArg,
    /// CSV output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NodeOutput {
    /// Per-node CSV output file (stdout when omitted; metrics JSON then goes to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metrics JSON output file.
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiffuseArgs {
    /// Edge-list input file.
    #[arg(long)]
    graph: PathBuf,
    /// Transmission probability (P).
    #[arg(long, visible_alias = "p")]
    transmission_prob: f64,
    /// Belief threshold (T).
    #[arg(long, visible_alias = "t")]
    threshold: f64,
    /// Explicit information creators (IC), comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["strategy", "k"])]
    ic: Vec<usize>,
    /// Strategy used to pick the information creators.
    #[arg(long, requires = "k")]
    strategy: Option<String>,
    /// Number of information creators (info_starter).
    #[arg(long)]
    k: Option<usize>,
    /// RNG seed for the random strategy.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: NodeOutput,
}

#[derive(Debug, Args)]
struct IntervenArgs {
    /// Edge-list input file.
    #[arg(long)]
    graph: PathBuf,
    /// False-news transmission probability (P_F).
    #[arg(long = "false-transmission-prob", visible_alias = "pf")]
    p_f: f64,
    /// True-news transmission probability (P_T).
    #[arg(long = "true-transmission-prob", visible_alias = "pt")]
    p_t: f64,
    /// Decisive threshold (T_D).
    #[arg(long = "decisive-threshold", visible_alias = "td")]
    t_d: f64,
    /// Comparative threshold (T_C).
    #[arg(long = "comparative-threshold", visible_alias = "tc")]
    t_c: f64,
    /// Explicit false-news creators (IC_F), comma separated.
    #[arg(long = "ic-f", value_delimiter = ',', conflicts_with = "false_count")]
    ic_f: Vec<usize>,
    /// Number of uniformly drawn false-news creators (false_info_starter).
    #[arg(long)]
    false_count: Option<usize>,
    /// Explicit true-news creators (IC_T), comma separated.
    #[arg(long = "ic-t", value_delimiter = ',', conflicts_with_all = ["strategy", "true_count"])]
    ic_t: Vec<usize>,
    /// Strategy used to pick true-news creators.
    #[arg(long, requires = "true_count")]
    strategy: Option<String>,
    /// Number of true-news creators (true_info_starter).
    #[arg(long)]
    true_count: Option<usize>,
    /// RNG seed for random selections.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: NodeOutput,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AltArg {
    #[value(name = "x_less", alias = "less")]
    XLess,
    #[value(name = "x_greater", alias = "greater")]
    XGreater,
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// One-tailed Wilcoxon signed-rank test with x = true, y = false columns.
    Wilcoxon {
        /// CSV with header `news_id,true,false`.
        #[arg(long)]
        input: PathBuf,
        /// Alternative hypothesis on true - false.
        #[arg(long, value_enum, default_value = "x_less")]
        alt: AltArg,
        /// Apply a continuity correction in the normal approximation.
        #[arg(long)]
        continuity_correction: bool,
    },
    /// Mean and median of both engagement columns.
    Summarize {
        /// CSV with header `news_id,true,false`.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ExperimentCommand {
    /// Run an ensemble experiment and write records, comparisons and a JSON result.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "desk")]
        scale: String,
        /// Worker threads (all cores when omitted).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Minimum number of true-news creators for a complete intervention, per strategy.
    MinSeeds {
        #[arg(long)]
        config: PathBuf,
        /// Largest number of true-news creators to try.
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value = "desk")]
        scale: String,
        #[arg(long)]
        threads: Option<usize>,
        /// JSON output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error: {}: {}", e.code(), message);
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate(cmd) => generate(cmd),
        Command::Centrality(args) => centrality_cmd(args),
        Command::Diffuse(args) => diffuse(args),
        Command::Intervene(args) => intervene(args),
        Command::Stats(cmd) => stats_cmd(cmd),
        Command::Experiment(cmd) => experiment(cmd),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_graph(graph: &Graph, communities: Option<(&Communities, &Path)>, output: &GraphOutput) -> Result<()> {
    emit(&graph.to_edge_list(), output.out.as_deref())?;
    if let Some((c, path)) = communities {
        c.save(path)?;
    }
    Ok(())
}

fn generate(cmd: GenerateCommand) -> Result<()> {
    match cmd {
        GenerateCommand::Er { n, p, output } => {
            let g = generators::gen_er(&ErParams { n, edge_exist_prob: p }, output.seed)?;
            write_graph(&g, None, &output)
        }
        GenerateCommand::Gaussian { n, s, v, p_in, p_out, communities, output } => {
            let params = GaussianPartitionParams { n, s, v, p_in, p_out };
            let (g, c) = generators::gen_gaussian_partition(&params, output.seed)?;
            write_graph(&g, communities.as_deref().map(|p| (&c, p)), &output)
        }
        GenerateCommand::Lfr { n, tau1, tau2, mu, average_degree, min_community, communities, output } => {
            let params = LfrParams { n, tau1, tau2, mu, average_degree, min_community };
            let (g, c) = generators::gen_lfr(&params, output.seed)?;
            write_graph(&g, communities.as_deref().map(|p| (&c, p)), &output)
        }
    }
}

fn centrality_cmd(args: CentralityArgs) -> Result<()> {
    let graph = Graph::load(&args.graph)?;
    let kinds: Vec<CentralityKind> = match args.measure {
        MeasureArg::Degree => vec![CentralityKind::Degree],
        MeasureArg::Eigenvector => vec![CentralityKind::Eigenvector],
        MeasureArg::Closeness => vec![CentralityKind::Closeness],
        MeasureArg::Betweenness => vec![CentralityKind::Betweenness],
        MeasureArg::PageRank => vec![CentralityKind::PageRank],
        MeasureArg::All => CentralityKind::MEASURES.to_vec(),
    };
    let scores = kinds
        .iter()
        .map(|&k| centrality::compute(&graph, k))
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::from("node");
    if scores.len() == 1 {
        text.push_str(",score");
    } else {
        for s in &scores {
            let _ = write!(text, ",{}", s.kind);
        }
    }
    text.push('\n');
    for node in 0..graph.node_count() {
        let _ = write!(text, "{node}");
        for s in &scores {
            let _ = write!(text, ",{}", s.score[node]);
        }
        text.push('\n');
    }
    emit(&text, args.out.as_deref())
}

fn pick_creators(
    graph: &Graph,
    explicit: &[usize],
    strategy: Option<&str>,
    count: Option<usize>,
    seed: Option<u64>,
    role: &str,
) -> Result<Vec<usize>> {
    if !explicit.is_empty() {
        return Ok(explicit.to_vec());
    }
    let (Some(strategy), Some(k)) = (strategy, count) else {
        return Err(Error::InvalidInput(format!(
            "{role} creators need either an explicit list or a strategy with a count"
        )));
    };
    let kind: CentralityKind = strategy.parse()?;
    let seed = match (kind, seed) {
        (CentralityKind::Random, None) => {
            return Err(Error::InvalidInput("--seed is required for the random strategy".into()))
        }
        (_, s) => s.unwrap_or(0),
    };
    centrality::select_seeds(graph, kind, k, seed)
}

fn write_metrics(json: &serde_json::Value, output: &NodeOutput) -> Result<()> {
    let text = serde_json::to_string_pretty(json)? + "\n";
    if let Some(path) = &output.metrics {
        std::fs::write(path, &text)?;
    }
    if output.out.is_some() && output.metrics.is_none() {
        print!("{text}");
    }
    Ok(())
}

fn diffuse(args: DiffuseArgs) -> Result<()> {
    let graph = Graph::load(&args.graph)?;
    let params = DiffusionParams {
        transmission_prob: args.transmission_prob,
        threshold: args.threshold,
    };
    params.validate()?;
    let creators = pick_creators(&graph, &args.ic, args.strategy.as_deref(), args.k, args.seed, "information")?;
    let state = run_single_diffusion(&graph, &creators, &params)?;

    let mut text = String::from("node,layer,p_i,label\n");
    for node in 0..graph.node_count() {
        let layer = state.layers.layer_of(node).map_or(String::new(), |l| l.to_string());
        let _ = writeln!(text, "{node},{layer},{},{}", state.p_i[node], state.labels[node]);
    }
    emit(&text, args.output.out.as_deref())?;
    let m = diffusion_metrics(&state);
    write_metrics(
        &serde_json::json!({
            "iterations": m.iterations,
            "sum_p_i": m.sum_p_i,
            "infected_count": m.infected_count,
            "creators": creators,
        }),
        &args.output,
    )
}

fn intervene(args: IntervenArgs) -> Result<()> {
    let graph = Graph::load(&args.graph)?;
    let params = CombatParams { p_f: args.p_f, p_t: args.p_t, t_d: args.t_d, t_c: args.t_c };
    params.validate()?;
    let false_creators = if !args.ic_f.is_empty() {
        args.ic_f.clone()
    } else {
        let (Some(count), Some(seed)) = (args.false_count, args.seed) else {
            return Err(Error::InvalidInput(
                "false creators need --ic-f, or --false-count with --seed".into(),
            ));
        };
        infodiff::intervention::FalseSeedPolicy::Random { count, seeds: vec![seed] }.seeds_for(&graph, 0)?
    };
    let true_creators = pick_creators(
        &graph,
        &args.ic_t,
        args.strategy.as_deref(),
        args.true_count,
        args.seed,
        "true-news",
    )?;
    let state = run_intervention(&graph, &false_creators, &true_creators, &params)?;

    let mut text = String::from("node,p_if,p_it,blocked,label\n");
    for node in 0..graph.node_count() {
        let _ = writeln!(
            text,
            "{node},{},{},{},{}",
            state.p_if[node], state.p_it[node], state.blocked[node], state.labels[node]
        );
    }
    emit(&text, args.output.out.as_deref())?;
    let m = intervention_metrics(&state);
    write_metrics(
        &serde_json::json!({
            "steps": state.steps_run,
            "sum_p_if": m.sum_p_if,
            "sum_p_it": m.sum_p_it,
            "infected": m.infected,
            "susceptible": m.susceptible,
            "protected": m.protected,
            "false_creators": false_creators,
            "true_creators": true_creators,
        }),
        &args.output,
    )
}

fn stats_cmd(cmd: StatsCommand) -> Result<()> {
    match cmd {
        StatsCommand::Wilcoxon { input, alt, continuity_correction } => {
            let records = stats::load_engagement_csv(&input)?;
            let alternative = match alt {
                AltArg::XLess => Alternative::XLess,
                AltArg::XGreater => Alternative::XGreater,
            };
            let options = WilcoxonOptions { continuity_correction, ..Default::default() };
            let result = stats::wilcoxon_with_options(&stats::engagement_sample(&records), alternative, &options)?;
            let json = serde_json::json!({
                "pairs": records.len(),
                "alternative": alternative,
                "statistic": result.statistic,
                "p_one_tailed": result.p_one_tailed,
                "n_effective": result.n_effective,
                "method": result.method,
                "z": result.z,
                "continuity_correction": result.continuity_correction,
                "zero_handling": "dropped",
            });
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        StatsCommand::Summarize { input } => {
            let records = stats::load_engagement_csv(&input)?;
            let column = |f: fn(&stats::EngagementRecord) -> u64| -> Vec<f64> {
                records.iter().map(|r| f(r) as f64).collect()
            };
            let t = stats::summarize(&column(|r| r.true_engagement))?;
            let f = stats::summarize(&column(|r| r.false_engagement))?;
            let json = serde_json::json!({ "rows": records.len(), "true": t, "false": f });
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
    }
    Ok(())
}

fn experiment(cmd: ExperimentCommand) -> Result<()> {
    match cmd {
        ExperimentCommand::Run { config, out, scale, threads } => {
            let scale: Scale = scale.parse()?;
            let cfg = ExperimentConfig::load(&config)?.scaled(scale);
            cfg.validate()?;
            let result = harness::run_experiment_with_threads(&cfg, threads)?;
            std::fs::create_dir_all(&out)?;
            harness::export_results(&result, out.join("records.csv"), ExportFormat::Csv)?;
            harness::export_results(&result, out.join("result.json"), ExportFormat::Json)?;
            harness::write_csv(&result.comparisons, out.join("comparisons.csv"))?;
            harness::write_csv(&result.advantages, out.join("advantages.csv"))?;

            println!("sweep_value,strategy,metric,p_value,degenerate");
            for c in &result.comparisons {
                let sweep = c.sweep_value.map_or(String::new(), |v| v.to_string());
                let metric = serde_json::to_value(c.metric)?;
                println!(
                    "{sweep},{},{},{:e},{}",
                    c.strategy,
                    metric.as_str().unwrap_or_default(),
                    c.p_value,
                    c.degenerate
                );
            }
        }
        ExperimentCommand::MinSeeds { config, k_max, scale, threads, out } => {
            let scale: Scale = scale.parse()?;
            let cfg = ExperimentConfig::load(&config)?.scaled(scale);
            let outcomes = harness::with_pool(threads, || harness::run_minimum_seeds(&cfg, k_max))?;
            let json: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|(kind, o)| serde_json::json!({ "strategy": kind, "minimum": o.minimum, "curve": o.curve }))
                .collect();
            emit(&(serde_json::to_string_pretty(&json)? + "\n"), out.as_deref())?;
        }
    }
    Ok(())
}
