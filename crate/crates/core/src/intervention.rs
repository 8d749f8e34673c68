//! Two competing messages on one network: false news and the true news that
//! counters it.
//!
//! Both spread with the layered rule from [`crate::diffusion`], each over its
//! own BFS layering. False news runs one global step ahead. When the true
//! process reaches a node whose `P_IF` has already hit the decisive
//! threshold, that node is blocked: it keeps `P_IT = 0`. Any node at or above
//! the threshold also stops relaying true news.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{selection_order, CentralityKind};
use crate::diffusion::{propagate_layer, seeded_probabilities, NodeLabel};
use crate::error::{Error, Result};
use crate::graph::{Graph, LayeredView};
use crate::seeding::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombatParams {
    pub p_f: f64,
    pub p_t: f64,
    /// Decisive threshold `T_D`.
    pub t_d: f64,
    /// Comparative threshold `T_C`.
    pub t_c: f64,
}

impl CombatParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p_f", self.p_f), ("p_t", self.p_t), ("t_c", self.t_c)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::input(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        // T_D above 1 is allowed and disables blocking.
        if !(self.t_d >= 0.0) || !self.t_d.is_finite() {
            return Err(Error::input(format!("t_d must be a finite value >= 0, got {}", self.t_d)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Process {
    False,
    True,
}

/// One layer update performed during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEvent {
    pub step: usize,
    pub process: Process,
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombatState {
    pub p_if: Vec<f64>,
    pub p_it: Vec<f64>,
    pub false_layers: LayeredView,
    pub true_layers: LayeredView,
    pub blocked: Vec<bool>,
    pub labels: Vec<NodeLabel>,
    pub steps_run: usize,
    pub step_log: Vec<StepEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterventionMetrics {
    pub sum_p_if: f64,
    pub sum_p_it: f64,
    pub infected: usize,
    pub susceptible: usize,
    pub protected: usize,
}

/// Final belief of a node holding both messages.
pub fn determine_combat_label(p_if: f64, p_it: f64, t_c: f64) -> NodeLabel {
    if p_if - p_it >= t_c {
        NodeLabel::Infected
    } else if p_if >= p_it {
        NodeLabel::Susceptible
    } else {
        NodeLabel::Protected
    }
}

pub fn run_intervention(
    graph: &Graph,
    false_creators: &[usize],
    true_creators: &[usize],
    params: &CombatParams,
) -> Result<CombatState> {
    params.validate()?;
    if false_creators.is_empty() || true_creators.is_empty() {
        return Err(Error::input("both false and true creator sets must be non-empty"));
    }
    let n = graph.node_count();
    let false_layers = LayeredView::from_sources(graph, false_creators)?;
    let true_layers = LayeredView::from_sources(graph, true_creators)?;
    let (mut p_if, mut p_if_bar) = seeded_probabilities(n, false_layers.sources());
    let (mut p_it, mut p_it_bar) = seeded_probabilities(n, true_layers.sources());
    let mut blocked = vec![false; n];
    let mut step_log = Vec::new();

    // At step t false news fills its layer t, then true news its layer t-1.
    let steps = false_layers.depth().max(true_layers.depth() + 1);
    for step in 1..=steps {
        if step <= false_layers.depth() {
            propagate_layer(
                graph,
                &false_layers,
                step,
                params.p_f,
                &mut p_if,
                &mut p_if_bar,
                |_| true,
                |_| true,
            );
            step_log.push(StepEvent { step, process: Process::False, layer: step });
        }
        let true_level = step - 1;
        if true_level >= 1 && true_level <= true_layers.depth() {
            let open = |u: usize| p_if[u] < params.t_d;
            let refused = propagate_layer(
                graph,
                &true_layers,
                true_level,
                params.p_t,
                &mut p_it,
                &mut p_it_bar,
                open,
                open,
            );
            for u in refused {
                blocked[u] = true;
            }
            step_log.push(StepEvent { step, process: Process::True, layer: true_level });
        }
    }

    let labels = p_if
        .iter()
        .zip(&p_it)
        .map(|(&f, &t)| determine_combat_label(f, t, params.t_c))
        .collect();
    Ok(CombatState {
        p_if,
        p_it,
        false_layers,
        true_layers,
        blocked,
        labels,
        steps_run: steps,
        step_log,
    })
}

pub fn intervention_metrics(state: &CombatState) -> InterventionMetrics {
    let count = |label| state.labels.iter().filter(|&&l| l == label).count();
    InterventionMetrics {
        sum_p_if: state.p_if.iter().sum(),
        sum_p_it: state.p_it.iter().sum(),
        infected: count(NodeLabel::Infected),
        susceptible: count(NodeLabel::Susceptible),
        protected: count(NodeLabel::Protected),
    }
}

/// How the false-news creators are chosen for each ensemble member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FalseSeedPolicy {
    /// The same explicit nodes on every graph.
    Fixed(Vec<usize>),
    /// `count` uniform nodes, drawn once per graph from `seeds[i]`.
    Random { count: usize, seeds: Vec<u64> },
}

impl FalseSeedPolicy {
    pub fn seeds_for(&self, graph: &Graph, index: usize) -> Result<Vec<usize>> {
        match self {
            FalseSeedPolicy::Fixed(nodes) => Ok(nodes.clone()),
            FalseSeedPolicy::Random { count, seeds } => {
                let seed = *seeds.get(index).ok_or_else(|| {
                    Error::input(format!("no false-seed RNG seed for graph {index}"))
                })?;
                random_nodes(graph, *count, seed)
            }
        }
    }
}

pub(crate) fn random_nodes(graph: &Graph, count: usize, seed: u64) -> Result<Vec<usize>> {
    if count > graph.node_count() {
        return Err(Error::input(format!(
            "cannot draw {count} nodes from {}",
            graph.node_count()
        )));
    }
    let mut rng = rng_from_seed(seed);
    Ok(rand::seq::index::sample(&mut rng, graph.node_count(), count).into_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompletenessPoint {
    pub k: usize,
    pub mean_protected: f64,
    pub mean_infected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimumSeedsOutcome {
    /// Smallest `k` with mean protected strictly above mean infected.
    pub minimum: Option<usize>,
    /// Ensemble means for every `k` that was evaluated.
    pub curve: Vec<CompletenessPoint>,
}

/// Linear search for the fewest true-news creators that achieve a complete
/// intervention over the ensemble. `strategy_seeds[i]` keys the `Random`
/// strategy on graph `i`; the false creators are fixed per graph across all
/// `k`.
pub fn minimum_true_seeds(
    graphs: &[Graph],
    strategy: CentralityKind,
    false_policy: &FalseSeedPolicy,
    params: &CombatParams,
    k_max: usize,
    strategy_seeds: &[u64],
) -> Result<MinimumSeedsOutcome> {
    if graphs.is_empty() {
        return Err(Error::input("ensemble must contain at least one graph"));
    }
    if let Some(g) = graphs.iter().find(|g| k_max > g.node_count()) {
        return Err(Error::input(format!(
            "k_max {k_max} exceeds node count {}",
            g.node_count()
        )));
    }
    let prepared: Vec<(Vec<usize>, Vec<usize>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let seed = strategy_seeds.get(i).copied().unwrap_or(i as u64);
            Ok((false_policy.seeds_for(g, i)?, selection_order(g, strategy, seed)?))
        })
        .collect::<Result<_>>()?;

    let mut curve = Vec::new();
    for k in 1..=k_max {
        let counts: Vec<(usize, usize)> = graphs
            .par_iter()
            .zip(&prepared)
            .map(|(g, (false_seeds, order))| {
                let state = run_intervention(g, false_seeds, &order[..k], params)?;
                let m = intervention_metrics(&state);
                Ok((m.protected, m.infected))
            })
            .collect::<Result<_>>()?;
        let size = graphs.len() as f64;
        let point = CompletenessPoint {
            k,
            mean_protected: counts.iter().map(|c| c.0 as f64).sum::<f64>() / size,
            mean_infected: counts.iter().map(|c| c.1 as f64).sum::<f64>() / size,
        };
        curve.push(point);
        if point.mean_protected > point.mean_infected {
            return Ok(MinimumSeedsOutcome { minimum: Some(k), curve });
        }
    }
    Ok(MinimumSeedsOutcome { minimum: None, curve })
}
