//! Layered single-message diffusion.
//!
//! The graph is layered by BFS from the information creators. Layer by
//! layer, every node collects an update from each neighbor in the previous
//! layer; updates from different sources combine as independent events
//! through the complement `1 - P_I`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{count_effective_edges, Graph, LayeredView};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionParams {
    /// Per-edge transmission probability `P`.
    pub transmission_prob: f64,
    /// Belief threshold `T`: a node is infected when `P_I >= T`.
    pub threshold: f64,
}

impl DiffusionParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("transmission_prob", self.transmission_prob), ("threshold", self.threshold)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::input(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeLabel {
    Infected,
    Susceptible,
    Protected,
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeLabel::Infected => "Infected",
            NodeLabel::Susceptible => "Susceptible",
            NodeLabel::Protected => "Protected",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionState {
    pub p_i: Vec<f64>,
    pub p_i_bar: Vec<f64>,
    pub layers: LayeredView,
    pub iterations_run: usize,
    pub labels: Vec<NodeLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionMetrics {
    pub iterations: usize,
    pub sum_p_i: f64,
    pub infected_count: usize,
}

/// Belief a node gains from one source node with belief `source_p`, given
/// `effective_edges` closed triplets through the target's own layer.
///
/// Returns `source_p * P + Σ_{k=1..N} source_p * P^k (1-P)^(N+1-k) C(N,k) (1 - (1-P)^k)`.
pub fn update_from_source(source_p: f64, transmission_prob: f64, effective_edges: usize) -> f64 {
    let p = transmission_prob;
    if source_p == 0.0 || p == 0.0 {
        return 0.0;
    }
    let base = source_p * p;
    if effective_edges == 0 || p >= 1.0 {
        return base;
    }
    let n = effective_edges;
    let q = 1.0 - p;
    let mut boost = 0.0;
    if n <= 1000 {
        let mut binom = 1.0;
        for k in 1..=n {
            binom = binom * (n + 1 - k) as f64 / k as f64;
            let term = binom * p.powi(k as i32) * q.powi((n + 1 - k) as i32);
            boost += term * (1.0 - q.powi(k as i32));
        }
    } else {
        let (lp, lq) = (p.ln(), q.ln());
        let mut ln_binom = 0.0;
        for k in 1..=n {
            ln_binom += ((n + 1 - k) as f64).ln() - (k as f64).ln();
            let ln_term = ln_binom + k as f64 * lp + (n + 1 - k) as f64 * lq;
            boost += ln_term.exp() * (1.0 - q.powi(k as i32));
        }
    }
    (base + source_p * boost).min(source_p)
}

/// Updates every node of `target_layer` from its neighbors one layer up.
///
/// Sources rejected by `may_transmit` contribute nothing; targets rejected
/// by `may_receive` are left untouched and returned.
pub(crate) fn propagate_layer<S, R>(
    graph: &Graph,
    layers: &LayeredView,
    target_layer: usize,
    transmission_prob: f64,
    p: &mut [f64],
    p_bar: &mut [f64],
    may_transmit: S,
    may_receive: R,
) -> Vec<usize>
where
    S: Fn(usize) -> bool,
    R: Fn(usize) -> bool,
{
    debug_assert!(target_layer >= 1);
    let source_layer = Some(target_layer - 1);
    let mut refused = Vec::new();
    for &u in layers.layer(target_layer) {
        if !may_receive(u) {
            refused.push(u);
            continue;
        }
        let mut complement = p_bar[u];
        for &v in graph.neighbors(u) {
            if layers.layer_of(v) != source_layer || p[v] == 0.0 || !may_transmit(v) {
                continue;
            }
            let effective = count_effective_edges(graph, layers, u, v);
            let gain = update_from_source(p[v], transmission_prob, effective);
            complement *= 1.0 - gain;
        }
        p_bar[u] = complement;
        p[u] = 1.0 - complement;
    }
    refused
}

/// Initial `(P_I, 1 - P_I)` vectors with the creators set to certainty.
pub(crate) fn seeded_probabilities(node_count: usize, creators: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![0.0; node_count];
    let mut p_bar = vec![1.0; node_count];
    for &c in creators {
        p[c] = 1.0;
        p_bar[c] = 0.0;
    }
    (p, p_bar)
}

pub fn run_single_diffusion(
    graph: &Graph,
    creators: &[usize],
    params: &DiffusionParams,
) -> Result<DiffusionState> {
    params.validate()?;
    if creators.is_empty() {
        return Err(Error::input("at least one information creator is required"));
    }
    let layers = LayeredView::from_sources(graph, creators)?;
    let (mut p_i, mut p_i_bar) = seeded_probabilities(graph.node_count(), layers.sources());
    for level in 1..=layers.depth() {
        propagate_layer(
            graph,
            &layers,
            level,
            params.transmission_prob,
            &mut p_i,
            &mut p_i_bar,
            |_| true,
            |_| true,
        );
    }
    let labels = label_nodes(&p_i, params.threshold);
    Ok(DiffusionState {
        iterations_run: layers.depth(),
        p_i,
        p_i_bar,
        layers,
        labels,
    })
}

/// Infected iff `P_I >= threshold`.
pub fn label_nodes(p_i: &[f64], threshold: f64) -> Vec<NodeLabel> {
    p_i.iter()
        .map(|&p| {
            if p >= threshold {
                NodeLabel::Infected
            } else {
                NodeLabel::Susceptible
            }
        })
        .collect()
}

pub fn diffusion_metrics(state: &DiffusionState) -> DiffusionMetrics {
    DiffusionMetrics {
        iterations: state.iterations_run,
        sum_p_i: state.p_i.iter().sum(),
        infected_count: state
            .labels
            .iter()
            .filter(|&&l| l == NodeLabel::Infected)
            .count(),
    }
}
