//! Centrality measures and information-creator selection.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityKind {
    Degree,
    Eigenvector,
    Closeness,
    Betweenness,
    PageRank,
    Random,
}

impl CentralityKind {
    pub const ALL: [CentralityKind; 6] = [
        CentralityKind::Degree,
        CentralityKind::Eigenvector,
        CentralityKind::Closeness,
        CentralityKind::Betweenness,
        CentralityKind::PageRank,
        CentralityKind::Random,
    ];

    /// The five score-based measures, without `Random`.
    pub const MEASURES: [CentralityKind; 5] = [
        CentralityKind::Degree,
        CentralityKind::Eigenvector,
        CentralityKind::Closeness,
        CentralityKind::Betweenness,
        CentralityKind::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CentralityKind::Degree => "degree",
            CentralityKind::Eigenvector => "eigenvector",
            CentralityKind::Closeness => "closeness",
            CentralityKind::Betweenness => "betweenness",
            CentralityKind::PageRank => "page_rank",
            CentralityKind::Random => "random",
        }
    }
}

impl fmt::Display for CentralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CentralityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        CentralityKind::ALL
            .into_iter()
            .find(|k| k.name() == key || (key == "pagerank" && *k == CentralityKind::PageRank))
            .ok_or_else(|| Error::input(format!("unknown centrality `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub kind: CentralityKind,
    pub score: Vec<f64>,
}

pub const PAGERANK_DAMPING: f64 = 0.85;
pub const PAGERANK_TOL: f64 = 1e-10;
pub const PAGERANK_MAX_ITER: usize = 10_000;
pub const EIGENVECTOR_TOL: f64 = 1e-8;
pub const EIGENVECTOR_MAX_ITER: usize = 1_000;

pub fn degree_centrality(graph: &Graph) -> CentralityScores {
    CentralityScores {
        kind: CentralityKind::Degree,
        score: (0..graph.node_count()).map(|u| graph.degree(u) as f64).collect(),
    }
}

/// Power iteration on `A + I`, normalized to unit Euclidean length.
///
/// The identity shift leaves eigenvectors unchanged and keeps bipartite
/// graphs from oscillating between `±λ`.
pub fn eigenvector_centrality(graph: &Graph, tol: f64, max_iter: usize) -> Result<CentralityScores> {
    if graph.edge_count() == 0 {
        return Err(Error::input("eigenvector centrality needs at least one edge"));
    }
    let n = graph.node_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        for u in 0..n {
            next[u] = x[u] + graph.neighbors(u).iter().map(|&v| x[v]).sum::<f64>();
        }
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        next.iter_mut().for_each(|v| *v /= norm);
        let diff = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if diff < tol {
            return Ok(CentralityScores {
                kind: CentralityKind::Eigenvector,
                score: x,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "eigenvector centrality",
        iterations: max_iter,
        last_iterate: x,
    })
}

fn bfs_distances(graph: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Wasserman–Faust closeness: the reachable-set closeness scaled by the
/// fraction of the graph that is reachable.
pub fn closeness_centrality(graph: &Graph) -> CentralityScores {
    let n = graph.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let score = (0..n)
        .map(|u| {
            bfs_distances(graph, u, &mut dist, &mut queue);
            let (reached, total) = dist
                .iter()
                .filter(|&&d| d != usize::MAX && d > 0)
                .fold((0usize, 0usize), |(r, t), &d| (r + 1, t + d));
            if total == 0 || n < 2 {
                0.0
            } else {
                let r = reached as f64;
                (r / (n - 1) as f64) * (r / total as f64)
            }
        })
        .collect();
    CentralityScores {
        kind: CentralityKind::Closeness,
        score,
    }
}

/// Brandes betweenness, unnormalized, each unordered pair counted once.
pub fn betweenness_centrality(graph: &Graph) -> CentralityScores {
    let n = graph.node_count();
    let mut centrality = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        // Predecessors are the neighbors one hop closer to s.
        for &w in order.iter().rev() {
            for &v in graph.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    centrality.iter_mut().for_each(|c| *c /= 2.0);
    CentralityScores {
        kind: CentralityKind::Betweenness,
        score: centrality,
    }
}

/// PageRank on the undirected random walk with uniform teleportation.
/// Isolated nodes spread their mass uniformly.
pub fn pagerank(graph: &Graph, damping: f64, tol: f64, max_iter: usize) -> Result<CentralityScores> {
    let n = graph.node_count();
    if n == 0 {
        return Ok(CentralityScores {
            kind: CentralityKind::PageRank,
            score: Vec::new(),
        });
    }
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&u| graph.degree(u) == 0).map(|u| x[u]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        for v in 0..n {
            let inflow: f64 = graph
                .neighbors(v)
                .iter()
                .map(|&u| x[u] / graph.degree(u) as f64)
                .sum();
            next[v] = base + damping * inflow;
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let diff: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if diff < tol {
            return Ok(CentralityScores {
                kind: CentralityKind::PageRank,
                score: x,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "pagerank",
        iterations: max_iter,
        last_iterate: x,
    })
}

/// Scores for a measure with the default numerical settings.
pub fn compute(graph: &Graph, kind: CentralityKind) -> Result<CentralityScores> {
    match kind {
        CentralityKind::Degree => Ok(degree_centrality(graph)),
        CentralityKind::Eigenvector => {
            eigenvector_centrality(graph, EIGENVECTOR_TOL, EIGENVECTOR_MAX_ITER)
        }
        CentralityKind::Closeness => Ok(closeness_centrality(graph)),
        CentralityKind::Betweenness => Ok(betweenness_centrality(graph)),
        CentralityKind::PageRank => pagerank(graph, PAGERANK_DAMPING, PAGERANK_TOL, PAGERANK_MAX_ITER),
        CentralityKind::Random => Err(Error::input("the random strategy carries no scores")),
    }
}

/// Nodes ordered by descending score, ties by ascending index.
pub fn ranking(scores: &CentralityScores) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.score.len()).collect();
    order.sort_by(|&a, &b| scores.score[b].total_cmp(&scores.score[a]).then(a.cmp(&b)));
    order
}

/// Full selection order for a strategy; any prefix of length `k` is the
/// `k`-seed selection. For `Random` this is a seeded uniform permutation.
pub fn selection_order(graph: &Graph, kind: CentralityKind, rng_seed: u64) -> Result<Vec<usize>> {
    if kind == CentralityKind::Random {
        let mut order: Vec<usize> = (0..graph.node_count()).collect();
        order.shuffle(&mut rng_from_seed(rng_seed));
        return Ok(order);
    }
    Ok(ranking(&compute(graph, kind)?))
}

/// The `k` information creators chosen by a strategy.
pub fn select_seeds(graph: &Graph, kind: CentralityKind, k: usize, rng_seed: u64) -> Result<Vec<usize>> {
    if k > graph.node_count() {
        return Err(Error::input(format!(
            "cannot select {k} seeds from {} nodes",
            graph.node_count()
        )));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut order = selection_order(graph, kind, rng_seed)?;
    order.truncate(k);
    Ok(order)
}
