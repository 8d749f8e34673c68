//! Random network families: Erdős–Rényi, Gaussian random partition and the
//! LFR community benchmark. Every generator is a pure function of its
//! parameters and a `u64` seed.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::{rng_from_seed, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErParams {
    pub n: usize,
    pub edge_exist_prob: f64,
}

/// Gaussian random partition. Community sizes are drawn from a normal
/// distribution with mean `s` and variance `s / v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPartitionParams {
    pub n: usize,
    pub s: f64,
    pub v: f64,
    pub p_in: f64,
    pub p_out: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LfrParams {
    pub n: usize,
    /// Degree power-law exponent.
    pub tau1: f64,
    /// Community-size power-law exponent.
    pub tau2: f64,
    /// Fraction of each node's edges that leave its community.
    pub mu: f64,
    pub average_degree: f64,
    pub min_community: usize,
}

impl LfrParams {
    /// Benchmark settings used for the LFR batteries.
    pub fn reference() -> Self {
        LfrParams {
            n: 1000,
            tau1: 3.0,
            tau2: 1.5,
            mu: 0.1,
            average_degree: 5.0,
            min_community: 50,
        }
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

impl ErParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("n must be at least 1"));
        }
        check_prob("edge_exist_prob", self.edge_exist_prob)
    }
}

impl GaussianPartitionParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("n must be at least 1"));
        }
        if !(self.s >= 1.0) || !self.s.is_finite() {
            return Err(Error::input(format!("mean community size s must be >= 1, got {}", self.s)));
        }
        if !(self.v > 0.0) || !self.v.is_finite() {
            return Err(Error::input(format!("shape parameter v must be > 0, got {}", self.v)));
        }
        check_prob("p_in", self.p_in)?;
        check_prob("p_out", self.p_out)
    }

    pub fn size_variance(&self) -> f64 {
        self.s / self.v
    }
}

impl LfrParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::input("LFR needs at least 2 nodes"));
        }
        if !(self.tau1 > 1.0) {
            return Err(Error::input(format!("tau1 must be > 1, got {}", self.tau1)));
        }
        if !(self.tau2 > 1.0) {
            return Err(Error::input(format!("tau2 must be > 1, got {}", self.tau2)));
        }
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(Error::input(format!("mu must lie in (0, 1), got {}", self.mu)));
        }
        if !(self.average_degree > 0.0) || !self.average_degree.is_finite() {
            return Err(Error::input("average_degree must be positive"));
        }
        if self.min_community == 0 || self.min_community > self.n {
            return Err(Error::input(format!(
                "min_community must lie in 1..={}, got {}",
                self.n, self.min_community
            )));
        }
        Ok(())
    }
}

/// Node-to-community assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Communities {
    membership: Vec<usize>,
    count: usize,
}

impl Communities {
    pub fn new(membership: Vec<usize>) -> Self {
        let count = membership.iter().max().map_or(0, |m| m + 1);
        Communities { membership, count }
    }

    pub fn of(&self, node: usize) -> usize {
        self.membership[node]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.membership {
            sizes[c] += 1;
        }
        sizes
    }

    /// Fraction of edges whose endpoints lie in different communities.
    pub fn mixing_fraction(&self, graph: &Graph) -> f64 {
        if graph.edge_count() == 0 {
            return 0.0;
        }
        let inter = graph
            .edges()
            .filter(|&(u, v)| self.membership[u] != self.membership[v])
            .count();
        inter as f64 / graph.edge_count() as f64
    }

    /// Writes `node community_id` lines.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (node, c) in self.membership.iter().enumerate() {
            writeln!(out, "{node} {c}")?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn gen_er(params: &ErParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let mut rng = rng_from_seed(seed);
    let n = params.n;
    let p = params.edge_exist_prob;
    let mut edges = Vec::new();
    if p > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if p >= 1.0 || rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n, &edges)
}

/// Community sizes for a Gaussian partition: round-half-up draws, clamped
/// to at least one, with the final community truncated to fit `n`.
fn gaussian_sizes(params: &GaussianPartitionParams, rng: &mut SimRng) -> Result<Vec<usize>> {
    let normal = Normal::new(params.s, params.size_variance().sqrt())
        .map_err(|e| Error::input(format!("invalid size distribution: {e}")))?;
    let mut sizes = Vec::new();
    let mut total = 0;
    while total < params.n {
        let draw = (normal.sample(rng) + 0.5).floor();
        let size = if draw < 1.0 { 1 } else { draw as usize };
        let size = size.min(params.n - total);
        sizes.push(size);
        total += size;
    }
    Ok(sizes)
}

pub fn gen_gaussian_partition(
    params: &GaussianPartitionParams,
    seed: u64,
) -> Result<(Graph, Communities)> {
    params.validate()?;
    let mut rng = rng_from_seed(seed);
    let sizes = gaussian_sizes(params, &mut rng)?;
    let membership: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &size)| std::iter::repeat(c).take(size))
        .collect();

    let n = params.n;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if membership[u] == membership[v] {
                params.p_in
            } else {
                params.p_out
            };
            if p > 0.0 && (p >= 1.0 || rng.random::<f64>() < p) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::new(n, &edges)?, Communities::new(membership)))
}

/// Continuous power law `x^-exponent` truncated to `[lo, hi]`.
#[derive(Debug, Clone, Copy)]
struct TruncatedPowerLaw {
    exponent: f64,
    lo: f64,
    hi: f64,
}

impl TruncatedPowerLaw {
    /// `∫ x^(k - exponent) dx` over the support.
    fn moment_integral(&self, k: f64) -> f64 {
        let e = k - self.exponent + 1.0;
        if e.abs() < 1e-12 {
            (self.hi / self.lo).ln()
        } else {
            (self.hi.powf(e) - self.lo.powf(e)) / e
        }
    }

    fn mean(&self) -> f64 {
        if self.hi <= self.lo {
            return self.lo;
        }
        self.moment_integral(1.0) / self.moment_integral(0.0)
    }

    fn sample(&self, rng: &mut SimRng) -> f64 {
        if self.hi <= self.lo {
            return self.lo;
        }
        let u: f64 = rng.random();
        let e = 1.0 - self.exponent;
        let (a, b) = (self.lo.powf(e), self.hi.powf(e));
        (a + u * (b - a)).powf(1.0 / e)
    }

    /// Lower cutoff giving the requested mean, found by bisection.
    fn with_mean(exponent: f64, hi: f64, mean: f64) -> Option<Self> {
        let at = |lo: f64| TruncatedPowerLaw { exponent, lo, hi };
        if at(1.0).mean() > mean || mean > hi {
            return None;
        }
        let (mut a, mut b) = (1.0, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if at(mid).mean() < mean {
                a = mid;
            } else {
                b = mid;
            }
        }
        Some(at(0.5 * (a + b)))
    }
}

/// LFR benchmark (Lancichinetti, Fortunato, Radicchi).
///
/// Degrees follow a truncated power law (cap `sqrt(n) * average_degree`)
/// whose lower cutoff is tuned to the requested mean. Each node splits its
/// degree into internal and external stubs with expected external share
/// `mu`; community sizes follow a second power law. Stubs are matched by a
/// configuration model and bad pairs are repaired by edge swaps. A draw
/// whose stubs cannot be repaired is discarded and redrawn; all attempts
/// share a budget of `100 * n`.
pub fn gen_lfr(params: &LfrParams, seed: u64) -> Result<(Graph, Communities)> {
    params.validate()?;
    let mut rng = rng_from_seed(seed);
    let n = params.n;
    let mut budget = 100 * n;

    let max_degree = ((n as f64).sqrt() * params.average_degree)
        .floor()
        .min((n - 1) as f64)
        .max(1.0);
    let degree_law = TruncatedPowerLaw::with_mean(params.tau1, max_degree, params.average_degree)
        .ok_or_else(|| {
            Error::Generation(format!(
                "average_degree {} is unreachable with tau1 = {} and maximum degree {}",
                params.average_degree, params.tau1, max_degree
            ))
        })?;
    loop {
        match lfr_attempt(params, &degree_law, max_degree as usize, &mut rng, &mut budget) {
            Err(Error::Generation(_)) if budget > 0 => continue,
            other => return other,
        }
    }
}

/// Retries spent on community sizes or placement before the degree
/// sequence is redrawn.
const LOCAL_ATTEMPTS: usize = 1000;

fn lfr_attempt(
    params: &LfrParams,
    degree_law: &TruncatedPowerLaw,
    max_degree: usize,
    rng: &mut SimRng,
    budget: &mut usize,
) -> Result<(Graph, Communities)> {
    let n = params.n;
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| (degree_law.sample(rng).round() as usize).clamp(1, max_degree))
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let (idx, _) = degrees
            .iter()
            .enumerate()
            .min_by_key(|&(i, &d)| (d, i))
            .expect("n >= 2");
        degrees[idx] += 1;
    }

    let single_community = 2 * params.min_community > n;
    let mut internal: Vec<usize> = degrees
        .iter()
        .map(|&d| {
            if single_community {
                return d;
            }
            let target = (1.0 - params.mu) * d as f64;
            let base = target.floor();
            let bump = rng.random::<f64>() < target - base;
            base as usize + usize::from(bump)
        })
        .collect();
    let max_internal = internal.iter().copied().max().unwrap_or(0);

    let sizes = if single_community {
        vec![n]
    } else {
        lfr_community_sizes(params, max_internal, rng, budget)?
    };
    let membership = assign_communities(&sizes, &internal, rng, budget)?;

    // Internal stub totals must be even inside each community.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
    for (node, &c) in membership.iter().enumerate() {
        members[c].push(node);
    }
    for group in &members {
        let total: usize = group.iter().map(|&u| internal[u]).sum();
        if total % 2 == 1 {
            let &u = group
                .iter()
                .max_by_key(|&&u| (internal[u], std::cmp::Reverse(u)))
                .expect("odd total implies a member");
            internal[u] -= 1;
        }
    }

    let mut existing: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for (c, group) in members.iter().enumerate() {
        let stubs: Vec<usize> = group
            .iter()
            .flat_map(|&u| std::iter::repeat(u).take(internal[u]))
            .collect();
        let what = format!("internal edges of community {c}");
        edges.extend(wire_stubs(&what, stubs, |_, _| true, &mut existing, rng, budget)?);
    }
    let external: Vec<usize> = (0..n)
        .flat_map(|u| std::iter::repeat(u).take(degrees[u] - internal[u]))
        .collect();
    edges.extend(wire_stubs(
        "external edges",
        external,
        |u, v| membership[u] != membership[v],
        &mut existing,
        rng,
        budget,
    )?);

    Ok((Graph::new(n, &edges)?, Communities::new(membership)))
}

fn lfr_community_sizes(
    params: &LfrParams,
    max_internal: usize,
    rng: &mut SimRng,
    budget: &mut usize,
) -> Result<Vec<usize>> {
    let n = params.n;
    let min_c = params.min_community;
    let max_c = min_c.max(max_internal + 1).min(n);
    let law = TruncatedPowerLaw {
        exponent: params.tau2,
        lo: min_c as f64,
        hi: max_c as f64,
    };
    for _ in 0..LOCAL_ATTEMPTS {
        if *budget == 0 {
            break;
        }
        *budget -= 1;

        let mut sizes = Vec::new();
        let mut total = 0;
        while total < n {
            let s = (law.sample(rng).round() as usize).clamp(min_c, max_c);
            sizes.push(s);
            total += s;
        }
        // Shave the excess off communities in random order.
        let mut excess = total - n;
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.shuffle(rng);
        for &i in &order {
            let take = excess.min(sizes[i] - min_c);
            sizes[i] -= take;
            excess -= take;
            if excess == 0 {
                break;
            }
        }
        if excess == 0 && sizes.iter().any(|&s| s > max_internal) {
            return Ok(sizes);
        }
    }
    Err(Error::Generation(format!(
        "could not partition {n} nodes into communities of size >= {min_c} hosting internal degree {max_internal}"
    )))
}

/// Places nodes, largest internal degree first, into communities that have
/// room and are big enough to host all of the node's internal neighbors.
fn assign_communities(
    sizes: &[usize],
    internal: &[usize],
    rng: &mut SimRng,
    budget: &mut usize,
) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..internal.len()).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(internal[u]), u));

    'attempt: for _ in 0..LOCAL_ATTEMPTS {
        if *budget == 0 {
            break;
        }
        *budget -= 1;

        let mut free: Vec<usize> = sizes.to_vec();
        let mut membership = vec![0; internal.len()];
        for &u in &order {
            let candidates: Vec<usize> = (0..sizes.len())
                .filter(|&c| free[c] > 0 && sizes[c] > internal[u])
                .collect();
            let total_free: usize = candidates.iter().map(|&c| free[c]).sum();
            if total_free == 0 {
                continue 'attempt;
            }
            let mut pick = rng.random_range(0..total_free);
            let mut chosen = candidates[0];
            for &c in &candidates {
                if pick < free[c] {
                    chosen = c;
                    break;
                }
                pick -= free[c];
            }
            free[chosen] -= 1;
            membership[u] = chosen;
        }
        return Ok(membership);
    }
    Err(Error::Generation(
        "no community is large enough for some node's internal degree".into(),
    ))
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Configuration-model matching of `stubs`, repairing self-loops, repeated
/// edges and disallowed pairs by swapping with already accepted edges.
fn wire_stubs<F>(
    what: &str,
    mut stubs: Vec<usize>,
    allowed: F,
    existing: &mut HashSet<(usize, usize)>,
    rng: &mut SimRng,
    budget: &mut usize,
) -> Result<Vec<(usize, usize)>>
where
    F: Fn(usize, usize) -> bool,
{
    debug_assert!(stubs.len() % 2 == 0);
    stubs.shuffle(rng);
    let valid = |u: usize, v: usize, existing: &HashSet<(usize, usize)>| {
        u != v && allowed(u, v) && !existing.contains(&edge_key(u, v))
    };

    let mut accepted = Vec::with_capacity(stubs.len() / 2);
    let mut pending = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if valid(u, v, existing) {
            existing.insert(edge_key(u, v));
            accepted.push((u, v));
        } else {
            pending.push((u, v));
        }
    }

    // Each swap replaces {(u, v), (a, b)} with {(u, a), (v, b)}. The swap is
    // taken whenever (u, a) is valid; an invalid (v, b) stays pending, so the
    // defect walks through the matching until it lands somewhere valid.
    let mut local = 10 * stubs.len() + 100;
    while let Some((u, v)) = pending.pop() {
        if *budget == 0 || local == 0 || accepted.is_empty() {
            return Err(Error::Generation(format!(
                "{what}: stub pair ({u}, {v}) unresolved after the rewiring budget"
            )));
        }
        *budget -= 1;
        local -= 1;
        let slot = rng.random_range(0..accepted.len());
        let (mut a, mut b) = accepted[slot];
        if rng.random::<bool>() {
            std::mem::swap(&mut a, &mut b);
        }
        existing.remove(&edge_key(a, b));
        if !valid(u, a, existing) {
            existing.insert(edge_key(a, b));
            pending.push((u, v));
            continue;
        }
        existing.insert(edge_key(u, a));
        accepted[slot] = (u, a);
        if valid(v, b, existing) {
            existing.insert(edge_key(v, b));
            accepted.push((v, b));
        } else {
            pending.push((v, b));
        }
    }
    Ok(accepted)
}
