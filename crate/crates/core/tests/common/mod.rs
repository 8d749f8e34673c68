//! Slow, independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use infodiff::Graph;

/// Dense adjacency matrix of a graph.
pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Graph from an upper-triangle bit pattern, row by row.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut it = bits.iter();
    for u in 0..n {
        for v in u + 1..n {
            if *it.next().unwrap_or(&false) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    n > 0 && bfs_matrix(&adjacency(g), 0).iter().all(|d| d.is_some())
}

/// Hop distances from `s` on a dense matrix.
pub fn bfs_matrix(a: &[Vec<bool>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; a.len()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for v in 0..a.len() {
            if a[u][v] && dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

/// Layer of every node: distance to the nearest source.
pub fn layers_by_min_distance(a: &[Vec<bool>], sources: &[usize]) -> Vec<Option<usize>> {
    let mut best = vec![None; a.len()];
    for &s in sources {
        for (v, d) in bfs_matrix(a, s).into_iter().enumerate() {
            if let Some(d) = d {
                best[v] = Some(best[v].map_or(d, |b: usize| b.min(d)));
            }
        }
    }
    best
}

/// Same-layer common neighbors of `target` and `source`, by scanning all nodes.
pub fn brute_effective_edges(a: &[Vec<bool>], layer: &[Option<usize>], target: usize, source: usize) -> usize {
    (0..a.len())
        .filter(|&i| i != target && i != source)
        .filter(|&i| a[target][i] && a[source][i] && layer[i] == layer[target])
        .count()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Single-source belief update with exact rationals.
pub fn exact_update(a: &BigRational, p: &BigRational, n: usize) -> BigRational {
    let q = BigRational::one() - p;
    let mut total = a * p;
    for k in 1..=n {
        let term = a
            * num_traits::pow(p.clone(), k)
            * num_traits::pow(q.clone(), n + 1 - k)
            * BigRational::from_integer(binomial(n, k))
            * (BigRational::one() - num_traits::pow(q.clone(), k));
        total += term;
    }
    total
}

/// Layered diffusion computed over exact rationals with transmission
/// probability `num / den`.
pub fn exact_single_diffusion(g: &Graph, sources: &[usize], num: i64, den: i64) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    let layer = layers_by_min_distance(&a, sources);
    let p = rational(num, den);
    let mut belief = vec![BigRational::zero(); n];
    for &s in sources {
        belief[s] = BigRational::one();
    }
    let depth = layer.iter().flatten().copied().max().unwrap_or(0);
    for l in 1..=depth {
        for u in (0..n).filter(|&u| layer[u] == Some(l)) {
            let mut complement = BigRational::one();
            for v in (0..n).filter(|&v| a[u][v] && layer[v] == Some(l - 1)) {
                let eff = brute_effective_edges(&a, &layer, u, v);
                complement *= BigRational::one() - exact_update(&belief[v], &p, eff);
            }
            belief[u] = BigRational::one() - complement;
        }
    }
    belief.iter().map(|b| b.to_f64().unwrap()).collect()
}

/// Closeness from all-pairs BFS, scaled by the reachable fraction.
pub fn brute_closeness(g: &Graph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    (0..n)
        .map(|u| {
            let d = bfs_matrix(&a, u);
            let reach: Vec<usize> = d.iter().flatten().copied().filter(|&x| x > 0).collect();
            if reach.is_empty() {
                return 0.0;
            }
            let r = reach.len() as f64;
            let total: usize = reach.iter().sum();
            (r / (n - 1) as f64) * (r / total as f64)
        })
        .collect()
}

/// Betweenness by counting shortest paths through every node for every
/// unordered pair.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    let dist: Vec<Vec<Option<usize>>> = (0..n).map(|s| bfs_matrix(&a, s)).collect();
    // sigma[s][t]: number of shortest s-t paths.
    let mut sigma = vec![vec![0.0f64; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[s][v].is_some()).collect();
        order.sort_by_key(|&v| dist[s][v]);
        sigma[s][s] = 1.0;
        for &v in order.iter().skip(1) {
            sigma[s][v] = (0..n)
                .filter(|&w| a[w][v] && dist[s][w].is_some() && dist[s][w].unwrap() + 1 == dist[s][v].unwrap())
                .map(|w| sigma[s][w])
                .sum();
        }
    }
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let Some(dst) = dist[s][t] else { continue };
            for v in (0..n).filter(|&v| v != s && v != t) {
                if let (Some(dsv), Some(dvt)) = (dist[s][v], dist[v][t]) {
                    if dsv + dvt == dst {
                        bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
                    }
                }
            }
        }
    }
    bc
}

/// Perron vector of the adjacency matrix from a dense symmetric eigensolve.
pub fn dense_eigenvector(g: &Graph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| if a[i][j] { 1.0 } else { 0.0 });
    let eig = m.symmetric_eigen();
    let top = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(top);
    let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
    let norm = v.norm();
    v.iter().map(|x| sign * x / norm).collect()
}

/// PageRank as the solution of the dense linear system
/// `(I - d M) x = (1 - d) / n`, with isolated nodes linking to everyone.
pub fn dense_pagerank(g: &Graph, damping: f64) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    let deg: Vec<usize> = a.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let link = if deg[j] == 0 {
            1.0 / n as f64
        } else if a[i][j] {
            1.0 / deg[j] as f64
        } else {
            0.0
        };
        let identity = if i == j { 1.0 } else { 0.0 };
        identity - damping * link
    });
    let rhs = DVector::from_element(n, (1.0 - damping) / n as f64);
    m.lu().solve(&rhs).unwrap().iter().copied().collect()
}

/// One-tailed signed-rank p-value by enumerating all `2^n` sign patterns
/// of the nonzero differences. `lower` selects `P(W+ <= observed)`.
pub fn brute_wilcoxon(differences: &[f64], lower: bool) -> f64 {
    let d: Vec<f64> = differences.iter().copied().filter(|&x| x != 0.0).collect();
    let n = d.len();
    let abs: Vec<f64> = d.iter().map(|x| x.abs()).collect();
    let ranks: Vec<f64> = abs
        .iter()
        .map(|&x| {
            let below = abs.iter().filter(|&&y| y < x).count() as f64;
            let equal = abs.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let observed: f64 = (0..n).filter(|&i| d[i] > 0.0).map(|i| ranks[i]).sum();
    let mut hits = 0u64;
    for mask in 0u64..(1 << n) {
        let w: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        let hit = if lower { w <= observed + 1e-9 } else { w >= observed - 1e-9 };
        hits += hit as u64;
    }
    hits as f64 / (1u64 << n) as f64
}

/// Single-source update in plain floating point, term by term.
pub fn float_update(a: f64, p: f64, n: usize) -> f64 {
    let q = 1.0 - p;
    let mut total = a * p;
    for k in 1..=n {
        let c: f64 = (1..=k).map(|i| (n + 1 - i) as f64 / i as f64).product();
        total += a * p.powi(k as i32) * q.powi((n + 1 - k) as i32) * c * (1.0 - q.powi(k as i32));
    }
    total
}

pub struct ReferenceCombat {
    pub p_if: Vec<f64>,
    pub p_it: Vec<f64>,
}

/// Competing diffusion: at global step `t` false news fills its layer `t`,
/// then true news fills its layer `t - 1`. Nodes whose false belief has
/// reached `t_d` neither receive nor pass on true news.
pub fn reference_combat(g: &Graph, ic_f: &[usize], ic_t: &[usize], p_f: f64, p_t: f64, t_d: f64) -> ReferenceCombat {
    let a = adjacency(g);
    let n = a.len();
    let lf = layers_by_min_distance(&a, ic_f);
    let lt = layers_by_min_distance(&a, ic_t);
    let depth = |l: &[Option<usize>]| l.iter().flatten().copied().max().unwrap_or(0);
    let (df, dt) = (depth(&lf), depth(&lt));
    let mut p_if = vec![0.0; n];
    let mut p_it = vec![0.0; n];
    ic_f.iter().for_each(|&s| p_if[s] = 1.0);
    ic_t.iter().for_each(|&s| p_it[s] = 1.0);
    for step in 1..=df.max(dt + 1) {
        if step <= df {
            for u in (0..n).filter(|&u| lf[u] == Some(step)) {
                let mut c = 1.0;
                for v in (0..n).filter(|&v| a[u][v] && lf[v] == Some(step - 1)) {
                    c *= 1.0 - float_update(p_if[v], p_f, brute_effective_edges(&a, &lf, u, v));
                }
                p_if[u] = 1.0 - c;
            }
        }
        let level = step - 1;
        if level >= 1 && level <= dt {
            for u in (0..n).filter(|&u| lt[u] == Some(level) && p_if[u] < t_d) {
                let mut c = 1.0;
                for v in (0..n).filter(|&v| a[u][v] && lt[v] == Some(level - 1) && p_if[v] < t_d) {
                    c *= 1.0 - float_update(p_it[v], p_t, brute_effective_edges(&a, &lt, u, v));
                }
                p_it[u] = 1.0 - c;
            }
        }
    }
    ReferenceCombat { p_if, p_it }
}
