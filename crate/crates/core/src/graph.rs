//! Immutable undirected simple graphs, multi-source BFS layering and the
//! closed-triplet ("effective edge") query used by the diffusion update.
//!
//! Nodes are dense indices `0..node_count`. Adjacency lists are kept sorted,
//! which makes membership tests a binary search and common-neighbor scans a
//! linear merge.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a simple undirected graph, dropping self-loops and duplicate
    /// (including reversed) edges.
    pub fn new(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{node_count}"
                )));
            }
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    /// Graph with `node_count` nodes and no edges.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor indices of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Serializes to the edge-list text format: a `n m` header followed by
    /// one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count * 10);
        let _ = writeln!(out, "{} {}", self.node_count(), self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

        let (line_no, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let header = header?;
        let (n, m) = parse_pair(&header, line_no)?;

        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines {
            let line = line?;
            edges.push(parse_pair(&line, line_no)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header declares {m} edges but {} were listed", edges.len()),
            });
        }
        Self::new(n, &edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_edge_list(std::io::BufReader::new(file))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        file.write_all(self.to_edge_list().as_bytes())?;
        file.flush()?;
        Ok(())
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("`{tok}` is not a nonnegative integer"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            message: "expected exactly two integers".into(),
        });
    }
    Ok((a, b))
}

/// BFS layering of a graph from a set of source nodes.
///
/// `layers[l]` holds the nodes at hop distance `l` from the nearest source,
/// in ascending index order. Unreachable nodes have no layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredView {
    sources: Vec<usize>,
    layer_of: Vec<Option<usize>>,
    layers: Vec<Vec<usize>>,
}

impl LayeredView {
    /// Multi-source BFS: every node's layer is its distance to the nearest
    /// source.
    pub fn from_sources(graph: &Graph, sources: &[usize]) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::input("source set must not be empty"));
        }
        let n = graph.node_count();
        if let Some(&bad) = sources.iter().find(|&&s| s >= n) {
            return Err(Error::input(format!("source {bad} is not a node (n = {n})")));
        }
        let mut sources = sources.to_vec();
        sources.sort_unstable();
        sources.dedup();

        let mut layer_of = vec![None; n];
        let mut queue = VecDeque::with_capacity(n);
        for &s in &sources {
            layer_of[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let next = layer_of[u].map(|l| l + 1);
            for &w in graph.neighbors(u) {
                if layer_of[w].is_none() {
                    layer_of[w] = next;
                    queue.push_back(w);
                }
            }
        }

        let depth = layer_of.iter().flatten().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); depth + 1];
        for (node, layer) in layer_of.iter().enumerate() {
            if let Some(l) = layer {
                layers[*l].push(node);
            }
        }
        Ok(LayeredView {
            sources,
            layer_of,
            layers,
        })
    }

    /// Deduplicated, sorted source nodes.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn layer_of(&self, node: usize) -> Option<usize> {
        self.layer_of[node]
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, index: usize) -> &[usize] {
        self.layers.get(index).map_or(&[], Vec::as_slice)
    }

    /// Largest layer index among reachable nodes.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn is_reachable(&self, node: usize) -> bool {
        self.layer_of[node].is_some()
    }
}

/// Number of nodes `i` in the same layer as `target` that close a triangle
/// with `target` and `source`.
///
/// Requires `source` one layer above `target` and an edge between them.
pub fn effective_edge_count(
    graph: &Graph,
    layers: &LayeredView,
    target: usize,
    source: usize,
) -> Result<usize> {
    let n = graph.node_count();
    if target >= n || source >= n {
        return Err(Error::Contract(format!(
            "nodes ({target}, {source}) out of range for n = {n}"
        )));
    }
    match (layers.layer_of(target), layers.layer_of(source)) {
        (Some(lt), Some(ls)) if lt == ls + 1 => {}
        (lt, ls) => {
            return Err(Error::Contract(format!(
                "target {target} (layer {lt:?}) must sit one layer below source {source} (layer {ls:?})"
            )))
        }
    }
    if !graph.has_edge(target, source) {
        return Err(Error::Contract(format!(
            "no edge between target {target} and source {source}"
        )));
    }
    Ok(count_effective_edges(graph, layers, target, source))
}

/// Unchecked variant of [`effective_edge_count`] for hot loops.
pub(crate) fn count_effective_edges(
    graph: &Graph,
    layers: &LayeredView,
    target: usize,
    source: usize,
) -> usize {
    let layer = layers.layer_of(target);
    let (a, b) = (graph.neighbors(target), graph.neighbors(source));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if layers.layer_of(a[i]) == layer {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}
