//! Weighted undirected spanner graphs over a [`PointSet`], with exact
//! shortest paths and the quality measures used throughout the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;

mod greedy;
mod oracle;
mod verify;

pub use greedy::path_greedy;
pub use oracle::{brute_force_optimal, Objective, DEFAULT_ORACLE_LIMIT};
pub use verify::{
    emst_weight, metrics, metrics_with, verify_stretch, verify_stretch_with, MetricsReport,
    StretchReport, VerifyOptions, DEFAULT_VERIFY_CAP, THREADS_ENV,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Undirected simple graph with `u < v` edge keys and per-vertex adjacency.
#[derive(Debug, Clone, Default)]
pub struct SpannerGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
    adj: Vec<Vec<(usize, f64)>>,
}

impl PartialEq for SpannerGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

#[inline]
pub(crate) fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SpannerGraph {
    pub fn new(n: usize) -> Self {
        SpannerGraph {
            n,
            edges: BTreeMap::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from index pairs, taking weights from the coordinates.
    pub fn from_pairs(points: &PointSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = SpannerGraph::new(points.len());
        for &(u, v) in pairs {
            g.insert(points, u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self) -> f64 {
        self.edges.values().sum()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&key(u, v)).copied()
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| Edge { u, v, w })
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        for index in [u, v] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        if u == v {
            return Err(Error::InvalidEdge(u, v));
        }
        Ok(())
    }

    /// Adds `uv` with weight `|uv|`. Returns false when it was already present.
    pub fn insert(&mut self, points: &PointSet, u: usize, v: usize) -> Result<bool> {
        self.check(u, v)?;
        Ok(self.add_weighted(u, v, points.dist(u, v)))
    }

    /// Adds an edge with an explicit weight; false if the edge already exists.
    pub fn add_weighted(&mut self, u: usize, v: usize, w: f64) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        let k = key(u, v);
        if self.edges.contains_key(&k) {
            return false;
        }
        self.edges.insert(k, w);
        self.adj[u].push((v, w));
        self.adj[v].push((u, w));
        true
    }

    pub fn remove(&mut self, u: usize, v: usize) -> Option<f64> {
        let w = self.edges.remove(&key(u, v))?;
        if let Some(pos) = self.adj[u].iter().position(|&(x, _)| x == v) {
            self.adj[u].swap_remove(pos);
        }
        if let Some(pos) = self.adj[v].iter().position(|&(x, _)| x == u) {
            self.adj[v].swap_remove(pos);
        }
        Some(w)
    }

    /// True when every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    /// Some vertex not reachable from 0, if any.
    pub fn first_unreachable(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    /// Checks that every stored weight matches the point distance within `rel_tol`.
    pub fn weights_match(&self, points: &PointSet, rel_tol: f64) -> bool {
        self.edges().all(|e| {
            let d = points.dist(e.u, e.v);
            (e.w - d).abs() <= rel_tol * d.max(1.0)
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // Min-heap on distance, then node index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Reusable single-source shortest-path workspace.
///
/// Only touched entries are reset between runs, so repeated bounded searches
/// on a large graph stay proportional to the explored region.
#[derive(Debug, Clone)]
pub struct Dijkstra {
    dist: Vec<f64>,
    settled: Vec<bool>,
    touched: Vec<usize>,
    heap: BinaryHeap<HeapItem>,
}

impl Dijkstra {
    pub fn new(n: usize) -> Self {
        Dijkstra {
            dist: vec![f64::INFINITY; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &u in &self.touched {
            self.dist[u] = f64::INFINITY;
            self.settled[u] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    fn ensure(&mut self, n: usize) {
        if self.dist.len() < n {
            self.dist.resize(n, f64::INFINITY);
            self.settled.resize(n, false);
        }
    }

    /// Settles vertices in distance order up to `cutoff`, calling `visit` on each.
    /// `visit` returns false to stop early.
    pub fn run<F>(&mut self, g: &SpannerGraph, source: usize, cutoff: f64, mut visit: F)
    where
        F: FnMut(usize, f64) -> bool,
    {
        self.ensure(g.n());
        self.reset();
        self.dist[source] = 0.0;
        self.touched.push(source);
        self.heap.push(HeapItem {
            dist: 0.0,
            node: source,
        });
        while let Some(HeapItem { dist, node }) = self.heap.pop() {
            if self.settled[node] || dist > self.dist[node] {
                continue;
            }
            if dist > cutoff {
                break;
            }
            self.settled[node] = true;
            if !visit(node, dist) {
                break;
            }
            for &(next, w) in g.neighbors(node) {
                let nd = dist + w;
                if nd < self.dist[next] && nd <= cutoff {
                    if self.dist[next].is_infinite() {
                        self.touched.push(next);
                    }
                    self.dist[next] = nd;
                    self.heap.push(HeapItem { dist: nd, node: next });
                }
            }
        }
    }

    /// Distance from `s` to `t`, or `None` when `t` is not reached within `cutoff`.
    pub fn distance(&mut self, g: &SpannerGraph, s: usize, t: usize, cutoff: f64) -> Option<f64> {
        let mut found = None;
        self.run(g, s, cutoff, |u, d| {
            if u == t {
                found = Some(d);
                false
            } else {
                true
            }
        });
        found
    }

    /// Full single-source distances (infinite where unreachable).
    pub fn all(&mut self, g: &SpannerGraph, s: usize) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; g.n()];
        self.run(g, s, f64::INFINITY, |u, d| {
            out[u] = d;
            true
        });
        out
    }
}

/// Exact shortest-path distance; `None` means unreachable (within `cutoff`, if given).
pub fn shortest_dist(g: &SpannerGraph, s: usize, t: usize, cutoff: Option<f64>) -> Result<Option<f64>> {
    for index in [s, t] {
        if index >= g.n() {
            return Err(Error::IndexOutOfRange { index, n: g.n() });
        }
    }
    let mut dj = Dijkstra::new(g.n());
    Ok(dj.distance(g, s, t, cutoff.unwrap_or(f64::INFINITY)))
}
