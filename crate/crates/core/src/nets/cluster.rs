use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Dijkstra, SpannerGraph};

/// Default hop limit for [`cluster_dist`].
pub const DEFAULT_HOP_CAP: usize = 20;

/// Clustered proxy of a graph at scale `2^i`.
///
/// Vertices are first optionally contracted along very short edges; the
/// contracted graph is then covered by graph-metric balls of radius `ε·2^i`
/// around greedily chosen centers.
#[derive(Debug, Clone)]
pub struct ClusterGraph {
    pub level: i32,
    pub radius: f64,
    /// Contraction threshold used, or 0 when nothing was contracted.
    pub contract_below: f64,
    /// Center vertex of each cluster (a contracted representative).
    pub centers: Vec<usize>,
    /// For every original point: `(cluster, distance to its center)`.
    pub membership: Vec<Vec<(usize, f64)>>,
    /// Inter-cluster edges `(a, b, w)` with `a < b` cluster indices.
    pub inter: Vec<(usize, usize, f64)>,
    /// Original point → contracted representative (smallest index of its class).
    pub contraction: Vec<usize>,
}

impl ClusterGraph {
    pub fn n(&self) -> usize {
        self.contraction.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.centers.len()
    }

    pub fn intra_edge_count(&self) -> usize {
        self.membership.iter().map(Vec::len).sum()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds the cluster graph of `g_below` at scale `2^i`.
///
/// With `contract`, edges of weight at most `2^i·ε²/n` are collapsed first.
pub fn build_cluster_graph(g_below: &SpannerGraph, i: i32, eps: f64, contract: bool, n: usize) -> Result<ClusterGraph> {
    let scale = (i as f64).exp2();
    if let Some(e) = g_below.edges().find(|e| e.w >= scale) {
        return Err(Error::InvalidParameter(format!(
            "edge ({}, {}) of weight {} is not below 2^{i}",
            e.u, e.v, e.w
        )));
    }
    let nv = g_below.n();
    let radius = eps * scale;

    let mut parent: Vec<usize> = (0..nv).collect();
    let contract_below = if contract { scale * eps * eps / n.max(1) as f64 } else { 0.0 };
    if contract {
        for e in g_below.edges() {
            if e.w <= contract_below {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                // The smaller index represents the class.
                if a < b {
                    parent[b] = a;
                } else if b < a {
                    parent[a] = b;
                }
            }
        }
    }
    let contraction: Vec<usize> = (0..nv).map(|u| find(&mut parent, u)).collect();

    let mut work = SpannerGraph::new(nv);
    if contract {
        let mut best: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for e in g_below.edges() {
            let (a, b) = (contraction[e.u], contraction[e.v]);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let w = best.entry(key).or_insert(e.w);
            if e.w < *w {
                *w = e.w;
            }
        }
        for ((a, b), w) in best {
            work.add_weighted(a, b, w);
        }
    } else {
        work = g_below.clone();
    }

    let reps: Vec<usize> = (0..nv).filter(|&u| contraction[u] == u).collect();
    let mut rep_clusters: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    let mut centers = Vec::new();
    let mut dj = Dijkstra::new(nv);
    for &v in &reps {
        if !rep_clusters[v].is_empty() {
            continue;
        }
        let c = centers.len();
        centers.push(v);
        dj.run(&work, v, radius, |u, d| {
            rep_clusters[u].push((c, d));
            true
        });
    }

    let mut inter: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut offer = |a: usize, b: usize, w: f64| {
        if a == b {
            return;
        }
        let key = (a.min(b), a.max(b));
        let slot = inter.entry(key).or_insert(w);
        if w < *slot {
            *slot = w;
        }
    };
    let center_of: BTreeMap<usize, usize> = centers.iter().enumerate().map(|(c, &v)| (v, c)).collect();
    for (c, &v) in centers.iter().enumerate() {
        dj.run(&work, v, scale, |u, d| {
            if let Some(&c2) = center_of.get(&u) {
                offer(c, c2, d);
            }
            true
        });
    }
    for e in work.edges() {
        for &(cu, du) in &rep_clusters[e.u] {
            for &(cv, dv) in &rep_clusters[e.v] {
                offer(cu, cv, du + e.w + dv);
            }
        }
    }

    let membership = (0..nv).map(|u| rep_clusters[contraction[u]].clone()).collect();
    Ok(ClusterGraph {
        level: i,
        radius,
        contract_below,
        centers,
        membership,
        inter: inter.into_iter().map(|((a, b), w)| (a, b, w)).collect(),
        contraction,
    })
}

/// Bounded-hop distance in a cluster graph.
///
/// Paths start with one intra-cluster edge from `s` to a center, use only
/// inter-cluster edges in between, and end with one intra-cluster edge into
/// `t`; at most `hop_cap` edges in total. Returns infinity when no such path
/// exists.
pub fn cluster_dist(f: &ClusterGraph, s: usize, t: usize, hop_cap: usize) -> f64 {
    if f.contraction[s] == f.contraction[t] {
        return 0.0;
    }
    let k = f.centers.len();
    let mut cur = vec![f64::INFINITY; k];
    for &(c, d) in &f.membership[s] {
        cur[c] = cur[c].min(d);
    }
    let mut best = through(f, &cur, t);
    for _ in 0..hop_cap.saturating_sub(2) {
        let mut next = cur.clone();
        let mut changed = false;
        for &(a, b, w) in &f.inter {
            if cur[a] + w < next[b] {
                next[b] = cur[a] + w;
                changed = true;
            }
            if cur[b] + w < next[a] {
                next[a] = cur[b] + w;
                changed = true;
            }
        }
        cur = next;
        best = best.min(through(f, &cur, t));
        if !changed {
            break;
        }
    }
    if hop_cap < 2 {
        return f64::INFINITY;
    }
    best
}

fn through(f: &ClusterGraph, at_center: &[f64], t: usize) -> f64 {
    f.membership[t]
        .iter()
        .map(|&(c, d)| at_center[c] + d)
        .fold(f64::INFINITY, f64::min)
}
