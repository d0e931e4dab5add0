use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::graph::SpannerGraph;

const NONE: usize = usize::MAX;

/// Nested greedy nets `N_0 ⊇ N_1 ⊇ …` with radii `r_i = 2^i`.
///
/// `N_0` is the whole point set and the top level holds a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct NetHierarchy {
    levels: Vec<Vec<usize>>,
    // parent[i][p] for p in N_i: its closest point of N_{i+1}.
    parent: Vec<Vec<usize>>,
    // ancestor[i][u]: the level-i net point above u.
    ancestor: Vec<Vec<usize>>,
    spread: f64,
}

impl NetHierarchy {
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn radius(i: usize) -> f64 {
        (i as f64).exp2()
    }

    /// Upper bound on `|u, ancestor(u, i)|`: `r_1 + … + r_i`.
    pub fn ancestor_reach(i: usize) -> f64 {
        ((i + 1) as f64).exp2() - 2.0
    }

    pub fn spread(&self) -> f64 {
        self.spread
    }

    pub fn n(&self) -> usize {
        self.ancestor[0].len()
    }

    /// Parent of net point `p` of level `i`, or `None` at the top or if `p ∉ N_i`.
    pub fn parent(&self, p: usize, i: usize) -> Option<usize> {
        let q = *self.parent.get(i)?.get(p)?;
        (q != NONE).then_some(q)
    }

    pub fn ancestor(&self, u: usize, i: usize) -> usize {
        self.ancestor[i][u]
    }

    pub fn contains(&self, p: usize, i: usize) -> bool {
        self.ancestor[i][p] == p
    }

    /// One line per level: `level: indices`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, lvl) in self.levels.iter().enumerate() {
            let _ = write!(out, "{i}:");
            for p in lvl {
                let _ = write!(out, " {p}");
            }
            out.push('\n');
        }
        out
    }
}

/// Builds greedy `2^i`-nets level by level, scanning in index order.
pub fn build_hierarchy(points: &PointSet) -> NetHierarchy {
    let n = points.len();
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    let mut parent = Vec::new();
    let mut i = 0;
    while levels[i].len() > 1 {
        let r = NetHierarchy::radius(i + 1);
        let mut next: Vec<usize> = Vec::new();
        for &p in &levels[i] {
            if next.iter().all(|&q| points.dist(p, q) > r) {
                next.push(p);
            }
        }
        let mut par = vec![NONE; n];
        for &p in &levels[i] {
            let mut best = NONE;
            let mut bd = f64::INFINITY;
            for &q in &next {
                let d = points.dist(p, q);
                if d < bd || (d == bd && q < best) {
                    bd = d;
                    best = q;
                }
            }
            par[p] = best;
        }
        parent.push(par);
        levels.push(next);
        i += 1;
    }
    parent.push(vec![NONE; n]);

    let mut ancestor = vec![(0..n).collect::<Vec<_>>()];
    for i in 1..levels.len() {
        let row: Vec<usize> = ancestor[i - 1].iter().map(|&a| parent[i - 1][a]).collect();
        ancestor.push(row);
    }
    NetHierarchy {
        levels,
        parent,
        ancestor,
        spread: points.spread(),
    }
}

/// The default cross-edge radius factor `4/ε + 32`.
pub fn cross_factor(eps: f64) -> f64 {
    4.0 / eps + 32.0
}

/// Net-tree spanner: all pairs of `N_i` within `(4/ε + 32)·r_i`, over all levels.
pub fn build_net_tree_spanner(h: &NetHierarchy, points: &PointSet, eps: f64) -> Result<SpannerGraph> {
    build_net_tree_spanner_with(h, points, eps, cross_factor(eps))
}

pub fn build_net_tree_spanner_with(h: &NetHierarchy, points: &PointSet, eps: f64, factor: f64) -> Result<SpannerGraph> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    if h.n() != points.len() {
        return Err(Error::InvalidParameter("hierarchy built over a different point set".into()));
    }
    let mut g = SpannerGraph::new(points.len());
    for (i, lvl) in h.levels.iter().enumerate() {
        let reach = factor * NetHierarchy::radius(i);
        for (a, &p) in lvl.iter().enumerate() {
            for &q in &lvl[a + 1..] {
                let d = points.dist(p, q);
                if d <= reach {
                    g.add_weighted(p, q, d);
                }
            }
        }
    }
    Ok(g)
}

/// Lowest level at which the ancestors of `u` and `v` are joined by a cross
/// edge of `spanner`, with those ancestors.
pub fn approximate_edge(h: &NetHierarchy, spanner: &SpannerGraph, u: usize, v: usize) -> Result<(usize, usize, usize)> {
    let n = h.n();
    for index in [u, v] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if u == v {
        return Err(Error::InvalidEdge(u, v));
    }
    for i in 0..h.num_levels() {
        let (a, b) = (h.ancestor(u, i), h.ancestor(v, i));
        if a == b {
            break;
        }
        if spanner.contains(a, b) {
            return Ok((a, b, i));
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no cross edge between ancestors of {u} and {v}"
    )))
}

/// Level of the approximate edge of `uv` under the radius factor, without a
/// materialized spanner.
pub(crate) fn approximate_level(h: &NetHierarchy, points: &PointSet, u: usize, v: usize, factor: f64) -> usize {
    for i in 0..h.num_levels() {
        let (a, b) = (h.ancestor(u, i), h.ancestor(v, i));
        if a == b || points.dist(a, b) <= factor * NetHierarchy::radius(i) {
            return i;
        }
    }
    h.top()
}
