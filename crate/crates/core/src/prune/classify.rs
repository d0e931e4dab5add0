use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::params::CandidateMode;
use crate::geom::{self, PointSet, Region, Side};
use crate::graph::SpannerGraph;
use crate::error::Result;
use crate::nets::{approximate_level, build_net_tree_spanner_with, region_points_at, NetHierarchy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    /// `A` or `B` holds no input point.
    TypeI,
    /// Both regions hold input points.
    TypeII,
}

/// Type of every edge of a graph, keyed by `(u, v)` with `u < v`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Classification {
    pub types: BTreeMap<(usize, usize), EdgeType>,
}

impl Classification {
    pub fn get(&self, u: usize, v: usize) -> Option<EdgeType> {
        self.types.get(&crate::graph::key(u, v)).copied()
    }

    pub fn type_i(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.types
            .iter()
            .filter(|(_, &t)| t == EdgeType::TypeI)
            .map(|(&k, _)| k)
    }

    pub fn type_ii(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.types
            .iter()
            .filter(|(_, &t)| t == EdgeType::TypeII)
            .map(|(&k, _)| k)
    }

    pub fn count(&self, ty: EdgeType) -> usize {
        self.types.values().filter(|&&t| t == ty).count()
    }
}

/// Net hierarchy, its net-tree spanner, and the cross-edge factor that fixes
/// approximate levels.
#[derive(Debug, Clone)]
pub struct NetContext {
    pub hierarchy: NetHierarchy,
    pub cross_edges: SpannerGraph,
    pub factor: f64,
}

impl NetContext {
    pub fn new(points: &PointSet, eps: f64, factor: f64) -> Result<Self> {
        let hierarchy = crate::nets::build_hierarchy(points);
        let cross_edges = build_net_tree_spanner_with(&hierarchy, points, eps, factor)?;
        Ok(NetContext {
            hierarchy,
            cross_edges,
            factor,
        })
    }

    /// Net points approximating the region `which` of `st`.
    pub fn region(&self, points: &PointSet, s: usize, t: usize, eps: f64, which: Side) -> Vec<usize> {
        let level = approximate_level(&self.hierarchy, points, s, t, self.factor);
        region_points_at(&self.hierarchy, points, s, t, eps, which, level)
    }
}

/// Input points in region `which` of the ellipse around `st`.
pub fn region_points(points: &PointSet, s: usize, t: usize, eps: f64, which: Side) -> Vec<usize> {
    let want = match which {
        Side::A => Region::InA,
        Side::B => Region::InB,
    };
    let (ps, pt) = (points.point(s), points.point(t));
    (0..points.len())
        .filter(|&x| x != s && x != t)
        .filter(|&x| geom::region_of(ps, pt, points.point(x), eps).ok() == Some(want))
        .collect()
}

fn exact_type(points: &PointSet, s: usize, t: usize, eps: f64) -> EdgeType {
    let (ps, pt) = (points.point(s), points.point(t));
    let (mut in_a, mut in_b) = (false, false);
    for x in 0..points.len() {
        match geom::region_of(ps, pt, points.point(x), eps) {
            Ok(Region::InA) => in_a = true,
            Ok(Region::InB) => in_b = true,
            _ => {}
        }
        if in_a && in_b {
            return EdgeType::TypeII;
        }
    }
    EdgeType::TypeI
}

/// Splits the edges of `g` into type-(i) and type-(ii).
///
/// Exact mode tests every point against the regions; fast mode tests
/// whether the net-point approximations of both regions are nonempty and
/// needs `nets`.
pub fn classify_edges(
    points: &PointSet,
    g: &SpannerGraph,
    eps: f64,
    mode: CandidateMode,
    nets: Option<&NetContext>,
) -> Classification {
    let mut types = BTreeMap::new();
    for e in g.edges() {
        let ty = match (mode, nets) {
            (CandidateMode::Fast, Some(ctx)) => {
                let a = ctx.region(points, e.u, e.v, eps, Side::A);
                let b = ctx.region(points, e.u, e.v, eps, Side::B);
                if a.is_empty() || b.is_empty() {
                    EdgeType::TypeI
                } else {
                    EdgeType::TypeII
                }
            }
            _ => exact_type(points, e.u, e.v, eps),
        };
        types.insert((e.u, e.v), ty);
    }
    if mode == CandidateMode::Fast && nets.is_some() && log::log_enabled!(log::Level::Debug) {
        for (&(u, v), &ty) in &types {
            let exact = exact_type(points, u, v, eps);
            if exact != ty {
                log::debug!("edge ({u}, {v}): fast {ty:?}, exact {exact:?}");
            }
        }
    }
    Classification { types }
}
