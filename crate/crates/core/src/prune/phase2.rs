use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::classify::{region_points, Classification, EdgeType, NetContext};
use super::params::{CandidateMode, DistBackend, PruneParams};
use super::phase1::WorkingGraph;
use crate::error::{Error, Result};
use crate::geom::{PointSet, Side};
use crate::graph::{Dijkstra, SpannerGraph};
use crate::nets::{build_cluster_graph, cluster_dist};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelperRecord {
    pub s: usize,
    pub t: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Phase2Report {
    pub type_ii_considered: usize,
    pub type_ii_kept: usize,
    pub type_ii_dropped: usize,
    /// Helper edges that were not already present.
    pub helpers_added: usize,
    pub helpers: Vec<HelperRecord>,
    pub dropped: Vec<(usize, usize)>,
}

fn farthest_pair(points: &PointSet, a_side: &[usize], b_side: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(f64, (usize, usize))> = None;
    for &a in a_side {
        for &b in b_side {
            if a == b {
                continue;
            }
            let d = points.dist(a, b);
            let key = (a.min(b), a.max(b));
            let better = match best {
                None => true,
                Some((bd, bk)) => d > bd || (d == bd && key < bk),
            };
            if better {
                best = Some((d, key));
            }
        }
    }
    best.map(|(_, k)| k)
}

/// The helper edge kept alongside a type-(ii) edge `st`: the farthest pair
/// `a ∈ A, b ∈ B` (ties lexicographic).
pub fn helper_edge(
    points: &PointSet,
    s: usize,
    t: usize,
    eps: f64,
    mode: CandidateMode,
    nets: Option<&NetContext>,
) -> Result<(usize, usize)> {
    let (a_side, b_side) = match (mode, nets) {
        (CandidateMode::Fast, Some(ctx)) => (
            ctx.region(points, s, t, eps, Side::A),
            ctx.region(points, s, t, eps, Side::B),
        ),
        _ => (
            region_points(points, s, t, eps, Side::A),
            region_points(points, s, t, eps, Side::B),
        ),
    };
    farthest_pair(points, &a_side, &b_side).ok_or_else(|| {
        Error::InternalInconsistency(format!("type-(ii) edge ({s}, {t}) has an empty witness region"))
    })
}

/// Second pruning phase.
///
/// Starts from `E1` without its old type-(ii) edges and revisits those in
/// increasing length order (ties lexicographic). An edge is kept, together
/// with a helper edge, only when the current graph does not already connect
/// its endpoints within `(1 + kappa²·delta)|st|`.
pub fn phase2(
    points: &PointSet,
    e1: &WorkingGraph,
    classes: &Classification,
    params: &PruneParams,
    nets: Option<&NetContext>,
) -> Result<(SpannerGraph, Phase2Report)> {
    let mut pending: Vec<(f64, usize, usize)> = e1
        .old
        .iter()
        .filter(|&&(u, v)| classes.get(u, v) == Some(EdgeType::TypeII))
        .map(|&(u, v)| (points.dist(u, v), u, v))
        .collect();
    pending.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut g = e1.graph.clone();
    for &(_, u, v) in &pending {
        g.remove(u, v);
    }
    let mut report = Phase2Report {
        type_ii_considered: pending.len(),
        ..Default::default()
    };
    let bound = params.phase2_bound();

    let keep = |g: &mut SpannerGraph, report: &mut Phase2Report, s: usize, t: usize| -> Result<()> {
        g.add_weighted(s, t, points.dist(s, t));
        let (a, b) = helper_edge(points, s, t, params.eps, params.candidates, nets)?;
        if !g.contains(a, b) {
            g.add_weighted(a, b, points.dist(a, b));
            report.helpers_added += 1;
        }
        report.helpers.push(HelperRecord { s, t, a, b });
        report.type_ii_kept += 1;
        Ok(())
    };

    match params.backend {
        DistBackend::ExactDijkstra => {
            let mut dj = Dijkstra::new(points.len());
            for &(w, s, t) in &pending {
                let limit = bound * w * (1.0 + 1e-12);
                if dj.distance(&g, s, t, limit).is_some() {
                    report.type_ii_dropped += 1;
                    report.dropped.push((s, t));
                } else {
                    keep(&mut g, &mut report, s, t)?;
                }
            }
        }
        DistBackend::ClusterGraphs => {
            let eps = params.eps;
            let mut by_scale: BTreeMap<i32, Vec<(f64, usize, usize)>> = BTreeMap::new();
            for &p in &pending {
                by_scale.entry(p.0.log2().floor() as i32).or_default().push(p);
            }
            for (i, group) in by_scale {
                let scale = (i as f64).exp2();
                let mut below = SpannerGraph::new(points.len());
                for e in g.edges().filter(|e| e.w < scale) {
                    below.add_weighted(e.u, e.v, e.w);
                }
                let mut f = build_cluster_graph(&below, i, eps, true, points.len())?;
                for (w, s, t) in group {
                    let d = cluster_dist(&f, s, t, params.hop_cap);
                    if d + eps * eps * scale <= (1.0 + eps) * bound * w {
                        report.type_ii_dropped += 1;
                        report.dropped.push((s, t));
                        continue;
                    }
                    keep(&mut g, &mut report, s, t)?;
                    let (ms, mt) = (f.membership[s].clone(), f.membership[t].clone());
                    for &(cs, ds) in &ms {
                        for &(ct, dt) in &mt {
                            if cs != ct {
                                f.inter.push((cs.min(ct), cs.max(ct), ds + w + dt));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((g, report))
}
