//! Greedy pruning: repeatedly thin a (1+δ)-spanner by substituting bundles of
//! parallel type-(i) edges and re-checking type-(ii) edges with helpers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::graph::{path_greedy, Dijkstra, SpannerGraph};

mod classify;
mod params;
mod phase1;
mod phase2;

pub use classify::{classify_edges, region_points, Classification, EdgeType, NetContext};
pub use params::{
    delta_update, log_star, update_params, CandidateMode, DistBackend, PruneParams, Regime, ALGORITHM_KAPPA, BETA,
    DEFAULT_KAPPA, DEFAULT_KAPPA_EFF,
};
pub use phase1::{level_of, phase1, Phase1Report, WorkingGraph};
pub use phase2::{helper_edge, phase2, HelperRecord, Phase2Report};

/// Fate of the input edges of one length bucket `L_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: i64,
    pub input: usize,
    pub type_i: usize,
    pub type_ii: usize,
    pub phase1_pruned: usize,
    pub phase2_dropped: usize,
    pub survived: usize,
}

/// Summary of one pruning iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub iteration: usize,
    pub delta: f64,
    pub alpha: f64,
    pub kappa_used: f64,
    pub input_edges: usize,
    pub type_i: usize,
    pub type_ii: usize,
    pub phase1: Phase1Report,
    pub phase2: Phase2Report,
    pub after_phase1_edges: usize,
    pub output_edges: usize,
    pub levels: Vec<LevelReport>,
    /// `max dist/|st| - 1` over input edges `st`, after each phase.
    pub measured_delta_phase1: Option<f64>,
    pub measured_delta_phase2: Option<f64>,
    pub next_delta: f64,
    pub next_alpha: f64,
}

impl PhaseReport {
    /// Every input edge of every bucket is accounted for exactly once.
    pub fn reconciles(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.input == l.phase1_pruned + l.phase2_dropped + l.survived && l.input == l.type_i + l.type_ii)
            && self.levels.iter().map(|l| l.input).sum::<usize>() == self.input_edges
    }
}

#[derive(Debug, Clone)]
pub struct PruneOutcome {
    pub graph: SpannerGraph,
    pub reports: Vec<PhaseReport>,
    /// Parameters after the last update.
    pub final_params: PruneParams,
}

/// `max dist_h(s,t)/|st| - 1` over the edges `st` of `edges`; infinite if
/// some pair is disconnected in `h`.
pub fn edge_stretch_excess(points: &PointSet, edges: &SpannerGraph, h: &SpannerGraph) -> f64 {
    let mut dj = Dijkstra::new(points.len());
    let mut worst: f64 = 0.0;
    for s in 0..points.len() {
        let targets: Vec<(usize, f64)> = edges.neighbors(s).iter().copied().filter(|&(t, _)| t > s).collect();
        if targets.is_empty() {
            continue;
        }
        let mut dist = vec![f64::INFINITY; points.len()];
        let mut remaining = targets.len();
        dj.run(h, s, f64::INFINITY, |u, d| {
            dist[u] = d;
            if targets.iter().any(|&(t, _)| t == u) {
                remaining -= 1;
            }
            remaining > 0
        });
        for (t, w) in targets {
            worst = worst.max(dist[t] / w - 1.0);
        }
    }
    worst
}

/// Runs the full pruning pipeline for `params.iterations` iterations.
///
/// `seed` defaults to the path-greedy `(1+eps)`-spanner. With zero
/// iterations the seed is returned unchanged.
pub fn greedy_prune(points: &PointSet, params: &PruneParams, seed: Option<&SpannerGraph>) -> Result<PruneOutcome> {
    params.validate()?;
    params.check_gate(points.dim());
    let seed = match seed {
        Some(g) if g.n() != points.len() => {
            return Err(Error::InvalidParameter(format!(
                "seed has {} vertices, point set has {}",
                g.n(),
                points.len()
            )))
        }
        Some(g) => g.clone(),
        None => path_greedy(points, 1.0 + params.eps)?,
    };
    let nets = if params.candidates == CandidateMode::Fast {
        Some(NetContext::new(points, params.eps, params.cross_factor())?)
    } else {
        None
    };

    let mut e = seed;
    let mut p = params.clone();
    let mut reports = Vec::new();
    for iteration in 0..params.iterations {
        let classes = classify_edges(points, &e, p.eps, p.candidates, nets.as_ref());
        let (e1, r1) = phase1(points, &e, &classes, &p, nets.as_ref())?;
        let measured1 = p.measure.then(|| edge_stretch_excess(points, &e, &e1.graph));
        let (e2, r2) = phase2(points, &e1, &classes, &p, nets.as_ref())?;
        let measured2 = p.measure.then(|| edge_stretch_excess(points, &e, &e2));

        let pruned: BTreeSet<(usize, usize)> = r1.pruned.iter().copied().collect();
        let dropped: BTreeSet<(usize, usize)> = r2.dropped.iter().copied().collect();
        let mut levels: std::collections::BTreeMap<i64, LevelReport> = Default::default();
        for edge in e.edges() {
            let j = level_of(edge.w, p.beta);
            let l = levels.entry(j).or_insert(LevelReport {
                level: j,
                input: 0,
                type_i: 0,
                type_ii: 0,
                phase1_pruned: 0,
                phase2_dropped: 0,
                survived: 0,
            });
            l.input += 1;
            match classes.get(edge.u, edge.v) {
                Some(EdgeType::TypeII) => l.type_ii += 1,
                _ => l.type_i += 1,
            }
            let k = (edge.u, edge.v);
            if pruned.contains(&k) {
                l.phase1_pruned += 1;
            } else if dropped.contains(&k) {
                l.phase2_dropped += 1;
            } else if e2.contains(edge.u, edge.v) {
                l.survived += 1;
            }
        }

        let next = update_params(&p);
        let report = PhaseReport {
            iteration: iteration + 1,
            delta: p.delta,
            alpha: p.alpha,
            kappa_used: p.kappa_used(),
            input_edges: e.edge_count(),
            type_i: classes.count(EdgeType::TypeI),
            type_ii: classes.count(EdgeType::TypeII),
            after_phase1_edges: e1.graph.edge_count(),
            output_edges: e2.edge_count(),
            phase1: r1,
            phase2: r2,
            levels: levels.into_values().collect(),
            measured_delta_phase1: measured1,
            measured_delta_phase2: measured2,
            next_delta: next.delta,
            next_alpha: next.alpha,
        };
        log::info!(
            "iteration {}: {} -> {} -> {} edges (type-(i) {}, type-(ii) {})",
            report.iteration,
            report.input_edges,
            report.after_phase1_edges,
            report.output_edges,
            report.type_i,
            report.type_ii
        );
        reports.push(report);
        e = e2;
        p = next;
    }
    if let Some(u) = e.first_unreachable() {
        return Err(Error::InternalInconsistency(format!(
            "pruned spanner is disconnected (vertex {u} unreachable from 0)"
        )));
    }
    Ok(PruneOutcome {
        graph: e,
        reports,
        final_params: p,
    })
}
