use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use super::classify::{Classification, EdgeType, NetContext};
use super::params::{CandidateMode, PruneParams};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::graph::{Dijkstra, SpannerGraph};

/// Edge set of one iteration, remembering which edges came from its input.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkingGraph {
    pub graph: SpannerGraph,
    /// Edges of the iteration's input still present with their old status.
    pub old: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Phase1Report {
    pub sub_iterations: usize,
    pub thresholds: Vec<f64>,
    pub substitutes_added: usize,
    pub type_i_pruned: usize,
    /// Old edges that were picked as a substitute and so turned new.
    pub converted: usize,
    /// Pruned edges put back because the substitutes left them stretched
    /// beyond [`PruneParams::phase1_bound`].
    pub restored: usize,
    pub pruned: Vec<(usize, usize)>,
}

/// Index of the length bucket `[beta^j, beta^{j+1})` holding `w`.
pub fn level_of(w: f64, beta: f64) -> i64 {
    let mut j = (w.ln() / beta.ln()).floor() as i64;
    while beta.powf(j as f64) > w {
        j -= 1;
    }
    while beta.powf((j + 1) as f64) <= w {
        j += 1;
    }
    j
}

// Candidate pairs of one level and the type-(i) edges each one covers.
struct LevelIndex {
    pairs: Vec<(usize, usize)>,
    covers: Vec<Vec<usize>>,
    edge_pairs: Vec<Vec<usize>>,
}

fn covers(points: &PointSet, s: usize, t: usize, x: usize, y: usize, bound: f64) -> bool {
    let xy = points.dist(x, y);
    let a = points.dist(s, x) + xy + points.dist(y, t);
    let b = points.dist(s, y) + xy + points.dist(x, t);
    a.min(b) <= bound
}

fn build_index(
    points: &PointSet,
    edges: &[(usize, usize)],
    min_len: f64,
    slack: f64,
    candidates: Option<&SpannerGraph>,
) -> LevelIndex {
    let n = points.len();
    let mut pair_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut covers_list: Vec<Vec<usize>> = Vec::new();
    let mut edge_pairs = vec![Vec::new(); edges.len()];
    let mut inside = vec![false; n];
    for (eid, &(s, t)) in edges.iter().enumerate() {
        let st = points.dist(s, t);
        let bound = (1.0 + slack) * st * (1.0 + 1e-12);
        let members: Vec<usize> = (0..n)
            .filter(|&x| points.dist(s, x) + points.dist(x, t) <= bound)
            .collect();
        for &x in &members {
            inside[x] = true;
        }
        let mut found: Vec<(usize, usize)> = Vec::new();
        match candidates {
            None => {
                for (a, &x) in members.iter().enumerate() {
                    for &y in &members[a + 1..] {
                        if points.dist(x, y) >= min_len && covers(points, s, t, x, y, bound) {
                            found.push((x, y));
                        }
                    }
                }
            }
            Some(cross) => {
                for &x in &members {
                    for &(y, w) in cross.neighbors(x) {
                        if x < y && inside[y] && w >= min_len && covers(points, s, t, x, y, bound) {
                            found.push((x, y));
                        }
                    }
                }
            }
        }
        for &x in &members {
            inside[x] = false;
        }
        for p in found {
            let id = *pair_id.entry(p).or_insert_with(|| {
                pairs.push(p);
                covers_list.push(Vec::new());
                pairs.len() - 1
            });
            covers_list[id].push(eid);
            edge_pairs[eid].push(id);
        }
    }
    LevelIndex {
        pairs,
        covers: covers_list,
        edge_pairs,
    }
}

/// First pruning phase: replace bundles of same-scale type-(i) edges by a
/// single substitute edge.
///
/// For sub-iterations `i = 1..ceil(log2 alpha)` and each length bucket `L_j`,
/// while some candidate pair `{x, y}` with `|xy| >= beta^j/25` covers at least
/// `alpha/(2^i kappa)` live type-(i) old edges of `L_j` (that is,
/// `|sx| + |xy| + |yt| <= (1+eps)|st|`), the pair covering the most edges is
/// added as a new edge and the covered edges are removed. Fast mode draws
/// pairs from the net-tree cross edges and relaxes the test to `1+5eps`.
pub fn phase1(
    points: &PointSet,
    e: &SpannerGraph,
    classes: &Classification,
    params: &PruneParams,
    nets: Option<&NetContext>,
) -> Result<(WorkingGraph, Phase1Report)> {
    let cross = match params.candidates {
        CandidateMode::Exact => None,
        CandidateMode::Fast => Some(
            &nets
                .ok_or_else(|| Error::InvalidParameter("fast candidates need a net context".into()))?
                .cross_edges,
        ),
    };
    let mut graph = e.clone();
    let mut old: BTreeSet<(usize, usize)> = e.pairs().into_iter().collect();

    let mut levels: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for edge in e.edges() {
        if classes.get(edge.u, edge.v) == Some(EdgeType::TypeI) {
            levels.entry(level_of(edge.w, params.beta)).or_default().push((edge.u, edge.v));
        }
    }
    let mut alive: BTreeMap<i64, Vec<bool>> = levels.iter().map(|(&j, v)| (j, vec![true; v.len()])).collect();
    let mut index: HashMap<i64, LevelIndex> = HashMap::new();

    let subs = params.sub_iterations();
    let mut report = Phase1Report {
        sub_iterations: subs,
        ..Default::default()
    };
    let slack = params.phase1_slack();

    for i in 1..=subs {
        let threshold = params.threshold(i);
        report.thresholds.push(threshold);
        for (&j, edges) in &levels {
            let live = alive[&j].iter().filter(|&&a| a).count();
            if live == 0 || (live as f64) < threshold {
                continue;
            }
            let idx = index.entry(j).or_insert_with(|| {
                build_index(points, edges, params.beta.powf(j as f64) / 25.0, slack, cross)
            });
            let flags = alive.get_mut(&j).expect("level present");
            let mut count: Vec<usize> = idx
                .covers
                .iter()
                .map(|c| c.iter().filter(|&&eid| flags[eid]).count())
                .collect();
            let mut heap: BinaryHeap<_> = count
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0 && c as f64 >= threshold)
                .map(|(id, &c)| (c, Reverse(idx.pairs[id]), id))
                .collect();
            while let Some((c, _, id)) = heap.pop() {
                if c != count[id] {
                    let now = count[id];
                    if now > 0 && now as f64 >= threshold {
                        heap.push((now, Reverse(idx.pairs[id]), id));
                    }
                    continue;
                }
                let (x, y) = idx.pairs[id];
                for &eid in &idx.covers[id] {
                    if !flags[eid] {
                        continue;
                    }
                    flags[eid] = false;
                    for &p in &idx.edge_pairs[eid] {
                        count[p] -= 1;
                    }
                    let (s, t) = edges[eid];
                    if (s, t) == (x, y) {
                        continue;
                    }
                    graph.remove(s, t);
                    old.remove(&(s, t));
                    report.type_i_pruned += 1;
                    report.pruned.push((s, t));
                }
                if old.remove(&(x, y)) {
                    report.converted += 1;
                } else if !graph.contains(x, y) {
                    graph.add_weighted(x, y, points.dist(x, y));
                }
                report.substitutes_added += 1;
            }
        }
    }
    restore_stretched(points, &mut graph, &mut old, &mut report, params.phase1_bound());
    Ok((WorkingGraph { graph, old }, report))
}

// Substitute paths run through shorter pairs, which are themselves only
// approximately kept; when eps is large this can cut a point off entirely.
// Pruned edges whose endpoints end up farther apart than allowed come back,
// shortest first.
fn restore_stretched(
    points: &PointSet,
    graph: &mut SpannerGraph,
    old: &mut BTreeSet<(usize, usize)>,
    report: &mut Phase1Report,
    bound: f64,
) {
    let mut order: Vec<(f64, usize, usize)> = report.pruned.iter().map(|&(s, t)| (points.dist(s, t), s, t)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut dj = Dijkstra::new(points.len());
    let mut back = BTreeSet::new();
    for (w, s, t) in order {
        if dj.distance(graph, s, t, bound * w * (1.0 + 1e-12)).is_none() {
            graph.add_weighted(s, t, w);
            old.insert((s, t));
            back.insert((s, t));
        }
    }
    if !back.is_empty() {
        log::debug!("phase 1 restored {} of {} pruned edges", back.len(), report.pruned.len());
        report.pruned.retain(|e| !back.contains(e));
        report.type_i_pruned -= back.len();
        report.restored = back.len();
    }
}
