use serde::{Deserialize, Serialize};

use super::{path_greedy, SpannerGraph};
use crate::error::{Error, Result};
use crate::geom::PointSet;

/// Largest instance accepted by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 10;

// Hard ceiling: candidate sets are tracked as u64 bitmasks (11 points = 55 pairs).
const MAX_ORACLE_N: usize = 11;

const STRETCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    MinEdges,
    MinWeight,
}

struct Search<'a> {
    n: usize,
    cand: Vec<(usize, usize)>,
    len: Vec<f64>,
    bound: Vec<f64>,
    objective: Objective,
    points: &'a PointSet,
    best_mask: u64,
    best_cost: f64,
    // A DFS leaf at best_cost has been found; later equal-cost leaves are
    // lexicographically larger and can be pruned.
    dfs_at_best: bool,
    // Scratch distance matrix.
    dist: Vec<f64>,
}

impl Search<'_> {
    fn cost(&self, mask: u64) -> f64 {
        match self.objective {
            Objective::MinEdges => mask.count_ones() as f64,
            Objective::MinWeight => (0..self.cand.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| self.len[e])
                .sum(),
        }
    }

    // Stretch holds when every edge in `mask` is available.
    fn feasible(&mut self, mask: u64) -> bool {
        let n = self.n;
        self.dist.fill(f64::INFINITY);
        for u in 0..n {
            self.dist[u * n + u] = 0.0;
        }
        for (e, &(u, v)) in self.cand.iter().enumerate() {
            if mask >> e & 1 == 1 {
                self.dist[u * n + v] = self.len[e];
                self.dist[v * n + u] = self.len[e];
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = self.dist[i * n + k];
                if dik.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let via = dik + self.dist[k * n + j];
                    if via < self.dist[i * n + j] {
                        self.dist[i * n + j] = via;
                    }
                }
            }
        }
        self.cand
            .iter()
            .enumerate()
            .all(|(e, &(u, v))| self.dist[u * n + v] <= self.bound[e])
    }

    // Lower bound on the cost of any completion: connect the components of
    // the included edges using the cheapest undecided edges (Kruskal).
    fn lower_bound(&self, included: u64, next: usize) -> f64 {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for (e, &(u, v)) in self.cand.iter().enumerate() {
            if included >> e & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                    comps -= 1;
                }
            }
        }
        let base = self.cost(included);
        match self.objective {
            Objective::MinEdges => base + (comps - 1) as f64,
            Objective::MinWeight => {
                let mut rest: Vec<usize> = (next..self.cand.len()).collect();
                rest.sort_by(|&a, &b| self.len[a].total_cmp(&self.len[b]));
                let mut extra = 0.0;
                for e in rest {
                    if comps == 1 {
                        break;
                    }
                    let (u, v) = self.cand[e];
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a != b {
                        parent[a] = b;
                        comps -= 1;
                        extra += self.len[e];
                    }
                }
                base + extra
            }
        }
    }

    fn prunable(&self, lb: f64) -> bool {
        let slack = 1e-12 * self.best_cost.abs().max(1.0);
        // Equal-cost MinWeight leaves can be prefixes of each other, so only
        // edge counts use the lexicographic shortcut.
        let tie_prune = self.dfs_at_best && self.objective == Objective::MinEdges;
        lb > self.best_cost + slack || (tie_prune && lb >= self.best_cost - slack)
    }

    fn dfs(&mut self, next: usize, included: u64) {
        let m = self.cand.len();
        let undecided = if next >= m { 0 } else { (!0u64 >> (64 - (m - next))) << next };
        if !self.feasible(included | undecided) {
            return;
        }
        if self.prunable(self.lower_bound(included, next)) {
            return;
        }
        if next == m {
            let cost = self.cost(included);
            let slack = 1e-12 * self.best_cost.abs().max(1.0);
            if cost < self.best_cost - slack {
                self.best_cost = cost;
                self.best_mask = included;
                self.dfs_at_best = true;
            } else if cost <= self.best_cost + slack {
                if lex_less(included, self.best_mask) {
                    self.best_mask = included;
                }
                self.dfs_at_best = true;
            }
            return;
        }
        self.dfs(next + 1, included | 1 << next);
        self.dfs(next + 1, included);
    }
}

// Compares the sorted edge lists encoded by two masks.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    let above = !0u64 << low;
    if a >> low & 1 == 1 {
        // a holds the smaller element here unless b has nothing further.
        b & above != 0
    } else {
        a & above == 0
    }
}

/// An optimal `(1+eps)`-spanner under `objective`, by branch and bound over
/// all edge subsets with the greedy spanner as the starting incumbent.
///
/// Among optimal sets the lexicographically smallest edge list is returned.
pub fn brute_force_optimal(points: &PointSet, eps: f64, objective: Objective, limit_n: usize) -> Result<SpannerGraph> {
    let n = points.len();
    let limit = limit_n.min(MAX_ORACLE_N);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if !(eps >= 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be >= 0, got {eps}")));
    }
    let t = 1.0 + eps;
    let cand: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let len: Vec<f64> = cand.iter().map(|&(u, v)| points.dist(u, v)).collect();
    let bound: Vec<f64> = len.iter().map(|&d| t * d * (1.0 + STRETCH_TOL)).collect();

    let greedy = path_greedy(points, t)?;
    let mut seed = 0u64;
    for (e, &(u, v)) in cand.iter().enumerate() {
        if greedy.contains(u, v) {
            seed |= 1 << e;
        }
    }

    let mut search = Search {
        n,
        cand,
        len,
        bound,
        objective,
        points,
        best_mask: seed,
        best_cost: 0.0,
        dfs_at_best: false,
        dist: vec![0.0; n * n],
    };
    search.best_cost = search.cost(seed);
    search.dfs(0, 0);

    let pairs: Vec<(usize, usize)> = (0..search.cand.len())
        .filter(|&e| search.best_mask >> e & 1 == 1)
        .map(|e| search.cand[e])
        .collect();
    SpannerGraph::from_pairs(search.points, &pairs)
}
