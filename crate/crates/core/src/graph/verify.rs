use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Dijkstra, SpannerGraph};
use crate::error::{Error, Result};
use crate::geom::PointSet;

/// Default limit on `n` for exact all-pairs verification.
pub const DEFAULT_VERIFY_CAP: usize = 5000;

/// Environment variable capping the number of verification workers.
pub const THREADS_ENV: &str = "SPANNER_FORGE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub max_stretch: f64,
    pub witness_pair: (usize, usize),
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Refuse instances larger than this; `None` disables the check.
    pub cap: Option<usize>,
    /// Worker count; `None` reads [`THREADS_ENV`], falling back to rayon's default.
    pub threads: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: Some(DEFAULT_VERIFY_CAP),
            threads: None,
        }
    }
}

impl VerifyOptions {
    pub fn uncapped() -> Self {
        VerifyOptions {
            cap: None,
            threads: None,
        }
    }

    fn worker_count(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&t| t > 0)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub edge_count: usize,
    pub sparsity: f64,
    pub weight: f64,
    pub mst_weight: f64,
    pub lightness: f64,
    pub max_stretch: f64,
    pub witness_pair: (usize, usize),
}

// Per-source outcome: the worst ratio found, or the first unreachable pair.
#[derive(Clone, Copy)]
enum Partial {
    Worst(f64, (usize, usize)),
    Broken((usize, usize)),
}

fn combine(a: Partial, b: Partial) -> Partial {
    use Partial::*;
    match (a, b) {
        (Broken(p), Broken(q)) => Broken(p.min(q)),
        (Broken(p), _) | (_, Broken(p)) => Broken(p),
        (Worst(r1, p1), Worst(r2, p2)) => {
            if r1 > r2 || (r1 == r2 && p1 < p2) {
                Worst(r1, p1)
            } else {
                Worst(r2, p2)
            }
        }
    }
}

/// Exact maximum stretch over all pairs, with the default options.
pub fn verify_stretch(g: &SpannerGraph, points: &PointSet) -> Result<StretchReport> {
    verify_stretch_with(g, points, VerifyOptions::default())
}

/// Exact maximum stretch over all pairs.
///
/// Runs one full Dijkstra per source in parallel. The reduction keeps the
/// largest ratio and, among equal ratios, the lexicographically smallest pair,
/// so the answer does not depend on the worker count.
pub fn verify_stretch_with(g: &SpannerGraph, points: &PointSet, opts: VerifyOptions) -> Result<StretchReport> {
    let n = points.len();
    if g.n() != n {
        return Err(Error::InvalidParameter(format!(
            "graph has {} vertices, point set has {n}",
            g.n()
        )));
    }
    if let Some(cap) = opts.cap {
        if n > cap {
            return Err(Error::RefusedTooLarge { n, cap });
        }
    }
    let job = || {
        (0..n)
            .into_par_iter()
            .map_init(
                || Dijkstra::new(n),
                |dj, s| {
                    let dist = dj.all(g, s);
                    let mut best = Partial::Worst(1.0, (0, 1));
                    for (t, &d) in dist.iter().enumerate().skip(s + 1) {
                        if d.is_infinite() {
                            return Partial::Broken((s, t));
                        }
                        let ratio = d / points.dist(s, t);
                        best = combine(best, Partial::Worst(ratio, (s, t)));
                    }
                    best
                },
            )
            .reduce(|| Partial::Worst(1.0, (0, 1)), combine)
    };
    let outcome = match opts.worker_count() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    };
    match outcome {
        Partial::Broken((s, t)) => Err(Error::Disconnected(s, t)),
        Partial::Worst(max_stretch, witness_pair) => Ok(StretchReport {
            max_stretch,
            witness_pair,
        }),
    }
}

/// Weight of a Euclidean minimum spanning tree (dense Prim, O(n²)).
pub fn emst_weight(points: &PointSet) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        let mut bu = f64::INFINITY;
        for v in 0..n {
            if !in_tree[v] && best[v] < bu {
                bu = best[v];
                u = v;
            }
        }
        in_tree[u] = true;
        total += bu;
        for v in 0..n {
            if !in_tree[v] {
                let d = points.dist(u, v);
                if d < best[v] {
                    best[v] = d;
                }
            }
        }
    }
    total
}

pub fn metrics(g: &SpannerGraph, points: &PointSet) -> Result<MetricsReport> {
    metrics_with(g, points, VerifyOptions::default())
}

pub fn metrics_with(g: &SpannerGraph, points: &PointSet, opts: VerifyOptions) -> Result<MetricsReport> {
    let stretch = verify_stretch_with(g, points, opts)?;
    let weight = g.weight();
    let mst_weight = emst_weight(points);
    Ok(MetricsReport {
        edge_count: g.edge_count(),
        sparsity: g.edge_count() as f64 / points.len() as f64,
        weight,
        mst_weight,
        lightness: weight / mst_weight,
        max_stretch: stretch.max_stretch,
        witness_pair: stretch.witness_pair,
    })
}
