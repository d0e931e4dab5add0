use super::{Dijkstra, SpannerGraph};
use crate::error::{Error, Result};
use crate::geom::PointSet;

// Upper-bound matrix is kept only below this size (n² f64 entries).
const BOUND_CACHE_MAX_N: usize = 4096;

// Ties between a path and the direct edge count as covered.
const GREEDY_TOL: f64 = 1e-12;

/// Sorted candidate pairs: by length, then lexicographically.
pub(crate) fn sorted_pairs(points: &PointSet) -> Vec<(f64, u32, u32)> {
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((points.dist(u, v), u as u32, v as u32));
        }
    }
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    pairs
}

/// The path-greedy `t`-spanner.
///
/// Pairs are scanned by increasing length (ties lexicographic) and `uv` is
/// added iff the current graph distance exceeds `t·|uv|`.
pub fn path_greedy(points: &PointSet, t: f64) -> Result<SpannerGraph> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("stretch must be >= 1, got {t}")));
    }
    let n = points.len();
    let mut g = SpannerGraph::new(n);
    let mut dj = Dijkstra::new(n);
    let pairs = sorted_pairs(points);

    if n > BOUND_CACHE_MAX_N {
        for (d, u, v) in pairs {
            let (u, v) = (u as usize, v as usize);
            let limit = t * d * (1.0 + GREEDY_TOL);
            if dj.distance(&g, u, v, limit).is_none() {
                g.add_weighted(u, v, d);
            }
        }
        return Ok(g);
    }

    // bound[u*n+v] is an upper bound on dist_G(u, v); distances only shrink as
    // edges are added, so stale entries stay valid upper bounds. A source whose
    // last search happened at the current edge count with a large enough
    // cutoff has exact labels, so the search need not be repeated.
    let mut bound = vec![f64::INFINITY; n * n];
    for u in 0..n {
        bound[u * n + u] = 0.0;
    }
    let mut epoch: u64 = 0;
    let mut src_epoch = vec![u64::MAX; n];
    let mut src_cut = vec![0.0f64; n];

    for (d, u, v) in pairs {
        let (u, v) = (u as usize, v as usize);
        let limit = t * d * (1.0 + GREEDY_TOL);
        if bound[u * n + v] <= limit {
            continue;
        }
        let fresh = src_epoch[u] == epoch && src_cut[u] >= limit;
        if !fresh {
            let cutoff = 2.0 * limit;
            dj.run(&g, u, cutoff, |w, dw| {
                if dw < bound[u * n + w] {
                    bound[u * n + w] = dw;
                    bound[w * n + u] = dw;
                }
                true
            });
            src_epoch[u] = epoch;
            src_cut[u] = cutoff;
            if bound[u * n + v] <= limit {
                continue;
            }
        }
        g.add_weighted(u, v, d);
        epoch += 1;
        bound[u * n + v] = d;
        bound[v * n + u] = d;
    }
    Ok(g)
}
