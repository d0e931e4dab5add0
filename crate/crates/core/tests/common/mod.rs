#![allow(dead_code)]

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spanner_forge::{Point, PointSet, SpannerGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform points in the unit cube, rescaled so the closest pair is at distance 1.
pub fn random_points(n: usize, d: usize, seed: u64) -> PointSet {
    random_raw(n, d, seed).normalized()
}

pub fn random_raw(n: usize, d: usize, seed: u64) -> PointSet {
    let mut r = rng(seed);
    let pts: Vec<Point> = (0..n)
        .map(|_| Point::new((0..d).map(|_| r.random::<f64>()).collect::<Vec<_>>()))
        .collect();
    PointSet::new(&pts).unwrap()
}

pub fn euclid(points: &PointSet, u: usize, v: usize) -> f64 {
    points
        .point(u)
        .iter()
        .zip(points.point(v))
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn to_petgraph(g: &SpannerGraph) -> UnGraph<(), f64> {
    let mut pg = UnGraph::<(), f64>::with_capacity(g.n(), g.edge_count());
    for _ in 0..g.n() {
        pg.add_node(());
    }
    for e in g.edges() {
        pg.add_edge(NodeIndex::new(e.u), NodeIndex::new(e.v), e.w);
    }
    pg
}

/// Single-source distances computed by petgraph, infinite where unreachable.
pub fn distances_from(g: &SpannerGraph, s: usize) -> Vec<f64> {
    let pg = to_petgraph(g);
    let m = dijkstra(&pg, NodeIndex::new(s), None, |e| *e.weight());
    let mut out = vec![f64::INFINITY; g.n()];
    for (k, d) in m {
        out[k.index()] = d;
    }
    out
}

/// All-pairs maximum stretch, independent of the library's verifier.
pub fn oracle_stretch(g: &SpannerGraph, points: &PointSet) -> f64 {
    let pg = to_petgraph(g);
    let mut worst: f64 = 1.0;
    for s in 0..points.len() {
        let m = dijkstra(&pg, NodeIndex::new(s), None, |e| *e.weight());
        for t in s + 1..points.len() {
            let d = m.get(&NodeIndex::new(t)).copied().unwrap_or(f64::INFINITY);
            worst = worst.max(d / euclid(points, s, t));
        }
    }
    worst
}

/// Greedy t-spanner by the textbook definition, one full Dijkstra per pair.
pub fn oracle_greedy(points: &PointSet, t: f64) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((euclid(points, u, v), u, v));
        }
    }
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut g = SpannerGraph::new(n);
    for (w, u, v) in pairs {
        if distances_from(&g, u)[v] > t * w {
            g.add_weighted(u, v, w);
        }
    }
    g.pairs()
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn slope(xy: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = xy.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
