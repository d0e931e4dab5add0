//! Cluster graphs as a distance oracle for one scale of a spanner.

use spanner_forge::instances::{gen_random, Distribution};
use spanner_forge::nets::{build_cluster_graph, cluster_dist, DEFAULT_HOP_CAP};
use spanner_forge::{path_greedy, shortest_dist, SpannerGraph};

fn main() -> spanner_forge::Result<()> {
    let eps = 0.25;
    let points = gen_random(400, 2, Distribution::UniformCube, 3)?.points.normalized();
    let g = path_greedy(&points, 1.0 + eps)?;
    let i = 5;
    let scale = f64::from(i).exp2();

    let mut below = SpannerGraph::new(points.len());
    for e in g.edges().filter(|e| e.w < scale) {
        below.add_weighted(e.u, e.v, e.w);
    }
    let f = build_cluster_graph(&below, i, eps, false, points.len())?;
    println!(
        "scale 2^{i}: {} clusters, {} inter-cluster edges, {} memberships",
        f.cluster_count(),
        f.inter.len(),
        f.intra_edge_count()
    );

    let mut shown = 0;
    for s in 0..points.len() {
        for t in s + 1..points.len() {
            let st = points.dist(s, t);
            if shown == 8 || st < scale || st >= 2.0 * scale {
                continue;
            }
            let Some(exact) = shortest_dist(&below, s, t, Some(4.0 * scale))? else {
                continue;
            };
            let approx = cluster_dist(&f, s, t, DEFAULT_HOP_CAP);
            println!("({s:>3}, {t:>3}) exact {exact:.3}  cluster {approx:.3}  ratio {:.4}", approx / exact);
            shown += 1;
        }
    }
    Ok(())
}
