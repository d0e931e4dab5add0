//! Net hierarchy, net-tree spanner and approximate edges on random points.

use spanner_forge::instances::{gen_random, Distribution};
use spanner_forge::nets::{approximate_edge, build_hierarchy, build_net_tree_spanner};
use spanner_forge::{path_greedy, verify_stretch};

fn main() -> spanner_forge::Result<()> {
    let eps = 0.25;
    // The hierarchy assumes the closest pair is at distance 1.
    let points = gen_random(300, 2, Distribution::Clustered, 7)?.points.normalized();
    let h = build_hierarchy(&points);
    for i in 0..h.num_levels() {
        println!("N_{i:<2} radius {:>6}  {} points", 1u64 << i, h.level(i).len());
    }

    let net = build_net_tree_spanner(&h, &points, eps)?;
    let greedy = path_greedy(&points, 1.0 + eps)?;
    println!("net-tree: {} edges, stretch {:.4}", net.edge_count(), verify_stretch(&net, &points)?.max_stretch);
    println!("greedy:   {} edges", greedy.edge_count());

    let (u, v) = (0, points.len() - 1);
    let (a, b, level) = approximate_edge(&h, &net, u, v)?;
    println!(
        "pair ({u}, {v}) at distance {:.1} is represented by ({a}, {b}) on level {level}, moved by {:.2} and {:.2}",
        points.dist(u, v),
        points.dist(u, a),
        points.dist(v, b)
    );
    Ok(())
}
