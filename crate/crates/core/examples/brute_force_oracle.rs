//! Exact optimal spanners on tiny inputs, next to the greedy spanner.

use spanner_forge::instances::{gen_random, Distribution};
use spanner_forge::{brute_force_optimal, path_greedy, Objective};

fn main() -> spanner_forge::Result<()> {
    let eps = 0.1;
    for seed in 0..8 {
        let points = gen_random(8, 2, Distribution::UniformCube, seed)?.points;
        let greedy = path_greedy(&points, 1.0 + eps)?;
        let sparse = brute_force_optimal(&points, eps, Objective::MinEdges, 10)?;
        let light = brute_force_optimal(&points, eps, Objective::MinWeight, 10)?;
        println!(
            "seed {seed}: edges greedy {:>2} optimal {:>2} | weight greedy {:.3} optimal {:.3}",
            greedy.edge_count(),
            sparse.edge_count(),
            greedy.weight(),
            light.weight()
        );
    }
    Ok(())
}
