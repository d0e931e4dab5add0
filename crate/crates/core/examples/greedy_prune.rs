//! Thin a greedy spanner with GreedyPrune and print the per-iteration report.
//!
//! cargo run --release --example greedy_prune -- [eps] [iterations] [fast]

use spanner_forge::instances::gen_motivating;
use spanner_forge::prune::{greedy_prune, PruneParams};
use spanner_forge::{path_greedy, verify_stretch};

fn main() -> spanner_forge::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let eps: f64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(0.01);
    let k: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let fast = args.get(2).is_some_and(|s| s == "fast");

    let points = gen_motivating(eps)?.points.normalized();
    let greedy = path_greedy(&points, 1.0 + eps)?;
    let mut params = PruneParams::new(eps, points.dim()).practical().with_iterations(k);
    if fast {
        params = params.fast();
    }
    let out = greedy_prune(&points, &params, Some(&greedy))?;

    for r in &out.reports {
        println!(
            "iteration {}: {} -> {} edges (type-i {}, type-ii {}, pruned {}, restored {}, dropped {}), delta {:.4} -> {:.4}",
            r.iteration,
            r.input_edges,
            r.output_edges,
            r.type_i,
            r.type_ii,
            r.phase1.pruned.len(),
            r.phase1.restored,
            r.phase2.dropped.len(),
            r.delta,
            r.next_delta
        );
        assert!(r.reconciles());
    }
    let s = verify_stretch(&out.graph, &points)?;
    println!(
        "greedy {} edges, pruned {} edges, stretch {:.4} (allowed {:.4})",
        greedy.edge_count(),
        out.graph.edge_count(),
        s.max_stretch,
        1.0 + out.final_params.delta
    );
    Ok(())
}
