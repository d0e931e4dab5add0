//! The greedy spanner against the hand-built witness on the sparsity
//! lower-bound instance: greedy joins all of A x B, the witness does not.

use spanner_forge::instances::gen_sparsity_lb;
use spanner_forge::{path_greedy, verify_stretch};

fn main() -> spanner_forge::Result<()> {
    println!("{:>8} {:>3} {:>6} {:>8} {:>8} {:>7}", "eps", "k", "n", "greedy", "witness", "ratio");
    for eps in [0.02, 0.001, 0.0004, 0.0002, 0.0001] {
        let inst = gen_sparsity_lb(eps)?;
        let g = path_greedy(&inst.points, 1.0 + eps)?;
        let h = inst.witness_graph().expect("witness")?;
        let ab = inst.cross_pairs("A", "B");
        assert!(ab.iter().all(|&(a, b)| g.contains(a, b)));
        assert!(verify_stretch(&h, &inst.points)?.max_stretch <= 1.0 + eps + 1e-12);
        println!(
            "{eps:>8} {:>3} {:>6} {:>8} {:>8} {:>7.3}",
            inst.meta.k.unwrap_or(0),
            inst.len(),
            g.edge_count(),
            h.edge_count(),
            g.edge_count() as f64 / h.edge_count() as f64
        );
    }
    Ok(())
}
