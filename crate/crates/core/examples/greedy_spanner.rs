//! Build the path-greedy (1+eps)-spanner of random points and measure it.
//!
//! cargo run --release --example greedy_spanner -- [n] [d] [eps]

use spanner_forge::instances::{gen_random, Distribution};
use spanner_forge::{metrics, path_greedy};

fn main() -> spanner_forge::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(500);
    let d = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let eps: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.1);

    let inst = gen_random(n, d, Distribution::UniformCube, 42)?;
    let g = path_greedy(&inst.points, 1.0 + eps)?;
    let m = metrics(&g, &inst.points)?;
    println!("n = {n}, d = {d}, t = {}", 1.0 + eps);
    println!("edges      {}", m.edge_count);
    println!("sparsity   {:.3}", m.sparsity);
    println!("lightness  {:.3}", m.lightness);
    println!("stretch    {:.6} at {:?}", m.max_stretch, m.witness_pair);
    Ok(())
}
