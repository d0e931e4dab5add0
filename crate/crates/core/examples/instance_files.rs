//! Write a generated instance with its witness and metadata, read it back
//! and rebuild it from the metadata alone.

use spanner_forge::instances::{gen_motivating, regenerate};
use spanner_forge::io::{read_instance, write_edges, write_instance};
use spanner_forge::path_greedy;

fn main() -> spanner_forge::Result<()> {
    let dir = std::env::temp_dir().join("spanner-forge-example");
    let path = dir.join("motivating.txt");
    let inst = gen_motivating(0.01)?;
    write_instance(&inst, &path)?;
    let g = path_greedy(&inst.points, 1.01)?;
    write_edges(&g.pairs(), &dir.join("motivating.greedy.edges"))?;

    let back = read_instance(&path)?;
    assert_eq!(back.points, inst.points);
    let meta = back.meta.expect("meta sidecar");
    let again = regenerate(&meta)?;
    assert_eq!(again.points, inst.points);
    println!(
        "{} points, {} witness edges, family {} written under {}",
        back.points.len(),
        back.witness_edges.map_or(0, |w| w.len()),
        meta.family,
        dir.display()
    );
    Ok(())
}
