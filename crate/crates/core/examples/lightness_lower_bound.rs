//! Greedy weight against the light witness on the arc instances, plain and
//! relaxed (greedy at 1 + x eps, witness at 1 + eps).

use spanner_forge::instances::{gen_lightness_lb, gen_lightness_lb_x};
use spanner_forge::{path_greedy, verify_stretch};

fn main() -> spanner_forge::Result<()> {
    for eps in [0.02, 0.01, 0.005] {
        let inst = gen_lightness_lb(eps)?;
        let g = path_greedy(&inst.points, 1.0 + eps)?;
        let h = inst.witness_graph().expect("witness")?;
        println!(
            "eps {eps:<6} n {:>5}  greedy weight {:.3}  witness {:.3}  ratio {:.2}",
            inst.len(),
            g.weight(),
            h.weight(),
            g.weight() / h.weight()
        );
    }

    let (eps, x) = (0.01, 2.0);
    let inst = gen_lightness_lb_x(eps, x)?;
    let g = path_greedy(&inst.points, 1.0 + x * eps)?;
    let h = inst.witness_graph().expect("witness")?;
    let s = verify_stretch(&h, &inst.points)?;
    println!(
        "x = {x}: greedy weight {:.3}, witness weight {:.3} ({} chords, stretch {:.5})",
        g.weight(),
        h.weight(),
        inst.meta.param("chords").unwrap_or(0.0),
        s.max_stretch
    );
    Ok(())
}
