//! Run a sweep through the experiment harness: CSV rows, fitted log-log
//! slopes and a gnuplot script.

use spanner_forge::experiment::{run, Builder, Command, ExperimentConfig, InstanceSpec, Results};
use spanner_forge::instances::Family;

fn main() -> spanner_forge::Result<()> {
    let out = std::env::temp_dir().join("spanner-forge-example").join("lightness.csv");
    let mut cfg = ExperimentConfig::new(Command::Sweep, 0.02);
    cfg.instance = Some(InstanceSpec::new(Family::LightnessLb, 0.02));
    cfg.sweep_eps = vec![0.02, 0.01, 0.005];
    cfg.builders = vec![Builder::Greedy, Builder::Witness];
    cfg.output = Some(out);
    cfg.gnuplot = true;

    let outcome = run(&cfg)?;
    if let Results::Sweep { rows, slopes } = &outcome.report.results {
        for r in rows {
            println!(
                "{:<8} eps {:<6} edges {:>5} weight {:>7.3} stretch {:.5}",
                r.builder, r.eps, r.edge_count, r.weight, r.max_stretch
            );
        }
        for s in slopes {
            println!("{}: weight ratio slope {:?}", s.builder, s.weight_ratio_slope);
        }
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
