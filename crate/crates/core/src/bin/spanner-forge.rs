use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spanner_forge::experiment::{self, Builder, Command, ExperimentConfig, InstanceSpec, PruneSettings};
use spanner_forge::graph::DEFAULT_VERIFY_CAP;
use spanner_forge::instances::{Distribution, Family};

#[derive(Parser)]
#[command(name = "spanner-forge", version, about = "Build, verify and compare Euclidean spanners")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance (points, witness, meta sidecars).
    Generate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a spanner on an instance file and write its edge list.
    Build {
        #[arg(long)]
        builder: Builder,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        prune: PruneArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an edge list against a stretch bound.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        cap: CapArgs,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and verify several spanners on one instance.
    Compare {
        #[arg(long = "in", conflicts_with = "family")]
        input: Option<PathBuf>,
        #[command(flatten)]
        instance: OptInstanceArgs,
        #[arg(long, value_delimiter = ',', default_value = "greedy,witness")]
        builders: Vec<Builder>,
        #[command(flatten)]
        prune: PruneArgs,
        #[command(flatten)]
        cap: CapArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare builders over a range of eps (and x), writing CSV and fitted slopes.
    Sweep {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long = "eps-list", value_delimiter = ',', required = true)]
        eps_list: Vec<f64>,
        #[arg(long = "x-list", value_delimiter = ',')]
        x_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "greedy,witness")]
        builders: Vec<Builder>,
        #[command(flatten)]
        prune: PruneArgs,
        #[command(flatten)]
        cap: CapArgs,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        gnuplot: bool,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform-cube")]
    distribution: Distribution,
    /// Number of translated copies.
    #[arg(long, default_value_t = 1)]
    copies: usize,
}

impl InstanceArgs {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            family: self.family,
            eps: self.eps,
            x: self.x,
            n: self.n,
            d: self.d,
            seed: self.seed,
            distribution: self.distribution,
            copies: self.copies,
        }
    }
}

#[derive(Args)]
struct OptInstanceArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform-cube")]
    distribution: Distribution,
    #[arg(long, default_value_t = 1)]
    copies: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Fast,
}

#[derive(Args)]
struct PruneArgs {
    /// Pruning iterations.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Use cluster graphs for the phase-2 distance test.
    #[arg(long)]
    cluster_graphs: bool,
    /// Pruning parameter file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
}

impl PruneArgs {
    fn settings(&self) -> PruneSettings {
        PruneSettings {
            iterations: self.k,
            fast: matches!(self.mode, Mode::Fast),
            cluster_graphs: self.cluster_graphs,
            config: self.config.clone(),
        }
    }
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
    n_max: usize,
    /// Verify even above the size cap.
    #[arg(long)]
    force: bool,
}

fn config(cmd: Cmd) -> ExperimentConfig {
    match cmd {
        Cmd::Generate { instance, out } => {
            let mut c = ExperimentConfig::new(Command::Generate, instance.eps);
            c.instance = Some(instance.spec());
            c.output = Some(out);
            c
        }
        Cmd::Build {
            builder,
            eps,
            prune,
            input,
            out,
        } => {
            let mut c = ExperimentConfig::new(Command::Build, eps);
            c.builders = vec![builder];
            c.prune = prune.settings();
            c.input = Some(input);
            c.output = Some(out);
            c
        }
        Cmd::Verify {
            input,
            edges,
            t,
            cap,
            report,
        } => {
            let mut c = ExperimentConfig::new(Command::Verify, t - 1.0);
            c.input = Some(input);
            c.edges = Some(edges);
            c.t = Some(t);
            c.n_max = cap.n_max;
            c.force = cap.force;
            c.output = report;
            c
        }
        Cmd::Compare {
            input,
            instance,
            builders,
            prune,
            cap,
            out,
        } => {
            let mut c = ExperimentConfig::new(Command::Compare, instance.eps);
            c.input = input;
            c.instance = instance.family.map(|family| InstanceSpec {
                family,
                eps: instance.eps,
                x: instance.x,
                n: instance.n,
                d: instance.d,
                seed: instance.seed,
                distribution: instance.distribution,
                copies: instance.copies,
            });
            c.builders = builders;
            c.prune = prune.settings();
            c.n_max = cap.n_max;
            c.force = cap.force;
            c.output = out;
            c
        }
        Cmd::Sweep {
            instance,
            eps_list,
            x_list,
            builders,
            prune,
            cap,
            out,
            gnuplot,
        } => {
            let mut c = ExperimentConfig::new(Command::Sweep, instance.eps);
            c.instance = Some(instance.spec());
            c.sweep_eps = eps_list;
            c.sweep_x = x_list;
            c.builders = builders;
            c.prune = prune.settings();
            c.n_max = cap.n_max;
            c.force = cap.force;
            c.output = Some(out);
            c.gnuplot = gnuplot;
            c
        }
    }
}

// A closed pipe (`| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let sweep = matches!(cli.command, Cmd::Sweep { .. });
    let cfg = config(cli.command);
    match experiment::run(&cfg) {
        Ok(outcome) => {
            if sweep {
                if let experiment::Results::Sweep { slopes, .. } = &outcome.report.results {
                    emit(&serde_json::to_string_pretty(slopes).unwrap_or_default());
                }
            } else {
                emit(&serde_json::to_string_pretty(&outcome.report).unwrap_or_default());
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
