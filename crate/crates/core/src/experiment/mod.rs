//! Batch driver behind the command-line tool: generate instances, build and
//! verify spanners, compare builders, and sweep `eps`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::graph::{
    emst_weight, metrics_with, path_greedy, verify_stretch_with, MetricsReport, SpannerGraph, StretchReport,
    VerifyOptions, DEFAULT_VERIFY_CAP,
};
use crate::instances::{self, Distribution, Family, GeneratedInstance, InstanceMeta};
use crate::io;
use crate::nets::{build_hierarchy, build_net_tree_spanner};
use crate::prune::{greedy_prune, CandidateMode, DistBackend, PruneParams};

mod fit;

pub use fit::log_log_slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Generate,
    Build,
    Verify,
    Compare,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Builder {
    Greedy,
    NetTree,
    Prune,
    Witness,
}

impl FromStr for Builder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "greedy" => Ok(Builder::Greedy),
            "net-tree" | "nettree" => Ok(Builder::NetTree),
            "prune" | "greedy-prune" => Ok(Builder::Prune),
            "witness" => Ok(Builder::Witness),
            other => Err(Error::InvalidParameter(format!("unknown builder '{other}'"))),
        }
    }
}

impl fmt::Display for Builder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Builder::Greedy => "greedy",
            Builder::NetTree => "net-tree",
            Builder::Prune => "prune",
            Builder::Witness => "witness",
        })
    }
}

/// Which instance to generate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub eps: f64,
    pub x: Option<f64>,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub distribution: Distribution,
    pub copies: usize,
}

impl InstanceSpec {
    pub fn new(family: Family, eps: f64) -> Self {
        InstanceSpec {
            family,
            eps,
            x: None,
            n: 200,
            d: 2,
            seed: 0,
            distribution: Distribution::UniformCube,
            copies: 1,
        }
    }

    pub fn generate(&self) -> Result<GeneratedInstance> {
        let x = || {
            self.x
                .ok_or_else(|| Error::InvalidParameter(format!("family {} needs --x", self.family)))
        };
        let base = match self.family {
            Family::SparsityLb => instances::gen_sparsity_lb(self.eps)?,
            Family::SparsityLbX => instances::gen_sparsity_lb_x(self.eps, x()?)?,
            Family::LightnessLb => instances::gen_lightness_lb(self.eps)?,
            Family::LightnessLbX => instances::gen_lightness_lb_x(self.eps, x()?)?,
            Family::Motivating => instances::gen_motivating(self.eps)?,
            Family::Random => instances::gen_random(self.n, self.d, self.distribution, self.seed)?,
        };
        instances::tile_copies(&base, self.copies.max(1))
    }
}

/// Settings of a pruning build.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneSettings {
    pub iterations: usize,
    pub fast: bool,
    pub cluster_graphs: bool,
    /// Optional config file applied on top of the practical defaults.
    pub config: Option<PathBuf>,
}

impl Default for PruneSettings {
    fn default() -> Self {
        PruneSettings {
            iterations: 1,
            fast: false,
            cluster_graphs: false,
            config: None,
        }
    }
}

impl PruneSettings {
    pub fn params(&self, eps: f64, d: usize) -> Result<PruneParams> {
        let mut p = match &self.config {
            Some(path) => PruneParams::load(path, d)?,
            None => PruneParams::new(eps, d).practical(),
        };
        p.eps = eps;
        p.iterations = self.iterations;
        if self.fast {
            p.candidates = CandidateMode::Fast;
        }
        if self.cluster_graphs {
            p.backend = DistBackend::ClusterGraphs;
        }
        p.validate()?;
        Ok(p)
    }
}

/// Everything one invocation needs; recorded verbatim in its report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub instance: Option<InstanceSpec>,
    /// Point file to read instead of generating.
    pub input: Option<PathBuf>,
    /// Edge file for `verify`.
    pub edges: Option<PathBuf>,
    pub builders: Vec<Builder>,
    pub eps: f64,
    /// Stretch to verify against in `verify`; defaults to `1 + eps`.
    pub t: Option<f64>,
    pub prune: PruneSettings,
    pub output: Option<PathBuf>,
    /// Verification refuses larger instances unless `force` is set.
    pub n_max: usize,
    pub force: bool,
    /// `eps` values of a sweep.
    pub sweep_eps: Vec<f64>,
    /// `x` values of a sweep; empty means the spec's own `x`.
    pub sweep_x: Vec<f64>,
    pub gnuplot: bool,
}

impl ExperimentConfig {
    pub fn new(command: Command, eps: f64) -> Self {
        ExperimentConfig {
            command,
            instance: None,
            input: None,
            edges: None,
            builders: vec![Builder::Greedy, Builder::Witness],
            eps,
            t: None,
            prune: PruneSettings::default(),
            output: None,
            n_max: DEFAULT_VERIFY_CAP,
            force: false,
            sweep_eps: Vec::new(),
            sweep_x: Vec::new(),
            gnuplot: false,
        }
    }

    fn verify_opts(&self) -> VerifyOptions {
        VerifyOptions {
            cap: (!self.force).then_some(self.n_max),
            threads: None,
        }
    }
}

/// One builder on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub builder: Builder,
    pub family: Option<Family>,
    pub eps: f64,
    pub x: Option<f64>,
    pub n: usize,
    /// Stretch the build must meet; empty when only measured.
    pub target_stretch: Option<f64>,
    pub edge_count: usize,
    pub sparsity: f64,
    pub weight: f64,
    pub mst_weight: f64,
    pub lightness: f64,
    pub max_stretch: f64,
    pub witness_pair: String,
    pub verified: bool,
    pub edge_ratio_vs_witness: Option<f64>,
    pub weight_ratio_vs_witness: Option<f64>,
}

/// Fitted slope of `log(ratio)` against `log(1/eps)` for one builder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeSummary {
    pub builder: Builder,
    pub x: Option<f64>,
    pub edge_ratio_slope: Option<f64>,
    pub weight_ratio_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Results {
    Generated { path: PathBuf, n: usize, witness_edges: Option<usize>, meta: InstanceMeta },
    Built { builder: Builder, n: usize, edge_count: usize, weight: f64, edges_path: Option<PathBuf> },
    Verified { n: usize, t: f64, stretch: Option<StretchReport>, disconnected: Option<(usize, usize)>, verified: bool },
    Rows { rows: Vec<ReportRow> },
    Sweep { rows: Vec<ReportRow>, slopes: Vec<SlopeSummary> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; the only field that varies between identical runs.
    pub timestamp: u64,
    pub config: ExperimentConfig,
    pub results: Results,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: Report,
    /// False when some requested verification failed.
    pub success: bool,
    pub files: Vec<PathBuf>,
}

struct Loaded {
    points: PointSet,
    witness: Option<Vec<(usize, usize)>>,
    meta: Option<InstanceMeta>,
}

fn load(config: &ExperimentConfig) -> Result<Loaded> {
    match (&config.input, &config.instance) {
        (Some(path), _) => {
            let f = io::read_instance(path)?;
            Ok(Loaded {
                points: f.points,
                witness: f.witness_edges,
                meta: f.meta,
            })
        }
        (None, Some(spec)) => {
            let inst = spec.generate()?;
            Ok(Loaded {
                points: inst.points,
                witness: inst.witness_edges,
                meta: Some(inst.meta),
            })
        }
        (None, None) => Err(Error::InvalidParameter("need an input file or an instance spec".into())),
    }
}

/// Stretch a builder is held to on an instance, or `None` when it is only measured.
fn target(builder: Builder, eps: f64, meta: Option<&InstanceMeta>, prune_delta: Option<f64>) -> Option<f64> {
    let x = meta.and_then(|m| m.x).unwrap_or(1.0);
    match builder {
        Builder::Greedy => Some(1.0 + x * eps),
        Builder::NetTree => Some(1.0 + eps),
        Builder::Prune => prune_delta.map(|d| 1.0 + d),
        Builder::Witness => match meta {
            Some(m) if m.family == Family::Motivating || m.copies > 1 => None,
            _ => Some(1.0 + eps),
        },
    }
}

/// Builds one spanner. Returns the graph and, for pruning, the final `delta`.
pub fn build(
    builder: Builder,
    points: &PointSet,
    eps: f64,
    meta: Option<&InstanceMeta>,
    witness: Option<&[(usize, usize)]>,
    prune: &PruneSettings,
) -> Result<(SpannerGraph, Option<f64>)> {
    let x = meta.and_then(|m| m.x).unwrap_or(1.0);
    match builder {
        Builder::Greedy => Ok((path_greedy(points, 1.0 + x * eps)?, None)),
        Builder::NetTree => {
            let unit = points.normalized();
            let h = build_hierarchy(&unit);
            let g = build_net_tree_spanner(&h, &unit, eps)?;
            Ok((SpannerGraph::from_pairs(points, &g.pairs())?, None))
        }
        Builder::Prune => {
            let unit = points.normalized();
            let params = prune.params(eps, points.dim())?;
            let out = greedy_prune(&unit, &params, None)?;
            // Weights back in the caller's units.
            let g = SpannerGraph::from_pairs(points, &out.graph.pairs())?;
            Ok((g, Some(out.final_params.delta)))
        }
        Builder::Witness => {
            let w = witness.ok_or_else(|| Error::InvalidParameter("instance has no witness spanner".into()))?;
            Ok((SpannerGraph::from_pairs(points, w)?, None))
        }
    }
}

fn rows_for(config: &ExperimentConfig, data: &Loaded, eps: f64) -> Result<Vec<ReportRow>> {
    let meta = data.meta.as_ref();
    let mut rows = Vec::new();
    for &b in &config.builders {
        let (g, delta) = build(b, &data.points, eps, meta, data.witness.as_deref(), &config.prune)?;
        let target_stretch = target(b, eps, meta, delta);
        let (m, verified) = match metrics_with(&g, &data.points, config.verify_opts()) {
            Ok(m) => {
                let ok = target_stretch.is_none_or(|t| m.max_stretch <= t * (1.0 + 1e-12));
                (m, ok)
            }
            Err(Error::Disconnected(..)) => {
                let w = g.weight();
                let mst = emst_weight(&data.points);
                (
                    MetricsReport {
                        edge_count: g.edge_count(),
                        sparsity: g.edge_count() as f64 / data.points.len() as f64,
                        weight: w,
                        mst_weight: mst,
                        lightness: w / mst,
                        max_stretch: f64::INFINITY,
                        witness_pair: (0, 0),
                    },
                    false,
                )
            }
            Err(e) => return Err(e),
        };
        rows.push(ReportRow {
            builder: b,
            family: meta.map(|m| m.family),
            eps,
            x: meta.and_then(|m| m.x),
            n: data.points.len(),
            target_stretch,
            edge_count: m.edge_count,
            sparsity: m.sparsity,
            weight: m.weight,
            mst_weight: m.mst_weight,
            lightness: m.lightness,
            max_stretch: m.max_stretch,
            witness_pair: format!("{} {}", m.witness_pair.0, m.witness_pair.1),
            verified,
            edge_ratio_vs_witness: None,
            weight_ratio_vs_witness: None,
        });
    }
    if let Some(w) = rows.iter().find(|r| r.builder == Builder::Witness).cloned() {
        for r in &mut rows {
            r.edge_ratio_vs_witness = Some(r.edge_count as f64 / w.edge_count as f64);
            r.weight_ratio_vs_witness = Some(r.weight / w.weight);
        }
    }
    Ok(rows)
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn slopes(rows: &[ReportRow], builders: &[Builder]) -> Vec<SlopeSummary> {
    let mut xs: Vec<Option<f64>> = Vec::new();
    for r in rows {
        if !xs.contains(&r.x) {
            xs.push(r.x);
        }
    }
    let mut out = Vec::new();
    for x in xs {
        for &b in builders.iter().filter(|&&b| b != Builder::Witness) {
            let pick = |f: fn(&ReportRow) -> Option<f64>| {
                let pts: Vec<(f64, f64)> = rows
                    .iter()
                    .filter(|r| r.builder == b && r.x == x)
                    .filter_map(|r| f(r).map(|v| (1.0 / r.eps, v)))
                    .collect();
                log_log_slope(&pts)
            };
            out.push(SlopeSummary {
                builder: b,
                x,
                edge_ratio_slope: pick(|r| r.edge_ratio_vs_witness),
                weight_ratio_slope: pick(|r| r.weight_ratio_vs_witness),
            });
        }
    }
    out
}

fn gnuplot_script(csv: &Path) -> String {
    let name = csv.display();
    format!(
        "set datafile separator ','\n\
         set logscale xy\n\
         set xlabel '1/eps'\n\
         set ylabel 'ratio vs witness'\n\
         set key left top\n\
         plot '{name}' using (1/column('eps')):(column('edge_ratio_vs_witness')) with linespoints title 'edges', \\\n\
         \x20    '{name}' using (1/column('eps')):(column('weight_ratio_vs_witness')) with linespoints title 'weight'\n"
    )
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// Runs one command. Report files go to `config.output` when set.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    let mut files = Vec::new();
    let mut success = true;
    let results = match config.command {
        Command::Generate => {
            let spec = config
                .instance
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("generate needs an instance spec".into()))?;
            let out = config
                .output
                .clone()
                .ok_or_else(|| Error::InvalidParameter("generate needs --out".into()))?;
            let inst = spec.generate()?;
            io::write_instance(&inst, &out)?;
            files.push(out.clone());
            Results::Generated {
                path: out,
                n: inst.len(),
                witness_edges: inst.witness_edges.as_ref().map(Vec::len),
                meta: inst.meta,
            }
        }
        Command::Build => {
            let data = load(config)?;
            let b = *config
                .builders
                .first()
                .ok_or_else(|| Error::InvalidParameter("build needs a builder".into()))?;
            let (g, _) = build(b, &data.points, config.eps, data.meta.as_ref(), data.witness.as_deref(), &config.prune)?;
            if let Some(out) = &config.output {
                io::write_edges(&g.pairs(), out)?;
                files.push(out.clone());
            }
            Results::Built {
                builder: b,
                n: data.points.len(),
                edge_count: g.edge_count(),
                weight: g.weight(),
                edges_path: config.output.clone(),
            }
        }
        Command::Verify => {
            let data = load(config)?;
            let path = config
                .edges
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("verify needs --edges".into()))?;
            let edges = io::parse_edges(path, data.points.len())?;
            let g = SpannerGraph::from_pairs(&data.points, &edges)?;
            let t = config.t.unwrap_or(1.0 + config.eps);
            let (stretch, disconnected) = match verify_stretch_with(&g, &data.points, config.verify_opts()) {
                Ok(s) => (Some(s), None),
                Err(Error::Disconnected(u, v)) => (None, Some((u, v))),
                Err(e) => return Err(e),
            };
            let verified = stretch.is_some_and(|s| s.max_stretch <= t * (1.0 + 1e-12));
            success = verified;
            Results::Verified {
                n: data.points.len(),
                t,
                stretch,
                disconnected,
                verified,
            }
        }
        Command::Compare => {
            let data = load(config)?;
            let rows = rows_for(config, &data, config.eps)?;
            success = rows.iter().all(|r| r.verified);
            Results::Rows { rows }
        }
        Command::Sweep => {
            let spec = config
                .instance
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("sweep needs an instance spec".into()))?;
            let eps_list = if config.sweep_eps.is_empty() {
                vec![config.eps]
            } else {
                config.sweep_eps.clone()
            };
            let x_list: Vec<Option<f64>> = if config.sweep_x.is_empty() {
                vec![spec.x]
            } else {
                config.sweep_x.iter().map(|&x| Some(x)).collect()
            };
            let mut rows = Vec::new();
            for &x in &x_list {
                for &eps in &eps_list {
                    let s = InstanceSpec { eps, x, ..spec.clone() };
                    let inst = s.generate()?;
                    let data = Loaded {
                        points: inst.points,
                        witness: inst.witness_edges,
                        meta: Some(inst.meta),
                    };
                    log::info!("sweep: eps = {eps}, x = {x:?}, n = {}", data.points.len());
                    rows.extend(rows_for(config, &data, eps)?);
                }
            }
            success = rows.iter().all(|r| r.verified);
            let slopes = slopes(&rows, &config.builders);
            if let Some(out) = &config.output {
                io::write_csv(&rows, out)?;
                files.push(out.clone());
                let summary = sibling(out, ".summary.json");
                io::write_json(&slopes, &summary)?;
                files.push(summary);
                if config.gnuplot {
                    let gp = sibling(out, ".gp");
                    std::fs::write(&gp, gnuplot_script(out)).map_err(|e| Error::io(&gp, e))?;
                    files.push(gp);
                }
            }
            Results::Sweep { rows, slopes }
        }
    };
    let report = Report {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: now(),
        config: config.clone(),
        results,
    };
    if config.command != Command::Sweep && config.command != Command::Generate && config.command != Command::Build {
        if let Some(out) = &config.output {
            io::write_json(&report, out)?;
            files.push(out.clone());
        }
    }
    Ok(RunOutcome { report, success, files })
}
