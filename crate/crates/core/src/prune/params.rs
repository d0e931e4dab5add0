use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nets::DEFAULT_HOP_CAP;

/// Where phase-1 candidate pairs and the region tests come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CandidateMode {
    /// All point pairs; exact ellipse regions.
    Exact,
    /// Net-tree cross edges; net-point approximations of the regions.
    Fast,
}

/// Which constants drive the pruning thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `kappa` as given (1e4 by default). Proven bounds apply.
    Theoretical,
    /// `kappa_eff` replaces `kappa` so that pruning actually fires on small inputs.
    Practical,
}

/// Distance test used in phase 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistBackend {
    ExactDijkstra,
    ClusterGraphs,
}

macro_rules! text_enum {
    ($ty:ty, $($name:literal => $val:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
                    $($name => Ok($val),)+
                    other => Err(Error::InvalidParameter(format!(
                        "unknown {} '{other}'", stringify!($ty)
                    ))),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let name = match self {
                    $(v if *v == $val => $name,)+
                    _ => unreachable!(),
                };
                f.write_str(name)
            }
        }
    };
}

text_enum!(CandidateMode, "exact" => CandidateMode::Exact, "fast" => CandidateMode::Fast);
text_enum!(Regime, "theoretical" => Regime::Theoretical, "practical" => Regime::Practical);
text_enum!(DistBackend, "exact-dijkstra" => DistBackend::ExactDijkstra, "cluster-graphs" => DistBackend::ClusterGraphs);

pub const DEFAULT_KAPPA: f64 = 1e4;
/// The value Algorithm 1 initializes `kappa` with.
pub const ALGORITHM_KAPPA: f64 = 5000.0;
pub const DEFAULT_KAPPA_EFF: f64 = 10.0;
pub const BETA: f64 = 1.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneParams {
    pub eps: f64,
    /// Current stretch bound of the input spanner.
    pub delta: f64,
    /// Current bound on |E| / |E_opt|.
    pub alpha: f64,
    pub kappa: f64,
    pub kappa_eff: f64,
    pub beta: f64,
    pub iterations: usize,
    pub candidates: CandidateMode,
    pub regime: Regime,
    pub backend: DistBackend,
    /// `c` in the update `alpha <- max(c·ln alpha, 4)`.
    pub alpha_log_const: f64,
    /// Net-tree cross-edge factor; `None` means `4/eps + 32`.
    pub cross_factor: Option<f64>,
    pub hop_cap: usize,
    /// Constant in the `eps·2^{c·log*(d/eps)} < kappa^-5` sanity gate.
    pub gate_c: f64,
    /// Measure the stretch of the input edges after each phase.
    pub measure: bool,
}

impl PruneParams {
    /// Defaults for dimension `d`: `delta = eps`, `alpha = eps^{-2d}`, theoretical `kappa`.
    pub fn new(eps: f64, d: usize) -> Self {
        PruneParams {
            eps,
            delta: eps,
            alpha: eps.powi(-2 * d as i32),
            kappa: DEFAULT_KAPPA,
            kappa_eff: DEFAULT_KAPPA_EFF,
            beta: BETA,
            iterations: 1,
            candidates: CandidateMode::Exact,
            regime: Regime::Theoretical,
            backend: DistBackend::ExactDijkstra,
            alpha_log_const: 4.0,
            cross_factor: None,
            hop_cap: DEFAULT_HOP_CAP,
            gate_c: 1.0,
            measure: true,
        }
    }

    pub fn practical(mut self) -> Self {
        self.regime = Regime::Practical;
        self
    }

    pub fn fast(mut self) -> Self {
        self.candidates = CandidateMode::Fast;
        self
    }

    pub fn with_iterations(mut self, k: usize) -> Self {
        self.iterations = k;
        self
    }

    /// Uses `kappa = 5000` as in the pseudocode.
    pub fn with_algorithm_kappa(mut self) -> Self {
        self.kappa = ALGORITHM_KAPPA;
        self
    }

    /// The `kappa` actually used by the thresholds.
    pub fn kappa_used(&self) -> f64 {
        match self.regime {
            Regime::Theoretical => self.kappa,
            Regime::Practical => self.kappa_eff,
        }
    }

    pub fn cross_factor(&self) -> f64 {
        self.cross_factor.unwrap_or_else(|| crate::nets::cross_factor(self.eps))
    }

    /// Number of phase-1 sub-iterations, `ceil(log2 alpha)` (at least 1).
    pub fn sub_iterations(&self) -> usize {
        (self.alpha.log2().ceil().max(1.0)) as usize
    }

    /// Phase-1 threshold for sub-iteration `i` (1-based).
    pub fn threshold(&self, i: usize) -> f64 {
        self.alpha / ((i as f64).exp2() * self.kappa_used())
    }

    /// Slack of the candidate test in phase 1.
    pub fn phase1_slack(&self) -> f64 {
        match self.candidates {
            CandidateMode::Exact => self.eps,
            CandidateMode::Fast => 5.0 * self.eps,
        }
    }

    /// Stretch a pruned type-(i) edge may have after phase 1.
    pub fn phase1_bound(&self) -> f64 {
        let k = self.kappa_used();
        let fast = match self.candidates {
            CandidateMode::Exact => 1.0,
            CandidateMode::Fast => 1.0 + 5.0 * self.eps,
        };
        (1.0 + self.delta) * (1.0 + k * self.delta) * fast
    }

    /// Stretch allowed for a dropped edge in phase 2 (exact test).
    pub fn phase2_bound(&self) -> f64 {
        let k = self.kappa_used();
        1.0 + k * k * self.delta
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps must lie in (0, 1), got {}", self.eps));
        }
        if !(self.delta >= self.eps) || !self.delta.is_finite() {
            return bad(format!("delta must be finite and >= eps, got {}", self.delta));
        }
        if !(self.alpha >= 1.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be finite and >= 1, got {}", self.alpha));
        }
        if !(self.kappa >= 2.0) || !(self.kappa_eff >= 2.0) {
            return bad("kappa and kappa_eff must be >= 2".into());
        }
        if !(self.beta > 1.0) {
            return bad(format!("beta must exceed 1, got {}", self.beta));
        }
        if self.beta != BETA {
            log::warn!("beta = {} differs from the fixed 1.01", self.beta);
        }
        if !(self.alpha_log_const > 0.0) {
            return bad("alpha_log_const must be positive".into());
        }
        if let Some(c) = self.cross_factor {
            if !(c > 0.0) {
                return bad("cross_factor must be positive".into());
            }
        }
        if self.hop_cap < 2 {
            return bad("hop_cap must be at least 2".into());
        }
        Ok(())
    }

    /// `eps·2^{c·log*(d/eps)} < kappa^-5`.
    pub fn gate_holds(&self, d: usize) -> bool {
        let lhs = self.eps * (self.gate_c * log_star(d as f64 / self.eps) as f64).exp2();
        lhs < self.kappa.powi(-5)
    }

    /// Logs a warning when running in the theoretical regime outside the gate.
    pub fn check_gate(&self, d: usize) {
        if self.regime == Regime::Theoretical && !self.gate_holds(d) {
            log::warn!(
                "eps = {} violates eps*2^(c log*(d/eps)) < kappa^-5 for kappa = {}; stretch bounds are not guaranteed",
                self.eps,
                self.kappa
            );
        }
    }

    /// Parses `key = value` lines; `#` starts a comment. Unset keys keep
    /// their defaults for `d`.
    pub fn parse_config(text: &str, d: usize, path: &Path) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(idx + 1, format!("expected key=value, got '{line}'")))?;
            entries.push((idx + 1, k.trim().to_ascii_lowercase(), v.trim().to_string()));
        }
        let eps = match entries.iter().find(|(_, k, _)| k == "eps") {
            Some((line, _, v)) => v.parse::<f64>().map_err(|e| parse_err(*line, e.to_string()))?,
            None => return Err(parse_err(0, "missing required key 'eps'".into())),
        };
        let mut p = PruneParams::new(eps, d);
        for (line, k, v) in &entries {
            p.set(k, v).map_err(|e| parse_err(*line, e.to_string()))?;
        }
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path, d: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_config(&text, d, path)
    }

    /// Sets one field by its config key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value '{v}' for {key}")))
        }
        match key {
            "eps" => self.eps = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "kappa" => self.kappa = num(key, value)?,
            "kappa_eff" => self.kappa_eff = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "iterations" | "k" => self.iterations = num(key, value)?,
            "candidates" => self.candidates = value.parse()?,
            "regime" => self.regime = value.parse()?,
            "mode" => {
                // "<candidates>-<regime>", e.g. "fast-practical"
                let (c, r) = value
                    .rsplit_once('-')
                    .ok_or_else(|| Error::InvalidParameter(format!("bad mode '{value}'")))?;
                self.candidates = c.parse()?;
                self.regime = r.parse()?;
            }
            "backend" => self.backend = value.parse()?,
            "alpha_log_const" => self.alpha_log_const = num(key, value)?,
            "cross_factor" => self.cross_factor = Some(num(key, value)?),
            "hop_cap" => self.hop_cap = num(key, value)?,
            "gate_c" => self.gate_c = num(key, value)?,
            "measure" => self.measure = num(key, value)?,
            other => return Err(Error::InvalidParameter(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Renders the parameters in the config format accepted by [`parse_config`](Self::parse_config).
    pub fn to_config(&self) -> String {
        let mut out = format!(
            "eps = {}\ndelta = {}\nalpha = {}\nkappa = {}\nkappa_eff = {}\nbeta = {}\niterations = {}\n\
             candidates = {}\nregime = {}\nbackend = {}\nalpha_log_const = {}\nhop_cap = {}\ngate_c = {}\nmeasure = {}\n",
            self.eps,
            self.delta,
            self.alpha,
            self.kappa,
            self.kappa_eff,
            self.beta,
            self.iterations,
            self.candidates,
            self.regime,
            self.backend,
            self.alpha_log_const,
            self.hop_cap,
            self.gate_c,
            self.measure,
        );
        if let Some(c) = self.cross_factor {
            out.push_str(&format!("cross_factor = {c}\n"));
        }
        out
    }
}

/// `Δ(κ, δ) = (1+δ)(1+κδ)(1+κ²δ) − 1`.
///
/// Composed as `(1+a)(1+b) - 1 = a + b + ab` so that tiny `delta` does not
/// vanish against the 1.
pub fn delta_update(kappa: f64, delta: f64) -> f64 {
    compose(compose(delta, kappa * delta), kappa * kappa * delta)
}

fn compose(a: f64, b: f64) -> f64 {
    a + b + a * b
}

/// Parameters for the next iteration.
///
/// Fast candidates contribute a `(1+5ε)` factor and the cluster-graph
/// distance test a `(1+ε)` factor to the stretch update.
pub fn update_params(p: &PruneParams) -> PruneParams {
    let mut next = p.clone();
    let k = p.kappa_used();
    let mut delta = delta_update(k, p.delta);
    if p.candidates == CandidateMode::Fast {
        delta = compose(delta, 5.0 * p.eps);
    }
    if p.backend == DistBackend::ClusterGraphs {
        delta = compose(delta, p.eps);
    }
    next.delta = delta;
    next.alpha = (p.alpha_log_const * p.alpha.ln()).max(4.0);
    next
}

/// Iterated base-2 logarithm.
pub fn log_star(mut x: f64) -> u32 {
    let mut k = 0;
    while x > 1.0 {
        x = x.log2();
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_zero_is_fixed() {
        let mut p = PruneParams::new(0.1, 2);
        p.delta = 0.0;
        assert_eq!(update_params(&p).delta, 0.0);
    }

    #[test]
    fn delta_update_matches_direct_product() {
        let mut p = PruneParams::new(1e-10, 2);
        p.delta = 1e-9;
        let want = (1.0 + 1e-9) * (1.0 + 1e4 * 1e-9) * (1.0 + 1e8 * 1e-9) - 1.0;
        assert!((update_params(&p).delta - want).abs() <= 1e-15);
    }

    #[test]
    fn tiny_delta_survives() {
        let d = delta_update(1e4, 1e-25);
        assert!((d / 1e-25 - (1.0 + 1e4 + 1e8)).abs() < 1e-6);
    }

    #[test]
    fn alpha_update() {
        let mut p = PruneParams::new(0.1, 2);
        assert_eq!(p.alpha.round(), 10_000.0);
        p = update_params(&p);
        assert!((p.alpha - 4.0 * 10_000f64.ln()).abs() < 1e-9);
        p.alpha = 2.0;
        assert_eq!(update_params(&p).alpha, 4.0);
    }

    #[test]
    fn config_round_trip() {
        let mut p = PruneParams::new(0.05, 3).practical().fast().with_iterations(2);
        p.cross_factor = Some(12.0);
        p.backend = DistBackend::ClusterGraphs;
        let q = PruneParams::parse_config(&p.to_config(), 3, Path::new("cfg")).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn config_errors_carry_lines() {
        let text = "eps = 0.1\n# comment\nkappa = nope\n";
        match PruneParams::parse_config(text, 2, Path::new("cfg")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let p = PruneParams::parse_config("eps=0.1\nmode = fast-practical\n", 2, Path::new("c")).unwrap();
        assert_eq!((p.candidates, p.regime), (CandidateMode::Fast, Regime::Practical));
    }

    #[test]
    fn gate() {
        assert_eq!(log_star(1.0), 0);
        assert_eq!(log_star(2.0), 1);
        assert_eq!(log_star(16.0), 3);
        assert!(!PruneParams::new(0.01, 2).gate_holds(2));
        assert!(PruneParams::new(1e-25, 2).gate_holds(2));
    }
}
