//! Point sets on which the greedy spanner is far from optimal, together with
//! the hand-built spanners that witness the gap, plus random instances.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::graph::SpannerGraph;

mod lightness;
mod motivating;
mod random;
mod sparsity;

pub use lightness::{chord_levels, gen_lightness_lb, gen_lightness_lb_with_step, gen_lightness_lb_x, solve_beta};
pub use motivating::{gen_motivating, gen_motivating_with, MotivatingOptions};
pub use random::{gen_random, Distribution};
pub use sparsity::{gen_sparsity_lb, gen_sparsity_lb_x};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SparsityLb,
    SparsityLbX,
    LightnessLb,
    LightnessLbX,
    Motivating,
    Random,
}

const FAMILIES: [(&str, Family); 6] = [
    ("sparsity-lb", Family::SparsityLb),
    ("sparsity-lb-x", Family::SparsityLbX),
    ("lightness-lb", Family::LightnessLb),
    ("lightness-lb-x", Family::LightnessLbX),
    ("motivating", Family::Motivating),
    ("random", Family::Random),
];

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        FAMILIES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|&(_, f)| f)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = FAMILIES.iter().find(|(_, v)| v == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

/// Construction record of a generated instance.
///
/// `params` holds the extra scalars of a family (heights, leg lengths, grid
/// steps); `groups` names the index sets of the construction (`A`, `B`, `c`,
/// anchors, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub family: Family,
    pub eps: Option<f64>,
    pub x: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub k: Option<usize>,
    pub n: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Distribution>,
    /// Number of translated copies; 1 for an untiled instance.
    pub copies: usize,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub groups: BTreeMap<String, Vec<usize>>,
}

impl InstanceMeta {
    pub(crate) fn new(family: Family, n: usize, dim: usize) -> Self {
        InstanceMeta {
            family,
            eps: None,
            x: None,
            alpha: None,
            beta: None,
            k: None,
            n,
            dim,
            seed: None,
            distribution: None,
            copies: 1,
            params: BTreeMap::new(),
            groups: BTreeMap::new(),
        }
    }

    pub fn group(&self, name: &str) -> &[usize] {
        self.groups.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    /// Coordinates as constructed, not normalized.
    pub points: PointSet,
    pub witness_edges: Option<Vec<(usize, usize)>>,
    pub meta: InstanceMeta,
}

impl GeneratedInstance {
    pub(crate) fn build(points: Vec<Point>, witness: Option<Vec<(usize, usize)>>, meta: InstanceMeta) -> Result<Self> {
        let points = PointSet::new(&points).map_err(|e| Error::ConstructionDegenerate(e.to_string()))?;
        let witness_edges = witness.map(|mut w| {
            for e in w.iter_mut() {
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
            w.sort_unstable();
            w.dedup();
            w
        });
        Ok(GeneratedInstance {
            points,
            witness_edges,
            meta,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The witness spanner as a graph, if the family has one.
    pub fn witness_graph(&self) -> Option<Result<SpannerGraph>> {
        self.witness_edges
            .as_ref()
            .map(|w| SpannerGraph::from_pairs(&self.points, w))
    }

    /// All pairs `(a, b)` with `a` in group `g1` and `b` in group `g2`, as sorted keys.
    pub fn cross_pairs(&self, g1: &str, g2: &str) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in self.meta.group(g1) {
            for &b in self.meta.group(g2) {
                if a != b {
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Rebuilds an instance from its construction record.
pub fn regenerate(meta: &InstanceMeta) -> Result<GeneratedInstance> {
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("meta for {} lacks {what}", meta.family)))
    };
    let base = match meta.family {
        Family::SparsityLb => gen_sparsity_lb(need(meta.eps, "eps")?)?,
        Family::SparsityLbX => gen_sparsity_lb_x(need(meta.eps, "eps")?, need(meta.x, "x")?)?,
        Family::LightnessLb => gen_lightness_lb(need(meta.eps, "eps")?)?,
        Family::LightnessLbX => gen_lightness_lb_x(need(meta.eps, "eps")?, need(meta.x, "x")?)?,
        Family::Motivating => {
            let defaults = MotivatingOptions::default();
            let opts = MotivatingOptions {
                z_x: meta.param("z_x").unwrap_or(defaults.z_x),
                w_x: meta.param("w_x").unwrap_or(defaults.w_x),
                column_paths: meta.param("column_paths").is_some_and(|v| v != 0.0),
            };
            gen_motivating_with(need(meta.eps, "eps")?, opts)?
        }
        Family::Random => {
            let n = meta.n / meta.copies.max(1);
            let seed = meta
                .seed
                .ok_or_else(|| Error::InvalidParameter("meta for random lacks seed".into()))?;
            gen_random(n, meta.dim, meta.distribution.unwrap_or_default(), seed)?
        }
    };
    if meta.copies > 1 {
        tile_copies(&base, meta.copies)
    } else {
        Ok(base)
    }
}

/// Places `m` translated copies of `inst` side by side along axis 0.
///
/// Consecutive copies are separated by a gap of ten times the instance
/// diameter; the witness is the union of the per-copy witnesses plus the
/// closest pair between each two consecutive copies.
pub fn tile_copies(inst: &GeneratedInstance, m: usize) -> Result<GeneratedInstance> {
    if m == 0 {
        return Err(Error::InvalidParameter("tile_copies needs m >= 1".into()));
    }
    if m == 1 {
        return Ok(inst.clone());
    }
    let n = inst.len();
    let (lo, hi) = inst.points.bounds();
    let shift = (hi[0] - lo[0]) + 10.0 * inst.points.diameter();
    let base = inst.points.to_points();
    let mut points = Vec::with_capacity(n * m);
    for c in 0..m {
        for p in &base {
            let mut q = p.clone();
            q.coords[0] += c as f64 * shift;
            points.push(q);
        }
    }

    let witness = inst.witness_edges.as_ref().map(|w| {
        let mut out = Vec::with_capacity(w.len() * m + m - 1);
        for c in 0..m {
            out.extend(w.iter().map(|&(u, v)| (u + c * n, v + c * n)));
        }
        // Only the x offset differs between copies, so the closest pair is the same for each gap.
        let mut best = (f64::INFINITY, (0, 0));
        for u in 0..n {
            for v in 0..n {
                let d = crate::geom::dist(&points[u].coords, &points[v + n].coords);
                if d < best.0 {
                    best = (d, (u, v));
                }
            }
        }
        let (u, v) = best.1;
        for c in 0..m - 1 {
            out.push((u + c * n, v + (c + 1) * n));
        }
        out
    });

    let mut meta = inst.meta.clone();
    meta.n = n * m;
    meta.copies = inst.meta.copies * m;
    meta.params.insert("copy_shift".into(), shift);
    meta.params.insert("copy_size".into(), n as f64);
    GeneratedInstance::build(points, witness, meta)
}
