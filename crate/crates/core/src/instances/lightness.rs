use super::{Family, GeneratedInstance, InstanceMeta};
use crate::error::{Error, Result};
use crate::geom::Point;

/// Root of `beta = (1+e) * 2 sin(beta/2)`: the arc angle at which a unit-circle
/// arc first becomes `1+e` times longer than its chord.
pub fn solve_beta(e: f64) -> Result<f64> {
    if !(e > 0.0 && e < 1.0) {
        return Err(Error::ConstructionDegenerate(format!("no arc threshold for eps = {e}")));
    }
    let f = |b: f64| b - (1.0 + e) * 2.0 * (b / 2.0).sin();
    let guess = (24.0 * e).sqrt();
    let (mut lo, mut hi) = (0.5 * guess, (2.0 * guess).min(3.0));
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::ConstructionDegenerate(format!(
            "bisection bracket [{lo}, {hi}] does not straddle the root for eps = {e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

struct Arc {
    alpha: f64,
    beta: f64,
    step: f64,
    m1: usize,
    points: Vec<Point>,
}

// Unit-circle arc of angle alpha + beta, alpha = beta/10, sampled on a uniform
// grid of `m1` steps per alpha so that the anchors alpha, beta, alpha+beta
// are grid points and the last alpha is a rotated copy of the first.
fn arc(beta: f64, max_step: f64) -> Arc {
    let alpha = beta / 10.0;
    let m1 = (alpha / max_step).ceil().max(1.0) as usize;
    let step = alpha / m1 as f64;
    let points = (0..=11 * m1)
        .map(|i| {
            let th = i as f64 * step;
            Point::from([th.cos(), th.sin()])
        })
        .collect();
    Arc {
        alpha,
        beta,
        step,
        m1,
        points,
    }
}

fn arc_meta(family: Family, eps: f64, a: &Arc) -> InstanceMeta {
    let m1 = a.m1;
    let mut meta = InstanceMeta::new(family, a.points.len(), 2);
    meta.eps = Some(eps);
    meta.alpha = Some(a.alpha);
    meta.beta = Some(a.beta);
    meta.k = Some(m1);
    meta.params.insert("step".into(), a.step);
    meta.groups.insert("anchors".into(), vec![0, m1, 10 * m1, 11 * m1]);
    meta.groups.insert("first_arc".into(), (0..=m1).collect());
    meta.groups.insert("last_arc".into(), (10 * m1..=11 * m1).collect());
    meta
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n - 1).map(|i| (i, i + 1)).collect()
}

fn fill_step(eps: f64, beta: f64) -> f64 {
    eps.powf(1.5).min(0.9 * beta / 64.0)
}

/// Arc instance on which the greedy `(1+eps)`-spanner is heavy.
///
/// Points lie on a unit-circle arc of angle `alpha + beta` where `beta` solves
/// `beta = (1+eps) 2 sin(beta/2)` and `alpha = beta/10`, with angular spacing
/// at most `min(eps^1.5, (beta-alpha)/64)`. Anchors `p1..p4` (group
/// `anchors`) sit at angles `0, alpha, beta, alpha+beta`. The witness is the
/// path along the arc plus the chord `p2 p3`.
pub fn gen_lightness_lb(eps: f64) -> Result<GeneratedInstance> {
    gen_lightness_lb_with_step(eps, fill_step(eps, solve_beta(eps.clamp(1e-12, 0.5))?))
}

/// [`gen_lightness_lb`] with an explicit bound on the angular spacing.
pub fn gen_lightness_lb_with_step(eps: f64, max_step: f64) -> Result<GeneratedInstance> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::ConstructionDegenerate(format!("eps = {eps} outside (0, 0.05]")));
    }
    if !(max_step > 0.0) {
        return Err(Error::InvalidParameter(format!("spacing {max_step} must be positive")));
    }
    let a = arc(solve_beta(eps)?, max_step);
    let n = a.points.len();
    let mut w = path_edges(n);
    w.push((a.m1, 10 * a.m1));
    let meta = arc_meta(Family::LightnessLb, eps, &a);
    GeneratedInstance::build(a.points, Some(w), meta)
}

/// Chord levels `i = -2 ..= 2 ceil(10 x log2 sqrt x)` of the relaxed witness.
pub fn chord_levels(x: f64) -> std::ops::RangeInclusive<i32> {
    let top = 2 * (5.0 * x * x.log2()).ceil() as i32;
    -2..=top
}

/// Arc instance against the greedy `(1+x eps)`-spanner.
///
/// The arc is that of [`gen_lightness_lb`] for `x eps`. The witness, a
/// `(1+eps)`-spanner, adds to the path, for every level `i` of
/// [`chord_levels`], chords of arc length `b r^(i/2)` with left endpoints
/// every `b r^i / (20 sqrt x)`, where `b` is the arc threshold for `eps` and
/// `r = 1 + 1/(10x)`. Chord endpoints snap to the nearest arc points.
pub fn gen_lightness_lb_x(eps: f64, x: f64) -> Result<GeneratedInstance> {
    if !(eps > 0.0 && x >= 2.0 && x * eps <= 0.05) {
        return Err(Error::ConstructionDegenerate(format!(
            "eps = {eps}, x = {x} outside x >= 2, x eps <= 0.05"
        )));
    }
    let beta_x = solve_beta(x * eps)?;
    let a = arc(beta_x, fill_step(eps, beta_x));
    let n = a.points.len();
    let total = 11.0 * a.alpha;
    let b = solve_beta(eps)?;
    let r = 1.0 + 1.0 / (10.0 * x);

    let mut w = path_edges(n);
    let mut chords = 0usize;
    for i in chord_levels(x) {
        let len = b * r.powf(i as f64 / 2.0);
        let gap = b * r.powi(i) / (20.0 * x.sqrt());
        if len > total {
            continue;
        }
        let mut left = 0.0;
        while left + len <= total + 1e-12 {
            let u = ((left / a.step).round() as usize).min(n - 1);
            let v = (((left + len) / a.step).round() as usize).min(n - 1);
            if v > u + 1 {
                w.push((u, v));
                chords += 1;
            }
            left += gap;
        }
    }

    let mut meta = arc_meta(Family::LightnessLbX, eps, &a);
    meta.x = Some(x);
    meta.params.insert("base_beta".into(), b);
    meta.params.insert("chords".into(), chords as f64);
    meta.params.insert("chord_levels".into(), chord_levels(x).count() as f64);
    GeneratedInstance::build(a.points, Some(w), meta)
}
