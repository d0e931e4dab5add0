use super::hierarchy::{approximate_level, cross_factor, NetHierarchy};
use crate::error::{Error, Result};
use crate::geom::{self, PointSet, Side, REGION_TOL};

// Closest point of the axis-aligned ellipse x²/e0² + y²/e1² = 1 (e0 ≥ e1)
// to (y0, y1) in the first quadrant, by bisection on the Lagrange root.
fn closest_on_ellipse(e0: f64, e1: f64, y0: f64, y1: f64) -> (f64, f64) {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g == 0.0 {
                return (y0, y1);
            }
            let r0 = (e0 / e1) * (e0 / e1);
            let n0 = r0 * z0;
            let mut s0 = z1 - 1.0;
            let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
            let mut s = 0.0;
            for _ in 0..256 {
                s = 0.5 * (s0 + s1);
                if s == s0 || s == s1 {
                    break;
                }
                let a = n0 / (s + r0);
                let b = z1 / (s + 1.0);
                let gs = a * a + b * b - 1.0;
                if gs > 0.0 {
                    s0 = s;
                } else if gs < 0.0 {
                    s1 = s;
                } else {
                    break;
                }
            }
            (r0 * y0 / (s + r0), y1 / (s + 1.0))
        } else {
            (0.0, e1)
        }
    } else {
        let numer = e0 * y0;
        let denom = e0 * e0 - e1 * e1;
        if numer < denom {
            let q = numer / denom;
            (e0 * q, e1 * (1.0 - q * q).max(0.0).sqrt())
        } else {
            (e0, 0.0)
        }
    }
}

/// Distance from a point to `{ |sx| + |xt| <= (1+eps)|st| } ∩ { f ∈ band }`,
/// where `f` is the projection fraction along `st`.
///
/// The set is rotationally symmetric about the line `st`, so the problem is
/// solved in (axial, radial) coordinates around the midpoint.
pub fn dist_to_region(s: &[f64], t: &[f64], eps: f64, band: (f64, f64), p: &[f64]) -> f64 {
    let len = geom::dist(s, t);
    let f = geom::projection_fraction(s, t, p);
    let axial = (f - 0.5) * len;
    let along2 = (f * len) * (f * len);
    let radial = (geom::dist2(s, p) - along2).max(0.0).sqrt();

    let e0 = 0.5 * (1.0 + eps) * len;
    let e1 = (e0 * e0 - 0.25 * len * len).max(0.0).sqrt();
    let (lo, hi) = ((band.0 - 0.5) * len, (band.1 - 0.5) * len);
    let half_chord = |a: f64| e1 * (1.0 - (a / e0) * (a / e0)).max(0.0).sqrt();

    let inside_ellipse = (axial / e0).powi(2) + (radial / e1).powi(2) <= 1.0;
    if inside_ellipse && axial >= lo && axial <= hi {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    if !inside_ellipse {
        let (cx, cy) = closest_on_ellipse(e0, e1, axial.abs(), radial);
        let cx = cx.copysign(axial);
        if cx >= lo && cx <= hi {
            best = (cx - axial).hypot(cy - radial);
        }
    }
    for a in [lo, hi] {
        let r = radial.min(half_chord(a));
        best = best.min((a - axial).hypot(r - radial));
    }
    best
}

/// Net points at the approximate level `h` of `st` whose `h`-level covering
/// ball meets the requested region of the ellipse around `st`.
///
/// The ball radius is `r_1 + … + r_h`, the largest distance from a net point
/// to a point it covers, so at level 0 only the points themselves count.
pub fn region_net_points(h: &NetHierarchy, points: &PointSet, s: usize, t: usize, eps: f64, which: Side) -> Result<Vec<usize>> {
    region_net_points_with(h, points, s, t, eps, which, cross_factor(eps))
}

pub fn region_net_points_with(
    h: &NetHierarchy,
    points: &PointSet,
    s: usize,
    t: usize,
    eps: f64,
    which: Side,
    factor: f64,
) -> Result<Vec<usize>> {
    let n = points.len();
    for index in [s, t] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if s == t {
        return Err(Error::DegenerateSegment);
    }
    let level = approximate_level(h, points, s, t, factor);
    Ok(region_points_at(h, points, s, t, eps, which, level))
}

pub(crate) fn region_points_at(
    h: &NetHierarchy,
    points: &PointSet,
    s: usize,
    t: usize,
    eps: f64,
    which: Side,
    level: usize,
) -> Vec<usize> {
    let (ps, pt) = (points.point(s), points.point(t));
    let len = points.dist(s, t);
    let anchor = h.ancestor(s, level);
    let reach = NetHierarchy::ancestor_reach(level);
    let slack = REGION_TOL * len;
    h.level(level)
        .iter()
        .copied()
        .filter(|&w| points.dist(anchor, w) <= 2.0 * len)
        .filter(|&w| dist_to_region(ps, pt, eps, which.band(), points.point(w)) <= reach + slack)
        .collect()
}
