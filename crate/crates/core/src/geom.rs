//! Euclidean primitives: point sets, angles, and the ellipse regions used to
//! classify spanner edges.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for geometric inequality tests.
pub const REL_TOL: f64 = 1e-9;

/// Tolerance on region boundaries in [`region_of`].
pub const REGION_TOL: f64 = 1e-12;

/// Lower/upper edges of the `A` band, as a fraction of `|st|` measured from `s`.
pub const A_BAND: (f64, f64) = (3.0 / 8.0 - 1.0 / 50.0, 3.0 / 8.0 + 1.0 / 50.0);
/// Lower/upper edges of the `B` band, as a fraction of `|st|` measured from `s`.
pub const B_BAND: (f64, f64) = (5.0 / 8.0 - 1.0 / 50.0, 5.0 / 8.0 + 1.0 / 50.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Point {
            coords: coords.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

impl<const D: usize> From<[f64; D]> for Point {
    fn from(coords: [f64; D]) -> Self {
        Point {
            coords: coords.to_vec(),
        }
    }
}

/// A validated set of distinct points of equal dimension, stored row-major.
///
/// `scale` is the factor the coordinates were divided by during
/// normalization; multiply by it to recover input units.
#[derive(Debug, Clone)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    scale: f64,
    min_dist: OnceLock<f64>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.coords == other.coords && self.scale == other.scale
    }
}

impl PointSet {
    /// Validates `points` without rescaling them.
    pub fn new(points: &[Point]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let dim = points[0].dim();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
                index: 0,
            });
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for (index, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                    index,
                });
            }
            if p.coords.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite { index });
            }
            coords.extend_from_slice(&p.coords);
        }
        Self::from_flat(dim, coords, 1.0)
    }

    pub(crate) fn from_flat(dim: usize, coords: Vec<f64>, scale: f64) -> Result<Self> {
        let set = PointSet {
            dim,
            coords,
            scale,
            min_dist: OnceLock::new(),
        };
        set.check_duplicates()?;
        Ok(set)
    }

    fn check_duplicates(&self) -> Result<()> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            self.point(a)
                .iter()
                .zip(self.point(b))
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        for w in order.windows(2) {
            if self.point(w[0]) == self.point(w[1]) {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoint { first, second });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.points().map(|p| Point::new(p.to_vec())).collect()
    }

    pub fn flat(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        dist(self.point(i), self.point(j))
    }

    /// Smallest pairwise distance, computed once by brute force.
    pub fn min_pairwise_distance(&self) -> f64 {
        *self.min_dist.get_or_init(|| {
            let n = self.len();
            let mut best = f64::INFINITY;
            for i in 0..n {
                let pi = self.point(i);
                for j in i + 1..n {
                    let d2 = dist2(pi, self.point(j));
                    if d2 < best {
                        best = d2;
                    }
                }
            }
            best.sqrt()
        })
    }

    /// Largest over smallest pairwise distance.
    pub fn spread(&self) -> f64 {
        self.diameter() / self.min_pairwise_distance()
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(dist2(self.point(i), self.point(j)));
            }
        }
        best.sqrt()
    }

    /// True when the closest pair is at distance 1 within [`REL_TOL`].
    pub fn is_normalized(&self) -> bool {
        (self.min_pairwise_distance() - 1.0).abs() <= REL_TOL
    }

    /// Axis-aligned bounding box as `(min, max)` per coordinate.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in self.points() {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }
}

/// Rescales `raw_points` so the closest pair is at distance exactly 1.
pub fn normalize(raw_points: &[Point]) -> Result<PointSet> {
    let set = PointSet::new(raw_points)?;
    Ok(set.normalized())
}

impl PointSet {
    /// Returns a copy scaled by `1 / min_pairwise_distance`, accumulating the scale.
    pub fn normalized(&self) -> PointSet {
        let m = self.min_pairwise_distance();
        let coords = self.coords.iter().map(|c| c / m).collect();
        let out = PointSet {
            dim: self.dim,
            coords,
            scale: self.scale * m,
            min_dist: OnceLock::new(),
        };
        let _ = out.min_dist.set(1.0);
        out
    }
}

#[inline]
pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Unsigned angle between two directions, in `[0, pi/2]`.
pub fn angle_between(e1: &[f64], e2: &[f64]) -> Result<f64> {
    let n1 = norm(e1);
    let n2 = norm(e2);
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let c = (dot(e1, e2).abs() / (n1 * n2)).clamp(0.0, 1.0);
    Ok(c.acos().clamp(0.0, FRAC_PI_2))
}

/// Fraction of `|st|` at which `x` projects onto the line `st`, measured from `s`.
///
/// Negative or above 1 when the foot falls outside the segment.
pub fn projection_fraction(s: &[f64], t: &[f64], x: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..s.len() {
        let st = t[k] - s[k];
        num += (x[k] - s[k]) * st;
        den += st * st;
    }
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Outside,
    InsideNeither,
    InA,
    InB,
}

/// Which side region of the ellipse around `st` is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn band(self) -> (f64, f64) {
        match self {
            Side::A => A_BAND,
            Side::B => B_BAND,
        }
    }
}

/// Locates `x` relative to the ellipse `|sx| + |xt| <= (1+eps)|st|` and its
/// two bands at 3/8 and 5/8 of the way from `s` to `t`.
pub fn region_of(s: &[f64], t: &[f64], x: &[f64], eps: f64) -> Result<Region> {
    region_of_with_tol(s, t, x, eps, REGION_TOL)
}

pub fn region_of_with_tol(s: &[f64], t: &[f64], x: &[f64], eps: f64, tol: f64) -> Result<Region> {
    let len = dist(s, t);
    if len == 0.0 {
        return Err(Error::DegenerateSegment);
    }
    if dist(s, x) + dist(x, t) > (1.0 + eps) * len * (1.0 + tol) {
        return Ok(Region::Outside);
    }
    let f = projection_fraction(s, t, x);
    Ok(classify_fraction(f, tol))
}

pub(crate) fn classify_fraction(f: f64, tol: f64) -> Region {
    let in_band = |(lo, hi): (f64, f64), v: f64| v >= lo - tol && v <= hi + tol;
    // The t-side fraction is 1 - f for feet on the line; both must hold.
    if in_band(A_BAND, f) && in_band(B_BAND, 1.0 - f) {
        Region::InA
    } else if in_band(B_BAND, f) && in_band(A_BAND, 1.0 - f) {
        Region::InB
    } else {
        Region::InsideNeither
    }
}

/// Total length of the edges within `theta` of the direction `b - a`.
pub fn low_angle_weight(edges: &[(Point, Point)], a: &Point, b: &Point, theta: f64) -> Result<f64> {
    let ab = sub(&b.coords, &a.coords);
    if norm(&ab) == 0.0 {
        return Err(Error::DegenerateSegment);
    }
    let mut total = 0.0;
    for (p, q) in edges {
        let e = sub(&q.coords, &p.coords);
        let len = norm(&e);
        if len == 0.0 {
            continue;
        }
        if angle_between(&e, &ab)? <= theta {
            total += len;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn pts(raw: &[&[f64]]) -> Vec<Point> {
        raw.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    #[test]
    fn normalize_scales_by_min_distance() {
        let set = normalize(&pts(&[&[0.0, 0.0], &[0.0, 2.0], &[0.0, 6.0]])).unwrap();
        assert_eq!(set.scale(), 2.0);
        assert_eq!(set.point(1), &[0.0, 1.0]);
        assert_eq!(set.point(2), &[0.0, 3.0]);
    }

    #[test]
    fn normalize_keeps_unit_pair() {
        let set = normalize(&pts(&[&[0.0, 0.0], &[1.0, 0.0]])).unwrap();
        assert_eq!(set.scale(), 1.0);
        assert_eq!(set.point(1), &[1.0, 0.0]);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(matches!(
            normalize(&pts(&[&[0.0, 0.0]])),
            Err(Error::TooFewPoints(1))
        ));
        assert!(matches!(
            normalize(&pts(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 0.0]])),
            Err(Error::DuplicatePoint { first: 0, second: 2 })
        ));
        assert!(matches!(
            normalize(&pts(&[&[0.0, f64::NAN], &[1.0, 1.0]])),
            Err(Error::NonFinite { index: 0 })
        ));
        assert!(matches!(
            normalize(&pts(&[&[0.0, 0.0], &[1.0, 1.0, 1.0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn angles() {
        assert!((angle_between(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(angle_between(&[1.0, 0.0], &[-1.0, 0.0]).unwrap(), 0.0);
        let a = angle_between(&[1.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!((a - (1.0f64 / 2.0f64.sqrt()).acos()).abs() < 1e-15);
        assert!((a - FRAC_PI_4).abs() < 1e-12);
        assert!(matches!(angle_between(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector)));
        assert!(angle_between(&[1.0, 2.0], &[-3.0, 0.5]).unwrap() <= PI / 2.0);
    }

    #[test]
    fn regions() {
        let s = [0.0, 0.0];
        let t = [1.0, 0.0];
        assert_eq!(region_of(&s, &t, &[0.375, 0.0], 0.1).unwrap(), Region::InA);
        assert_eq!(region_of(&s, &t, &[0.625, 0.0], 0.1).unwrap(), Region::InB);
        // 2 * sqrt(1.25) = 2.236 > 1.1
        assert_eq!(region_of(&s, &t, &[0.5, 1.0], 0.1).unwrap(), Region::Outside);
        assert_eq!(region_of(&s, &t, &[0.5, 0.0], 0.1).unwrap(), Region::InsideNeither);
        assert!(matches!(region_of(&s, &s, &t, 0.1), Err(Error::DegenerateSegment)));
    }

    #[test]
    fn region_band_edges_are_closed() {
        let s = [0.0, 0.0];
        let t = [1.0, 0.0];
        assert_eq!(region_of(&s, &t, &[A_BAND.0, 0.0], 0.1).unwrap(), Region::InA);
        assert_eq!(region_of(&s, &t, &[A_BAND.1, 0.0], 0.1).unwrap(), Region::InA);
        assert_eq!(region_of(&s, &t, &[A_BAND.1 + 1e-6, 0.0], 0.1).unwrap(), Region::InsideNeither);
    }

    #[test]
    fn low_angle_examples() {
        let a = Point::new(vec![0.0, 0.0]);
        let b = Point::new(vec![2.0, 0.0]);
        let flat = vec![(Point::new(vec![0.0, 0.0]), Point::new(vec![1.0, 0.0]))];
        assert_eq!(low_angle_weight(&flat, &a, &b, 0.1).unwrap(), 1.0);
        let up = vec![(Point::new(vec![0.0, 0.0]), Point::new(vec![0.0, 1.0]))];
        assert_eq!(low_angle_weight(&up, &a, &b, 0.1).unwrap(), 0.0);
        assert!(matches!(low_angle_weight(&up, &a, &a, 0.1), Err(Error::DegenerateSegment)));
    }

    #[test]
    fn spread_and_bounds() {
        let set = PointSet::new(&pts(&[&[0.0, 0.0], &[1.0, 0.0], &[4.0, 0.0]])).unwrap();
        assert_eq!(set.min_pairwise_distance(), 1.0);
        assert_eq!(set.spread(), 4.0);
        assert_eq!(set.bounds(), (vec![0.0, 0.0], vec![4.0, 0.0]));
    }
}
