use super::{Family, GeneratedInstance, InstanceMeta};
use crate::error::{Error, Result};
use crate::geom::Point;

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::ConstructionDegenerate(format!(
            "eps = {eps} outside (0, 0.05]"
        )));
    }
    Ok(())
}

// Rectangle angle with 1/cos(alpha) = 1 + eps.
fn rect_angle(eps: f64) -> f64 {
    (1.0 / (1.0 + eps)).acos()
}

fn column(top: [f64; 2], dir: [f64; 2], len: f64, k: usize) -> Vec<Point> {
    let step = if k > 1 { len / (k - 1) as f64 } else { 0.0 };
    (0..k)
        .map(|i| {
            let s = i as f64 * step;
            Point::from([top[0] + s * dir[0], top[1] + s * dir[1]])
        })
        .collect()
}

fn mirror(p: &Point) -> Point {
    Point::from([1.0 - p.coords[0], p.coords[1]])
}

// Witness shared by both sparsity constructions: the two paths through A and
// B, the given middle edges, and all edges between {p, c, q} and A ∪ B.
fn witness(k: usize, middle: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let (p, c, q) = (2 * k, 2 * k + 1, 2 * k + 2);
    let mut w = Vec::new();
    for i in 0..k.saturating_sub(1) {
        w.push((i, i + 1));
        w.push((k + i, k + i + 1));
    }
    w.extend_from_slice(middle);
    for a in 0..2 * k {
        for m in [p, c, q] {
            w.push((a, m));
        }
    }
    w
}

fn groups(meta: &mut InstanceMeta, k: usize) {
    meta.groups.insert("A".into(), (0..k).collect());
    meta.groups.insert("B".into(), (k..2 * k).collect());
    meta.groups.insert("p".into(), vec![2 * k]);
    meta.groups.insert("c".into(), vec![2 * k + 1]);
    meta.groups.insert("q".into(), vec![2 * k + 2]);
}

/// Rectangle instance on which the greedy `(1+eps)`-spanner adds every edge
/// between the two short sides.
///
/// Width 1, height `tan(alpha)` with `1/cos(alpha) = 1+eps`. `A` and `B` are
/// `k = floor(tan(alpha/10)/(2 eps)) + 1` equally spaced points hanging from
/// the upper corners over a length `tan(alpha/10)`; `c` is the centre and
/// `p`, `q` sit on the horizontal through `c` at distance `(1+eps)^2/4` from
/// both `c` and the nearer upper corner. Point order is `A, B, p, c, q`.
pub fn gen_sparsity_lb(eps: f64) -> Result<GeneratedInstance> {
    check_eps(eps)?;
    let alpha = rect_angle(eps);
    let h = alpha.tan();
    let diam = (alpha / 10.0).tan();
    let k = (diam / (2.0 * eps)).floor() as usize + 1;
    if k == 1 {
        log::info!("sparsity-lb at eps = {eps}: k = 1, A and B are single corners");
    }
    let leg = (1.0 + eps) * (1.0 + eps) / 4.0;

    let a = column([0.0, h], [0.0, -1.0], diam, k);
    let b: Vec<Point> = a.iter().map(mirror).collect();
    let mut points = a;
    points.extend(b);
    points.push(Point::from([0.5 - leg, h / 2.0]));
    points.push(Point::from([0.5, h / 2.0]));
    points.push(Point::from([0.5 + leg, h / 2.0]));

    let (p, c, q) = (2 * k, 2 * k + 1, 2 * k + 2);
    let w = witness(k, &[(p, c), (c, q)]);

    let mut meta = InstanceMeta::new(Family::SparsityLb, points.len(), 2);
    meta.eps = Some(eps);
    meta.alpha = Some(alpha);
    meta.k = Some(k);
    meta.params.insert("height".into(), h);
    meta.params.insert("side_diameter".into(), diam);
    meta.params.insert("leg".into(), leg);
    groups(&mut meta, k);
    GeneratedInstance::build(points, Some(w), meta)
}

/// Variant of [`gen_sparsity_lb`] against the greedy `(1+x eps)`-spanner.
///
/// `p` is the apex below `a1 c` of the isosceles triangle with legs
/// `(1+x eps)(1+eps)/4`; `A` runs from `a1` along the side of the rectangle
/// spanned by `a1 c` and `p`, perpendicular to `a1 c`, with diameter
/// `tan(alpha)/(20 sqrt x)` and `k = floor(diam/(2 x eps)) + 1` points. `q`
/// and `B` are the mirror images. The witness has the triangle `c p q`.
pub fn gen_sparsity_lb_x(eps: f64, x: f64) -> Result<GeneratedInstance> {
    check_eps(eps)?;
    if !(x >= 1.0 && x.powi(3) * eps <= 1.0) {
        return Err(Error::ConstructionDegenerate(format!(
            "x = {x} outside [1, eps^(-1/3)] at eps = {eps}"
        )));
    }
    let alpha = rect_angle(eps);
    let h = alpha.tan();
    let a1 = [0.0, h];
    let c = [0.5, h / 2.0];
    let base = (1.0 + eps) / 2.0;
    let leg = (1.0 + x * eps) * base / 2.0;
    let apex = (leg * leg - base * base / 4.0).sqrt();
    // Unit normal of a1c pointing below it.
    let normal = [-(h / 2.0) / base, -0.5 / base];
    let p = [
        (a1[0] + c[0]) / 2.0 + apex * normal[0],
        (a1[1] + c[1]) / 2.0 + apex * normal[1],
    ];
    let beta = (apex / (base / 2.0)).atan();

    let diam = h / (20.0 * x.sqrt());
    let k = (diam / (2.0 * x * eps)).floor() as usize + 1;
    if k == 1 {
        log::info!("sparsity-lb-x at eps = {eps}, x = {x}: k = 1, A and B are single corners");
    }
    let a = column(a1, normal, diam, k);
    let b: Vec<Point> = a.iter().map(mirror).collect();
    let mut points = a;
    points.extend(b);
    let pp = Point::from(p);
    let q = mirror(&pp);
    points.push(pp);
    points.push(Point::from(c));
    points.push(q);

    let (ip, ic, iq) = (2 * k, 2 * k + 1, 2 * k + 2);
    let w = witness(k, &[(ip, ic), (ic, iq), (ip, iq)]);

    let mut meta = InstanceMeta::new(Family::SparsityLbX, points.len(), 2);
    meta.eps = Some(eps);
    meta.x = Some(x);
    meta.alpha = Some(alpha);
    meta.beta = Some(beta);
    meta.k = Some(k);
    meta.params.insert("height".into(), h);
    meta.params.insert("side_diameter".into(), diam);
    meta.params.insert("leg".into(), leg);
    groups(&mut meta, k);
    GeneratedInstance::build(points, Some(w), meta)
}
