use super::{Family, GeneratedInstance, InstanceMeta};
use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotivatingOptions {
    /// x-coordinate of the middle point next to the left column.
    pub z_x: f64,
    /// x-coordinate of the middle point next to the right column.
    pub w_x: f64,
    /// Also put the two column paths into the witness.
    pub column_paths: bool,
}

impl Default for MotivatingOptions {
    fn default() -> Self {
        MotivatingOptions {
            z_x: 3.0,
            w_x: 7.0,
            column_paths: false,
        }
    }
}

/// Bi-clique instance: columns `x_i = (0, i eps)` and `y_i = (10, i eps)` for
/// `i = 0..=floor(eps^-1/2)` and middle points `z`, `w` on the horizontal
/// midline. A wasteful spanner joins every `x_i` to every `y_j`; the witness
/// uses only `x_i z`, `z w` and `w y_i`.
pub fn gen_motivating(eps: f64) -> Result<GeneratedInstance> {
    gen_motivating_with(eps, MotivatingOptions::default())
}

pub fn gen_motivating_with(eps: f64, opts: MotivatingOptions) -> Result<GeneratedInstance> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::ConstructionDegenerate(format!("eps = {eps} outside (0, 0.1]")));
    }
    if !(0.0 < opts.z_x && opts.z_x < opts.w_x && opts.w_x < 10.0) {
        return Err(Error::InvalidParameter(format!(
            "middle points at x = {} and {} must satisfy 0 < z < w < 10",
            opts.z_x, opts.w_x
        )));
    }
    let m = (1.0 / eps.sqrt() + 1e-9).floor() as usize;
    let rows = m + 1;
    let mid = m as f64 * eps / 2.0;
    let mut points: Vec<Point> = (0..rows).map(|i| Point::from([0.0, i as f64 * eps])).collect();
    points.extend((0..rows).map(|i| Point::from([10.0, i as f64 * eps])));
    points.push(Point::from([opts.z_x, mid]));
    points.push(Point::from([opts.w_x, mid]));
    let (z, w) = (2 * rows, 2 * rows + 1);

    let mut witness = Vec::with_capacity(2 * rows + 1);
    witness.extend((0..rows).map(|i| (i, z)));
    witness.push((z, w));
    witness.extend((0..rows).map(|i| (w, rows + i)));
    if opts.column_paths {
        for i in 0..m {
            witness.push((i, i + 1));
            witness.push((rows + i, rows + i + 1));
        }
    }

    let mut meta = InstanceMeta::new(Family::Motivating, points.len(), 2);
    meta.eps = Some(eps);
    meta.k = Some(rows);
    meta.params.insert("z_x".into(), opts.z_x);
    meta.params.insert("w_x".into(), opts.w_x);
    meta.params.insert("column_paths".into(), if opts.column_paths { 1.0 } else { 0.0 });
    meta.groups.insert("X".into(), (0..rows).collect());
    meta.groups.insert("Y".into(), (rows..2 * rows).collect());
    meta.groups.insert("z".into(), vec![z]);
    meta.groups.insert("w".into(), vec![w]);
    GeneratedInstance::build(points, Some(witness), meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_stretch;

    #[test]
    fn counts() {
        let inst = gen_motivating(0.01).unwrap();
        assert_eq!(inst.len(), 2 * 11 + 2);
        assert_eq!(inst.witness_edges.as_ref().unwrap().len(), 2 * 11 + 1);
        assert_eq!(inst.cross_pairs("X", "Y").len(), 11 * 11);
    }

    #[test]
    fn witness_connects_everything() {
        let inst = gen_motivating(0.01).unwrap();
        let w = inst.witness_graph().unwrap().unwrap();
        let s = verify_stretch(&w, &inst.points).unwrap();
        assert!(s.max_stretch.is_finite());
        let with_paths = gen_motivating_with(
            0.01,
            MotivatingOptions {
                column_paths: true,
                ..Default::default()
            },
        )
        .unwrap();
        let wp = with_paths.witness_graph().unwrap().unwrap();
        assert!(verify_stretch(&wp, &with_paths.points).unwrap().max_stretch < s.max_stretch);
    }
}
