//! Plain-text point and edge files, instance sidecars, and JSON/CSV reports.
//!
//! A point file starts with a header line `d n` followed by `n` rows of `d`
//! whitespace-separated coordinates. An edge file has one `u v` pair per
//! line. Blank lines and lines starting with `#` are ignored in both.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::instances::{GeneratedInstance, InstanceMeta};

/// An instance read back from disk; the sidecars are optional.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub points: PointSet,
    pub witness_edges: Option<Vec<(usize, usize)>>,
    pub meta: Option<InstanceMeta>,
}

pub fn witness_path(path: &Path) -> PathBuf {
    sidecar(path, "witness")
}

pub fn meta_path(path: &Path) -> PathBuf {
    sidecar(path, "meta.json")
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Parses the text of a point file; `path` only labels errors.
pub fn parse_pointset_str(text: &str, path: &Path) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(path, 1, "missing header 'd n'"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (d, n) = match head.as_slice() {
        [d, n] => match (d.parse::<usize>(), n.parse::<usize>()) {
            (Ok(d), Ok(n)) if d > 0 => (d, n),
            _ => return Err(parse_err(path, hline, format!("bad header '{header}'"))),
        },
        _ => return Err(parse_err(path, hline, format!("header must be 'd n', got '{header}'"))),
    };
    let mut points = Vec::with_capacity(n);
    for (line, row) in lines {
        if points.len() == n {
            return Err(parse_err(path, line, format!("more than {n} rows")));
        }
        let coords: Vec<f64> = row
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(path, line, format!("bad coordinate: {e}")))?;
        if coords.len() != d {
            return Err(parse_err(path, line, format!("expected {d} coordinates, got {}", coords.len())));
        }
        points.push(Point::new(coords));
    }
    if points.len() < n {
        let next = text.lines().count() + 1;
        return Err(parse_err(path, next, format!("expected {n} rows, got {}", points.len())));
    }
    PointSet::new(&points)
}

pub fn parse_pointset(path: &Path) -> Result<PointSet> {
    parse_pointset_str(&read(path)?, path)
}

/// Shortest round-trip formatting, so reading back gives identical bits.
pub fn format_pointset(points: &PointSet) -> String {
    let mut out = format!("{} {}\n", points.dim(), points.len());
    for p in points.points() {
        let row: Vec<String> = p.iter().map(|c| format!("{c:e}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_pointset(points: &PointSet, path: &Path) -> Result<()> {
    write(path, &format_pointset(points))
}

pub fn parse_edges_str(text: &str, n: usize, path: &Path) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (line, row) in content_lines(text) {
        let nums: Vec<&str> = row.split_whitespace().collect();
        let [u, v] = nums.as_slice() else {
            return Err(parse_err(path, line, format!("expected 'u v', got '{row}'")));
        };
        let (u, v) = match (u.parse::<usize>(), v.parse::<usize>()) {
            (Ok(u), Ok(v)) => (u, v),
            _ => return Err(parse_err(path, line, format!("bad edge '{row}'"))),
        };
        if u >= n || v >= n || u == v {
            return Err(parse_err(path, line, format!("edge ({u}, {v}) invalid for {n} points")));
        }
        edges.push((u, v));
    }
    Ok(edges)
}

pub fn parse_edges(path: &Path, n: usize) -> Result<Vec<(usize, usize)>> {
    parse_edges_str(&read(path)?, n, path)
}

pub fn write_edges(edges: &[(usize, usize)], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(edges.len() * 12);
    for &(u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    write(path, &out)
}

/// Writes the points to `path`, the witness (if any) to `path.witness` and
/// the construction record to `path.meta.json`.
pub fn write_instance(inst: &GeneratedInstance, path: &Path) -> Result<()> {
    write_pointset(&inst.points, path)?;
    if let Some(w) = &inst.witness_edges {
        write_edges(w, &witness_path(path))?;
    }
    write_json(&inst.meta, &meta_path(path))
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    let points = parse_pointset(path)?;
    let wp = witness_path(path);
    let witness_edges = if wp.exists() {
        Some(parse_edges(&wp, points.len())?)
    } else {
        None
    };
    let mp = meta_path(path);
    let meta = if mp.exists() {
        Some(serde_json::from_str(&read(&mp)?)?)
    } else {
        None
    };
    Ok(InstanceFile {
        points,
        witness_edges,
        meta,
    })
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(path, &text)
}

/// One CSV row per item, with a header from the field names.
pub fn write_csv<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
