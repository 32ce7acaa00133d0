//! Plain-text polytope files.
//!
//! ```text
//! # D_3
//! dim 3
//! 0 0 0
//! 1 0 0
//! 0 1 0
//! 1 1 2
//! ```
//!
//! The first non-comment line declares the ambient rank; every further
//! nonempty line is one lattice point. `#` starts a comment anywhere on a
//! line. A file describes the convex hull of its points.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, LatticePolytope};

/// Parses the ambient rank and the listed points.
pub fn parse_points(text: &str) -> Result<(usize, Vec<LatticePoint>)> {
    let mut dim = None;
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let Some(n) = dim else {
            let mut words = line.split_whitespace();
            if words.next() != Some("dim") {
                return Err(err(format!("expected `dim n`, found `{line}`")));
            }
            let n: usize = words
                .next()
                .ok_or_else(|| err("missing rank after `dim`".into()))?
                .parse()
                .map_err(|e| err(format!("bad rank: {e}")))?;
            if words.next().is_some() {
                return Err(err("trailing tokens after `dim n`".into()));
            }
            if n == 0 {
                return Err(err("rank must be positive".into()));
            }
            dim = Some(n);
            continue;
        };
        let coords = line
            .split_whitespace()
            .map(|w| w.parse::<i64>().map_err(|e| err(format!("bad integer `{w}`: {e}"))))
            .collect::<Result<Vec<i64>>>()?;
        if coords.len() != n {
            return Err(err(format!("expected {n} coordinates, found {}", coords.len())));
        }
        points.push(LatticePoint::new(coords));
    }
    let total = text.lines().count();
    let dim = dim.ok_or(Error::Parse { line: total, message: "missing `dim n` header".into() })?;
    if points.is_empty() {
        return Err(Error::Parse { line: total, message: "no points listed".into() });
    }
    Ok((dim, points))
}

/// Parses a file and takes the convex hull of its points.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let (_, points) = parse_points(text)?;
    LatticePolytope::convex_hull(&points)
}

pub fn read_polytope(path: impl AsRef<Path>) -> Result<LatticePolytope> {
    parse_polytope(&std::fs::read_to_string(path)?)
}

/// Serializes points, preceded by one `#` line per comment.
pub fn write_points(dim: usize, points: &[LatticePoint], comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "dim {dim}");
    for p in points {
        let words: Vec<String> = p.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

/// Serializes the vertices of a polytope.
pub fn write_polytope(p: &LatticePolytope) -> String {
    write_points(p.dim(), p.vertices(), &[])
}
