//! Text formats.
//!
//! * points: one point per line, whitespace-separated coordinates.
//! * filtration: one simplex per line, `value v0 v1 ... vk`.
//! * diagram: `dim birth death` per line, `inf` for essential classes,
//!   sorted by (dim, birth, death).
//!
//! Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::complex::{ComplexBuilder, ComplexError, FilteredComplex, VertexId};
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::rips::PointCloud;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("ParseError at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("DimensionMismatch: point {point} has {found} coordinates, expected {expected}")]
    DimensionMismatch { point: usize, expected: usize, found: usize },
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> BuildError {
    BuildError::Parse { line, message: message.into() }
}

fn parse_real(line: usize, tok: &str) -> Result<f64, BuildError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("invalid number `{tok}`")))?;
    if v.is_nan() {
        return Err(parse_err(line, "NaN is not a valid value"));
    }
    Ok(v)
}

pub fn parse_points(text: &str) -> Result<PointCloud, BuildError> {
    let mut pts = Vec::new();
    let mut dim = None;
    for (line, l) in content_lines(text) {
        let p = l
            .split_whitespace()
            .map(|t| parse_real(line, t))
            .collect::<Result<Vec<f64>, _>>()?;
        match dim {
            None => dim = Some(p.len()),
            Some(d) if d != p.len() => {
                return Err(parse_err(line, format!("expected {d} coordinates, found {}", p.len())))
            }
            _ => {}
        }
        pts.push(p);
    }
    PointCloud::new(pts)
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointCloud, BuildError> {
    parse_points(&fs::read_to_string(path)?)
}

/// Parses a filtration without validating it.
pub fn parse_filtration_builder(text: &str) -> Result<ComplexBuilder, BuildError> {
    let mut b = ComplexBuilder::new();
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let value = parse_real(line, toks.next().expect("non-empty line"))?;
        let verts = toks
            .map(|t| {
                t.parse::<VertexId>()
                    .map_err(|_| parse_err(line, format!("invalid vertex `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if verts.is_empty() {
            return Err(parse_err(line, "simplex without vertices"));
        }
        b.insert_simplex(&verts, value)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(b)
}

pub fn parse_filtration(text: &str) -> Result<FilteredComplex, BuildError> {
    Ok(parse_filtration_builder(text)?.finalize()?)
}

pub fn read_filtration(path: impl AsRef<Path>) -> Result<FilteredComplex, BuildError> {
    parse_filtration(&fs::read_to_string(path)?)
}

/// Filtration file contents in filtration order, with original vertex labels.
pub fn format_filtration(c: &FilteredComplex, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for l in h.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    for &s in c.filtration_order() {
        let _ = write!(out, "{}", c.value(s));
        for v in c.labeled_simplex(s).vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn write_filtration(c: &FilteredComplex, path: impl AsRef<Path>, header: Option<&str>) -> Result<(), BuildError> {
    Ok(fs::write(path, format_filtration(c, header))?)
}

pub fn format_points(points: &[DiagramPoint]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort_by(DiagramPoint::cmp_canonical);
    let mut out = String::new();
    for p in sorted {
        let _ = writeln!(out, "{} {} {}", p.dim, p.birth, p.death);
    }
    out
}

pub fn format_diagram(d: &PersistenceDiagram) -> String {
    format_points(&d.points())
}

pub fn write_diagram(d: &PersistenceDiagram, path: impl AsRef<Path>) -> Result<(), BuildError> {
    Ok(fs::write(path, format_diagram(d))?)
}

pub fn parse_diagram(text: &str) -> Result<Vec<DiagramPoint>, BuildError> {
    content_lines(text)
        .map(|(line, l)| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(parse_err(line, "expected `dim birth death`"));
            }
            let dim = toks[0]
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("invalid dimension `{}`", toks[0])))?;
            Ok(DiagramPoint::new(dim, parse_real(line, toks[1])?, parse_real(line, toks[2])?))
        })
        .collect()
}

pub fn read_diagram(path: impl AsRef<Path>) -> Result<Vec<DiagramPoint>, BuildError> {
    parse_diagram(&fs::read_to_string(path)?)
}
