//! Plain-text potential files.
//!
//! ```text
//! # square well of depth 5 on [-1, 1]
//! geometry: full
//! -1.0  -5.0
//!  1.0
//! ```
//!
//! The first non-comment line is `geometry: full` or `geometry: half`. Each
//! following line holds a breakpoint and the height on the interval starting
//! there. The final line closes the support: its height is omitted or zero.
//! `#` starts a comment; blank lines are ignored; fields are separated by
//! ASCII whitespace.

use std::path::Path;

use thiserror::Error;

use crate::solver::{Geometry, PiecewiseConstantPotential};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> PotentialFileError {
    PotentialFileError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_potential(text: &str) -> Result<PiecewiseConstantPotential, PotentialFileError> {
    let mut geometry = None;
    let mut points: Vec<(usize, f64, Option<f64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if !raw.is_ascii() {
            return Err(parse_err(line_no, "non-ASCII character"));
        }
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if geometry.is_none() {
            let value = line
                .strip_prefix("geometry:")
                .ok_or_else(|| parse_err(line_no, "expected header `geometry: full|half`"))?;
            geometry = Some(match value.trim() {
                "full" => Geometry::FullLine,
                "half" => Geometry::HalfLine,
                other => {
                    return Err(parse_err(
                        line_no,
                        format!("unknown geometry `{other}`, expected full or half"),
                    ))
                }
            });
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        let num = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line_no, format!("`{s}` is not a finite number")))
        };
        match fields.as_slice() {
            [x] => points.push((line_no, num(x)?, None)),
            [x, h] => points.push((line_no, num(x)?, Some(num(h)?))),
            _ => {
                return Err(parse_err(
                    line_no,
                    format!("expected `breakpoint height`, got {} fields", fields.len()),
                ))
            }
        }
    }
    let geometry = geometry.ok_or_else(|| parse_err(1, "missing header `geometry: full|half`"))?;
    if points.len() < 2 {
        return Err(PotentialFileError::Invalid(
            "need at least one interval (two breakpoints)".into(),
        ));
    }
    let last = points.len() - 1;
    let mut breakpoints = Vec::with_capacity(points.len());
    let mut heights = Vec::with_capacity(last);
    for (k, &(line_no, x, h)) in points.iter().enumerate() {
        if let Some(&(_, prev, _)) = k.checked_sub(1).and_then(|j| points.get(j)) {
            if !(x > prev) {
                return Err(parse_err(
                    line_no,
                    "breakpoints must be strictly increasing",
                ));
            }
        }
        breakpoints.push(x);
        if k == last {
            if h.is_some_and(|h| h != 0.0) {
                return Err(parse_err(
                    line_no,
                    "closing breakpoint must have height 0 or none",
                ));
            }
        } else {
            heights.push(h.ok_or_else(|| parse_err(line_no, "missing height"))?);
        }
    }
    if geometry == Geometry::HalfLine && breakpoints[0] < 0.0 {
        return Err(parse_err(points[0].0, "half-line breakpoints must be >= 0"));
    }
    PiecewiseConstantPotential::new(breakpoints, heights, geometry)
        .map_err(|e| PotentialFileError::Invalid(e.to_string()))
}

pub fn read_potential(path: &Path) -> Result<PiecewiseConstantPotential, PotentialFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| PotentialFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_potential(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_square_well() {
        let p = parse_potential("# well\ngeometry: full\n-1 -5 # inside\n\n1\n").unwrap();
        assert_eq!(p.breakpoints(), &[-1.0, 1.0]);
        assert_eq!(p.heights(), &[-5.0]);
        assert_eq!(p.geometry(), Geometry::FullLine);
        let p = parse_potential("geometry: half\n0.5 2.0\n0.7 0\n").unwrap();
        assert_eq!(p.geometry(), Geometry::HalfLine);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |text: &str| match parse_potential(text) {
            Err(PotentialFileError::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("geometry: tube\n"), 1);
        assert_eq!(line("# c\ngeometry: full\n0 1\nfoo 2\n3\n"), 4);
        assert_eq!(line("geometry: full\n0 1\n1 2 3\n"), 3);
        assert_eq!(line("geometry: full\n0 1\n1 2\n"), 3);
        assert_eq!(line("geometry: full\n1 1\n0\n"), 3);
        assert_eq!(line("geometry: half\n-1 1\n1\n"), 2);
        assert_eq!(line("geometry: full\n0\n1 2\n2\n"), 2);
        assert_eq!(line("0 1\n"), 1);
        assert!(matches!(
            parse_potential("geometry: full\n0 1\n"),
            Err(PotentialFileError::Invalid(_))
        ));
    }
}
