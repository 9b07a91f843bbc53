//! Constellation files and tabular output.
//!
//! A constellation file is TOML with the top-level keys `dimension`,
//! `points`, `probs` and the optional `labels` and `name`:
//!
//! ```toml
//! name = "asymmetric 3-PAM"
//! dimension = 1
//! points = [[-1.0], [0.0], [2.0]]
//! probs = [0.62, 0.07, 0.31]
//! ```
//!
//! The order of `points` defines the point indices; `labels`, when present,
//! are strings of `0`/`1` of common length `log2 M`.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use crate::constellation::{validate, Bundle, Constellation, Distribution, Labeling};
use crate::error::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: invalid `{field}`: {source}")]
    Invalid {
        field: String,
        line: usize,
        column: usize,
        #[source]
        source: Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    dimension: Spanned<i64>,
    points: Spanned<Vec<Spanned<Vec<f64>>>>,
    probs: Spanned<Vec<Spanned<f64>>>,
    labels: Option<Spanned<Vec<Spanned<String>>>>,
}

#[derive(Debug, Serialize)]
struct OutFile<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    dimension: usize,
    points: Vec<&'a [f64]>,
    probs: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn line_col(doc: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(doc.len());
    let before = &doc[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |p| offset - p - 1) + 1;
    (line, column)
}

struct Locator<'a> {
    doc: &'a str,
}

impl Locator<'_> {
    fn invalid(&self, field: String, span: Range<usize>, source: Error) -> FileError {
        let (line, column) = line_col(self.doc, span.start);
        FileError::Invalid {
            field,
            line,
            column,
            source,
        }
    }
}

/// Parses and validates a constellation file.
pub fn parse_constellation(doc: &str) -> Result<Bundle, FileError> {
    let raw: RawFile = toml::from_str(doc).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(doc, s.start));
        FileError::Syntax {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    let loc = Locator { doc };

    let dimension = *raw.dimension.get_ref();
    if dimension < 1 {
        return Err(loc.invalid(
            "dimension".into(),
            raw.dimension.span(),
            Error::ZeroDimension,
        ));
    }
    let dimension = dimension as usize;

    let points_span = raw.points.span();
    let points = raw.points.into_inner();
    for (index, p) in points.iter().enumerate() {
        if p.get_ref().len() != dimension {
            return Err(loc.invalid(
                format!("points[{index}]"),
                p.span(),
                Error::PointDimension {
                    index,
                    expected: dimension,
                    found: p.get_ref().len(),
                },
            ));
        }
    }
    let point_field = |index: usize| (format!("points[{index}]"), points[index].span());
    let coords: Vec<f64> = points.iter().flat_map(|p| p.get_ref().iter().copied()).collect();
    let constellation = Constellation::from_flat(dimension, coords).map_err(|e| {
        let (field, span) = match e {
            Error::NonFinitePoint { index } => point_field(index),
            Error::DuplicatePoint { second, .. } => point_field(second),
            _ => ("points".to_string(), points_span.clone()),
        };
        loc.invalid(field, span, e)
    })?;

    let probs_span = raw.probs.span();
    let probs = raw.probs.into_inner();
    if probs.len() != constellation.len() {
        return Err(loc.invalid(
            "probs".into(),
            probs_span,
            Error::ProbabilityCount {
                expected: constellation.len(),
                found: probs.len(),
            },
        ));
    }
    let distribution =
        Distribution::new(probs.iter().map(|p| *p.get_ref()).collect()).map_err(|e| {
            match e {
                Error::ProbabilityOutOfRange { index, .. } => {
                    loc.invalid(format!("probs[{index}]"), probs[index].span(), e)
                }
                _ => loc.invalid("probs".into(), probs_span.clone(), e),
            }
        })?;

    let labeling = match raw.labels {
        None => None,
        Some(labels) => {
            let span = labels.span();
            let labels = labels.into_inner();
            let label_err = |e: Error| match e {
                Error::LabelLength { index, .. } | Error::LabelCharacter { index }
                    if index < labels.len() =>
                {
                    loc.invalid(format!("labels[{index}]"), labels[index].span(), e)
                }
                Error::DuplicateLabel { second, .. } => {
                    loc.invalid(format!("labels[{second}]"), labels[second].span(), e)
                }
                _ => loc.invalid("labels".into(), span.clone(), e),
            };
            let strings: Vec<&str> = labels.iter().map(|l| l.get_ref().as_str()).collect();
            if strings.is_empty() {
                return Err(label_err(Error::LabelCount {
                    expected: constellation.len(),
                    found: 0,
                }));
            }
            let l = Labeling::from_strings(&strings).map_err(label_err)?;
            let size = constellation.len();
            if !size.is_power_of_two() {
                return Err(label_err(Error::NotPowerOfTwo(size)));
            }
            if l.len() != size {
                return Err(label_err(Error::LabelCount {
                    expected: size,
                    found: l.len(),
                }));
            }
            if l.bits() != size.trailing_zeros() as usize {
                return Err(label_err(Error::LabelLength {
                    index: 0,
                    expected: size.trailing_zeros() as usize,
                    found: l.bits(),
                }));
            }
            Some(l)
        }
    };

    let bundle = validate(constellation, distribution, labeling)
        .map_err(|e| loc.invalid("file".into(), 0..0, e))?;
    Ok(match raw.name {
        Some(name) => bundle.with_name(name),
        None => bundle,
    })
}

pub fn read_constellation(path: &std::path::Path) -> Result<Bundle, FileError> {
    let doc = std::fs::read_to_string(path)?;
    parse_constellation(&doc)
}

/// Writes a bundle in the constellation file format. Floats are printed in
/// shortest round-trip form, so parsing the output gives back an identical
/// bundle.
pub fn serialize_constellation(bundle: &Bundle) -> String {
    let c = bundle.constellation();
    let out = OutFile {
        name: bundle.name(),
        dimension: c.dim(),
        points: c.points().collect(),
        probs: bundle.distribution().probs(),
        labels: bundle.labeling().map(Labeling::to_strings),
    };
    toml::to_string(&out).expect("constellation serializes to TOML")
}

/// Formats a number with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Formats an optional number; `None` becomes an empty cell.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// Comma-separated table with a header row and LF line endings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
