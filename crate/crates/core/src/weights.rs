//! Selection of symbol- vs bit-error probability and the per-pair weights
//! that go with it.

use std::fmt;
use std::str::FromStr;

use crate::constellation::{Bundle, Labeling};
use crate::detector::DetectorKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    /// Symbol error probability.
    Sep,
    /// Bit error probability.
    Bep,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 2] = [ErrorKind::Sep, ErrorKind::Bep];
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Sep => "sep",
            ErrorKind::Bep => "bep",
        })
    }
}

impl FromStr for ErrorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sep" => Ok(ErrorKind::Sep),
            "bep" => Ok(ErrorKind::Bep),
            _ => Err(Error::InvalidConfig(format!("unknown error kind '{s}'"))),
        }
    }
}

/// Detector and error kind together select one of the four error
/// probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErrorSpec {
    pub detector: DetectorKind,
    pub error: ErrorKind,
}

impl ErrorSpec {
    pub const fn new(detector: DetectorKind, error: ErrorKind) -> Self {
        ErrorSpec { detector, error }
    }

    pub const MAP_SEP: ErrorSpec = ErrorSpec::new(DetectorKind::Map, ErrorKind::Sep);
    pub const ML_SEP: ErrorSpec = ErrorSpec::new(DetectorKind::Ml, ErrorKind::Sep);
    pub const MAP_BEP: ErrorSpec = ErrorSpec::new(DetectorKind::Map, ErrorKind::Bep);
    pub const ML_BEP: ErrorSpec = ErrorSpec::new(DetectorKind::Ml, ErrorKind::Bep);

    /// Pair cost `h_ij` for this error kind, bound to a bundle.
    pub(crate) fn costs<'a>(&self, bundle: &'a Bundle) -> Result<PairCost<'a>> {
        match self.error {
            ErrorKind::Sep => Ok(PairCost::Symbol),
            ErrorKind::Bep => Ok(PairCost::Bit(bundle.require_labeling()?)),
        }
    }

    /// Asymptotic weight `w_ij`: `sqrt(p_j / p_i)` for MAP, 1 for ML.
    pub(crate) fn asymptotic_weight(&self, bundle: &Bundle, i: usize, j: usize) -> f64 {
        match self.detector {
            DetectorKind::Map => (bundle.prob(j) / bundle.prob(i)).sqrt(),
            DetectorKind::Ml => 1.0,
        }
    }
}

impl fmt::Display for ErrorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.detector, self.error)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum PairCost<'a> {
    Symbol,
    Bit(&'a Labeling),
}

impl PairCost<'_> {
    /// `h_ij`: 1 for symbol errors, `d_H(i, j) / m` for bit errors.
    pub(crate) fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            PairCost::Symbol => 1.0,
            PairCost::Bit(l) => l.normalized_hamming(i, j),
        }
    }
}
