//! MAP and ML decision rules over the AWGN channel.

use std::fmt;
use std::str::FromStr;

use crate::constellation::{squared_distance, Bundle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    /// Maximum a posteriori: `argmax_j p_j f(y | x_j)`.
    Map,
    /// Maximum likelihood: `argmax_j f(y | x_j)`, i.e. the nearest point.
    Ml,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 2] = [DetectorKind::Map, DetectorKind::Ml];
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorKind::Map => "map",
            DetectorKind::Ml => "ml",
        })
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "map" => Ok(DetectorKind::Map),
            "ml" => Ok(DetectorKind::Ml),
            _ => Err(Error::InvalidConfig(format!("unknown detector '{s}'"))),
        }
    }
}

/// Per-dimension noise standard deviation of the channel `Y = X + Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Noise {
    sigma: f64,
}

impl Noise {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(Noise { sigma })
        } else {
            Err(Error::InvalidSigma(sigma))
        }
    }

    pub fn from_variance(variance: f64) -> Result<Self> {
        Self::new(variance.sqrt())
    }

    /// Noise level giving `E_s / sigma^2 = snr_db` (dB), with `sigma^2` the
    /// per-dimension variance.
    pub fn from_snr_db(energy: f64, snr_db: f64) -> Result<Self> {
        Self::from_variance(energy / 10f64.powf(snr_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma
    }

    /// `E_s / sigma^2` in dB.
    pub fn snr_db(&self, energy: f64) -> f64 {
        10.0 * (energy / self.variance()).log10()
    }
}

/// A decision rule with its per-point bias terms precomputed.
///
/// Both rules minimise `||y - x_j||^2 - b_j` with `b_j = 2 sigma^2 ln p_j`
/// for MAP and `b_j = 0` for ML. Ties go to the lowest index.
#[derive(Debug, Clone)]
pub struct Decider<'a> {
    bundle: &'a Bundle,
    bias: Option<Vec<f64>>,
}

impl<'a> Decider<'a> {
    pub fn new(bundle: &'a Bundle, kind: DetectorKind, noise: Noise) -> Self {
        // equal priors cancel; sharing the ML path keeps decisions bit-identical
        let bias = match kind {
            DetectorKind::Map if !bundle.distribution().is_uniform() => {
                let two_var = 2.0 * noise.variance();
                Some(
                    bundle
                        .distribution()
                        .probs()
                        .iter()
                        .map(|p| two_var * p.ln())
                        .collect(),
                )
            }
            _ => None,
        };
        Decider { bundle, bias }
    }

    /// Decision for a vector already known to have the right dimension.
    pub fn decide_unchecked(&self, y: &[f64]) -> usize {
        let c = self.bundle.constellation();
        let mut best = 0;
        let mut best_score = f64::INFINITY;
        for (j, x) in c.points().enumerate() {
            let mut score = squared_distance(y, x);
            if let Some(bias) = &self.bias {
                score -= bias[j];
            }
            if score < best_score {
                best_score = score;
                best = j;
            }
        }
        best
    }

    pub fn decide(&self, y: &[f64]) -> Result<usize> {
        let dim = self.bundle.dim();
        if y.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: y.len(),
            });
        }
        Ok(self.decide_unchecked(y))
    }
}

/// Index chosen by the detector for the received vector `y`.
pub fn decide(y: &[f64], bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<usize> {
    Decider::new(bundle, kind, noise).decide(y)
}

/// Signed distance from `x_i` to the pairwise decision hyperplane between
/// `x_i` and `x_j`.
///
/// For MAP this is `(delta/2) (1 + 2 sigma^2 ln(p_i/p_j) / delta^2)` and may
/// be negative; for ML it is `delta/2`.
pub fn delta_ij(i: usize, j: usize, bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<f64> {
    bundle.check_pair(i, j)?;
    Ok(pairwise_offset(bundle, i, j, kind, noise))
}

pub(crate) fn pairwise_offset(
    bundle: &Bundle,
    i: usize,
    j: usize,
    kind: DetectorKind,
    noise: Noise,
) -> f64 {
    let delta = bundle.graph().distance(i, j);
    match kind {
        DetectorKind::Ml => delta / 2.0,
        DetectorKind::Map => {
            let log_ratio = (bundle.prob(i) / bundle.prob(j)).ln();
            delta / 2.0 + noise.variance() * log_ratio / delta
        }
    }
}

/// Axis-aligned window in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Decision indices over a grid of cell centres.
///
/// Row `r` covers the `r`-th band of `y` from `y_min` upwards, column `c` the
/// `c`-th band of `x` from `x_min`; cells are stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub window: Window,
    pub resolution: usize,
    pub cells: Vec<usize>,
}

impl Raster {
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.resolution + col]
    }

    /// Centre of a cell.
    pub fn center(&self, row: usize, col: usize) -> (f64, f64) {
        cell_center(&self.window, self.resolution, row, col)
    }
}

fn cell_center(w: &Window, n: usize, row: usize, col: usize) -> (f64, f64) {
    let dx = (w.x_max - w.x_min) / n as f64;
    let dy = (w.y_max - w.y_min) / n as f64;
    (
        w.x_min + (col as f64 + 0.5) * dx,
        w.y_min + (row as f64 + 0.5) * dy,
    )
}

/// Classifies the centre of every cell of a `resolution x resolution` grid.
pub fn rasterize_regions(
    bundle: &Bundle,
    kind: DetectorKind,
    noise: Noise,
    window: Window,
    resolution: usize,
) -> Result<Raster> {
    if bundle.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            found: bundle.dim(),
        });
    }
    let ok = window.x_min.is_finite()
        && window.x_max.is_finite()
        && window.y_min.is_finite()
        && window.y_max.is_finite()
        && window.x_min < window.x_max
        && window.y_min < window.y_max;
    if !ok {
        return Err(Error::InvalidConfig(format!("degenerate window {window:?}")));
    }
    if resolution == 0 {
        return Err(Error::InvalidConfig("resolution must be positive".into()));
    }
    let decider = Decider::new(bundle, kind, noise);
    let mut cells = Vec::with_capacity(resolution * resolution);
    for row in 0..resolution {
        for col in 0..resolution {
            let (x, y) = cell_center(&window, resolution, row, col);
            cells.push(decider.decide_unchecked(&[x, y]));
        }
    }
    Ok(Raster {
        window,
        resolution,
        cells,
    })
}
