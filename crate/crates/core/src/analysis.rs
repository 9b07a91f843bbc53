//! Per-bundle summaries and SNR sweeps of the analytic quantities.

use std::str::FromStr;

use crate::asymptotics::{asymptotic_approx, AsymptoticSummary};
use crate::bounds::{error_lb_checked, error_ub, lb_geometry, lb_onset_snr_db};
use crate::constellation::Bundle;
use crate::detector::Noise;
use crate::error::{Error, Result};
use crate::exact1d::error_exact;
use crate::weights::ErrorSpec;

/// Grid of `E_s / sigma^2` values in dB, written `start:stop:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidConfig("SNR grid values must be finite".into()));
        }
        if step <= 0.0 || stop < start {
            return Err(Error::InvalidConfig(format!(
                "SNR grid {start}:{stop}:{step} is empty"
            )));
        }
        Ok(SnrGrid { start, stop, step })
    }

    /// Grid points `start + k step` up to `stop` (inclusive, with slack for
    /// rounding in the step).
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for SnrGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidConfig(format!("expected start:stop:step, got '{s}'"));
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad());
        match parts.as_slice() {
            [a] => {
                let v = num(a)?;
                SnrGrid::new(v, v, 1.0)
            }
            [a, b, c] => SnrGrid::new(num(a)?, num(b)?, num(c)?),
            _ => Err(bad()),
        }
    }
}

/// Static description of a bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub name: Option<String>,
    pub size: usize,
    pub dim: usize,
    pub med: f64,
    pub energy: f64,
    pub med_pairs: Vec<(usize, usize)>,
    pub neighbor_counts: Vec<usize>,
    pub asymptotics: AsymptoticSummary,
    /// `+inf` when the lower bound holds at every noise level.
    pub min_tau: f64,
    pub lb_onset_snr_db: Option<f64>,
}

pub fn analyze(bundle: &Bundle) -> Result<Summary> {
    let graph = bundle.graph();
    let geometry = lb_geometry(bundle, Noise::new(1.0)?);
    Ok(Summary {
        name: bundle.name().map(str::to_string),
        size: bundle.len(),
        dim: bundle.dim(),
        med: graph.med(),
        energy: bundle.average_energy(),
        med_pairs: graph.med_pairs().to_vec(),
        neighbor_counts: graph.neighbor_counts().to_vec(),
        asymptotics: AsymptoticSummary::new(bundle)?,
        min_tau: geometry.min_tau(),
        lb_onset_snr_db: lb_onset_snr_db(bundle),
    })
}

/// Analytic quantities at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub snr_db: f64,
    pub sigma: f64,
    /// Exact value, only for one-dimensional constellations.
    pub exact: Option<f64>,
    pub ub: f64,
    pub lb: Option<f64>,
    pub asym: f64,
}

fn bounds_row(bundle: &Bundle, spec: ErrorSpec, snr_db: f64, with_exact: bool) -> Result<BoundsRow> {
    let noise = Noise::from_snr_db(bundle.average_energy(), snr_db)?;
    Ok(BoundsRow {
        snr_db,
        sigma: noise.sigma(),
        exact: if with_exact {
            Some(error_exact(bundle, spec, noise)?)
        } else {
            None
        },
        ub: error_ub(bundle, spec, noise)?,
        lb: error_lb_checked(bundle, spec, noise)?,
        asym: asymptotic_approx(bundle, spec, noise)?,
    })
}

/// Upper bound, lower bound (where valid) and asymptote over a grid.
pub fn bounds_sweep(bundle: &Bundle, spec: ErrorSpec, snr_grid: &[f64]) -> Result<Vec<BoundsRow>> {
    snr_grid
        .iter()
        .map(|&s| bounds_row(bundle, spec, s, false))
        .collect()
}

/// Like [`bounds_sweep`] with the exact value added; one-dimensional only.
pub fn exact_sweep(bundle: &Bundle, spec: ErrorSpec, snr_grid: &[f64]) -> Result<Vec<BoundsRow>> {
    if bundle.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            required: 1,
            found: bundle.dim(),
        });
    }
    snr_grid
        .iter()
        .map(|&s| bounds_row(bundle, spec, s, true))
        .collect()
}
