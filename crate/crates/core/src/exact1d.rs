//! Closed-form error probabilities for one-dimensional constellations.
//!
//! On the real line each decision region is an interval. Dropping the common
//! `-y^2 / (2 sigma^2)` term, the MAP metric of point `j` is the line
//! `y x_j / sigma^2 + ln p_j - x_j^2 / (2 sigma^2)`, so the regions are the
//! pieces of the upper envelope of `M` lines. Points whose line never reaches
//! the envelope get an empty region.

use crate::constellation::Bundle;
use crate::detector::{DetectorKind, Noise};
use crate::error::{Error, Result};
use crate::qfunc::normal_interval;
use crate::weights::{ErrorKind, ErrorSpec};

/// Closed interval `[lo, hi]`; `None` in [`RegionIntervals`] marks an empty
/// region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Decision region of every point, indexed like the constellation.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionIntervals {
    pub intervals: Vec<Option<Interval>>,
}

impl RegionIntervals {
    /// Finite region boundaries in increasing order.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .intervals
            .iter()
            .flatten()
            .map(|iv| iv.lo)
            .filter(|v| v.is_finite())
            .collect();
        b.sort_by(f64::total_cmp);
        b
    }
}

fn require_line(bundle: &Bundle) -> Result<()> {
    if bundle.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            required: 1,
            found: bundle.dim(),
        });
    }
    Ok(())
}

/// Decision intervals of the MAP or ML detector on the real line.
pub fn regions_1d(bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<RegionIntervals> {
    require_line(bundle)?;
    let xs = bundle.constellation().coords();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));

    let variance = noise.variance();
    let log_p = |k: usize| match kind {
        DetectorKind::Map => bundle.prob(k).ln(),
        DetectorKind::Ml => 0.0,
    };
    // boundary where the metrics of a (left) and b (right) are equal
    let crossing = |a: usize, b: usize| {
        (xs[a] + xs[b]) / 2.0 + variance * (log_p(a) - log_p(b)) / (xs[b] - xs[a])
    };

    // (index, left boundary of its piece)
    let mut hull: Vec<(usize, f64)> = Vec::with_capacity(xs.len());
    for &k in &order {
        let mut start = f64::NEG_INFINITY;
        while let Some(&(top, top_start)) = hull.last() {
            let t = crossing(top, k);
            if t <= top_start {
                hull.pop();
            } else {
                start = t;
                break;
            }
        }
        hull.push((k, start));
    }

    let mut intervals = vec![None; xs.len()];
    for (pos, &(k, lo)) in hull.iter().enumerate() {
        let hi = hull.get(pos + 1).map_or(f64::INFINITY, |&(_, s)| s);
        intervals[k] = Some(Interval { lo, hi });
    }
    Ok(RegionIntervals { intervals })
}

/// Row-major `M x M` matrix of transition probabilities
/// `F_ij = P(Y in R_j | X = x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }
}

pub fn transition_exact(bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<TransitionMatrix> {
    let regions = regions_1d(bundle, kind, noise)?;
    let xs = bundle.constellation().coords();
    let size = xs.len();
    let mut entries = vec![0.0; size * size];
    for (i, &x) in xs.iter().enumerate() {
        for (j, region) in regions.intervals.iter().enumerate() {
            if let Some(iv) = region {
                entries[i * size + j] = normal_interval(iv.lo, iv.hi, x, noise.sigma());
            }
        }
    }
    Ok(TransitionMatrix { size, entries })
}

/// Exact error probability selected by `spec`.
pub fn error_exact(bundle: &Bundle, spec: ErrorSpec, noise: Noise) -> Result<f64> {
    let cost = spec.costs(bundle)?;
    let f = transition_exact(bundle, spec.detector, noise)?;
    let mut total = 0.0;
    for i in 0..f.size() {
        let mut row = 0.0;
        for j in 0..f.size() {
            if j != i {
                row += cost.get(i, j) * f.get(i, j);
            }
        }
        total += bundle.prob(i) * row;
    }
    Ok(total)
}

pub fn sep_exact(bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<f64> {
    error_exact(bundle, ErrorSpec::new(kind, ErrorKind::Sep), noise)
}

/// Bit error probability; uses the bundle's labeling.
pub fn bep_exact(bundle: &Bundle, kind: DetectorKind, noise: Noise) -> Result<f64> {
    error_exact(bundle, ErrorSpec::new(kind, ErrorKind::Bep), noise)
}
