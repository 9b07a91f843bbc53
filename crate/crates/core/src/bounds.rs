//! Upper and lower bounds on transition and error probabilities.
//!
//! The upper bound replaces each decision region by the half-space beyond the
//! pairwise decision hyperplane. The lower bound integrates the noise density
//! over an orthotope carved out of a hypercube inscribed in a sphere of
//! radius `r(sigma)` around the midpoint of each minimum-distance pair; it is
//! only valid below a per-pair noise threshold `tau_ij`.

use crate::constellation::Bundle;
use crate::detector::{pairwise_offset, DetectorKind, Noise};
use crate::error::{Error, Result};
use crate::qfunc::q_function;
use crate::weights::ErrorSpec;

const ONE_PLUS_SQRT3: f64 = 1.0 + 1.732_050_807_568_877_2;

/// Hypercube radius and validity thresholds of the geometric lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundGeometry {
    size: usize,
    dim: usize,
    med: f64,
    sigma: f64,
    r: f64,
    max_ratio: f64,
    log_max_ratio: f64,
    tau: Vec<f64>,
    tau_min: f64,
}

impl LowerBoundGeometry {
    /// Circumradius `r(sigma)` of the inscribed hypercube.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Half-side of the hypercube, `r / sqrt(N)`.
    pub fn half_side(&self) -> f64 {
        self.r / (self.dim as f64).sqrt()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `max_{a,b} p_a / p_b`.
    pub fn max_ratio(&self) -> f64 {
        self.max_ratio
    }

    pub fn log_max_ratio(&self) -> f64 {
        self.log_max_ratio
    }

    /// Validity threshold for the ordered pair `(i, j)`; `+inf` when the
    /// priors impose no restriction. The diagonal is `+inf`.
    pub fn tau(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.size + j]
    }

    /// Smallest `tau_ij` over all ordered pairs.
    pub fn min_tau(&self) -> f64 {
        self.tau_min
    }

    /// Same geometry evaluated at another noise level.
    pub fn at(&self, noise: Noise) -> Self {
        let mut g = self.clone();
        g.sigma = noise.sigma();
        g.r = radius(self.med, noise.variance(), self.log_max_ratio);
        g
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let tau = self.tau(i, j);
        if self.sigma < tau {
            Ok(())
        } else {
            Err(Error::BoundNotValid {
                sigma: self.sigma,
                tau,
            })
        }
    }

    fn check_all(&self) -> Result<()> {
        if self.sigma < self.tau_min {
            Ok(())
        } else {
            Err(Error::BoundNotValid {
                sigma: self.sigma,
                tau: self.tau_min,
            })
        }
    }

    /// Lower bound on `F_ij` for a minimum-distance pair with offset `delta`.
    fn med_pair_bound(&self, delta: f64) -> f64 {
        let s = self.sigma;
        let side = self.half_side() / s;
        let slab = q_function(delta / s) - q_function(self.med / (2.0 * s) + side);
        let face = (1.0 - 2.0 * q_function(side)).powi(self.dim as i32 - 1);
        (slab * face).max(0.0)
    }
}

fn radius(med: f64, variance: f64, log_max_ratio: f64) -> f64 {
    (med * med - 4.0 * variance * log_max_ratio) / (2.0 * ONE_PLUS_SQRT3 * med)
}

/// Computes `r(sigma)` and the table of `tau_ij` for a bundle.
pub fn lb_geometry(bundle: &Bundle, noise: Noise) -> LowerBoundGeometry {
    let size = bundle.len();
    let dim = bundle.dim();
    let med = bundle.graph().med();
    let max_ratio = bundle.distribution().max_ratio();
    let log_max_ratio = max_ratio.ln();
    let sqrt_dim = (dim as f64).sqrt();
    let mut tau = vec![f64::INFINITY; size * size];
    let mut tau_min = f64::INFINITY;
    for i in 0..size {
        for j in 0..size {
            if i == j {
                continue;
            }
            let log_ratio = (bundle.prob(i) / bundle.prob(j)).ln().abs();
            let denom = 2.0 * ONE_PLUS_SQRT3 * sqrt_dim * log_ratio + 4.0 * log_max_ratio;
            let t = if denom > 0.0 {
                med / denom.sqrt()
            } else {
                f64::INFINITY
            };
            tau[i * size + j] = t;
            tau_min = tau_min.min(t);
        }
    }
    LowerBoundGeometry {
        size,
        dim,
        med,
        sigma: noise.sigma(),
        r: radius(med, noise.variance(), log_max_ratio),
        max_ratio,
        log_max_ratio,
        tau,
        tau_min,
    }
}

/// `E_s / sigma^2` (dB) above which the error lower bound is defined, or
/// `None` when it is defined at every noise level.
pub fn lb_onset_snr_db(bundle: &Bundle) -> Option<f64> {
    // tau does not depend on sigma; any noise level will do
    let g = lb_geometry(bundle, Noise::new(1.0).expect("unit noise"));
    let t = g.min_tau();
    t.is_finite()
        .then(|| 10.0 * (bundle.average_energy() / (t * t)).log10())
}

/// Upper bound `Q(Delta_ij / sigma)` on the transition probability `F_ij`.
pub fn transition_ub(
    i: usize,
    j: usize,
    bundle: &Bundle,
    detector: DetectorKind,
    noise: Noise,
) -> Result<f64> {
    bundle.check_pair(i, j)?;
    Ok(q_function(pairwise_offset(bundle, i, j, detector, noise) / noise.sigma()))
}

/// Lower bound on `F_ij`; fails with [`Error::BoundNotValid`] when
/// `sigma >= tau_ij`.
pub fn transition_lb(
    i: usize,
    j: usize,
    bundle: &Bundle,
    detector: DetectorKind,
    noise: Noise,
) -> Result<f64> {
    bundle.check_pair(i, j)?;
    let g = lb_geometry(bundle, noise);
    g.check_pair(i, j)?;
    if !bundle.graph().is_med_pair(i, j) {
        return Ok(0.0);
    }
    Ok(g.med_pair_bound(pairwise_offset(bundle, i, j, detector, noise)))
}

/// Union bound on the error probability selected by `spec`.
pub fn error_ub(bundle: &Bundle, spec: ErrorSpec, noise: Noise) -> Result<f64> {
    let cost = spec.costs(bundle)?;
    let size = bundle.len();
    let mut total = 0.0;
    for i in 0..size {
        let mut row = 0.0;
        for j in 0..size {
            if j == i {
                continue;
            }
            let delta = pairwise_offset(bundle, i, j, spec.detector, noise);
            row += cost.get(i, j) * q_function(delta / noise.sigma());
        }
        total += bundle.prob(i) * row;
    }
    Ok(total)
}

/// Lower bound on the error probability; fails with
/// [`Error::BoundNotValid`] when `sigma >= min tau_ij`.
pub fn error_lb(bundle: &Bundle, spec: ErrorSpec, noise: Noise) -> Result<f64> {
    let cost = spec.costs(bundle)?;
    let g = lb_geometry(bundle, noise);
    g.check_all()?;
    let mut total = 0.0;
    for &(i, j) in bundle.graph().med_pairs() {
        let delta = pairwise_offset(bundle, i, j, spec.detector, noise);
        total += bundle.prob(i) * cost.get(i, j) * g.med_pair_bound(delta);
    }
    Ok(total.max(0.0))
}

/// Like [`error_lb`] but mapping an invalid noise level to `None`.
pub fn error_lb_checked(bundle: &Bundle, spec: ErrorSpec, noise: Noise) -> Result<Option<f64>> {
    match error_lb(bundle, spec, noise) {
        Ok(v) => Ok(Some(v)),
        Err(Error::BoundNotValid { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Limit of `r(sigma)` as `sigma -> 0`: `d / (2 (1 + sqrt 3))`.
pub fn limiting_radius(med: f64) -> f64 {
    med / (2.0 * ONE_PLUS_SQRT3)
}
