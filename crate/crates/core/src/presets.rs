//! Ready-made constellations used throughout the tests and the CLI.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::constellation::{validate, Bundle, Constellation, Distribution, Labeling};
use crate::error::{Error, Result};

/// Three points at `(-1, 0, 2)` with priors `(0.62, 0.07, 0.31)`; the mean
/// is zero.
pub fn asymmetric_pam3() -> Bundle {
    validate(
        Constellation::from_scalars(&[-1.0, 0.0, 2.0]).expect("distinct points"),
        Distribution::new(vec![0.62, 0.07, 0.31]).expect("valid priors"),
        None,
    )
    .expect("valid bundle")
    .with_name("asymmetric 3-PAM")
}

/// Three points at `(-1, 0, 1)` with priors `(p1, 1 - 2 p1, p1)`,
/// `0 < p1 < 1/2`.
pub fn symmetric_pam3(p1: f64) -> Result<Bundle> {
    if !(p1 > 0.0 && p1 < 0.5) {
        return Err(Error::InvalidConfig(format!(
            "p1 must lie in (0, 1/2), got {p1}"
        )));
    }
    Ok(validate(
        Constellation::from_scalars(&[-1.0, 0.0, 1.0])?,
        Distribution::new(vec![p1, 1.0 - 2.0 * p1, p1])?,
        None,
    )?
    .with_name(format!("symmetric 3-PAM, p1 = {p1}")))
}

/// `M` equally likely, unit-spaced points centred on the origin. A natural
/// binary labeling is attached when `M` is a power of two.
pub fn uniform_pam(size: usize) -> Result<Bundle> {
    if size < 2 {
        return Err(Error::TooFewPoints(size));
    }
    let centre = (size as f64 - 1.0) / 2.0;
    let xs: Vec<f64> = (0..size).map(|k| k as f64 - centre).collect();
    let labeling = if size.is_power_of_two() {
        Some(Labeling::natural(size.trailing_zeros() as usize)?)
    } else {
        None
    };
    Ok(validate(
        Constellation::from_scalars(&xs)?,
        Distribution::uniform(size)?,
        labeling,
    )?
    .with_name(format!("uniform {size}-PAM")))
}

/// Inner-ring radius of the 4+12 ring constellation, `d / sqrt 2`
/// (about 0.71 d).
pub const RING_INNER_RADIUS: f64 = FRAC_1_SQRT_2;

/// Outer-ring radius, `d / (2 sin(pi / 12))` (about 1.93 d).
pub fn ring_outer_radius() -> f64 {
    0.5 / (PI / 12.0).sin()
}

/// Two-ring constellation with unit MED: 4 points at radius
/// [`RING_INNER_RADIUS`] with prior `p1` each, 12 at radius
/// [`ring_outer_radius`] with `p2 = (1 - 4 p1) / 12` each. Every point has
/// exactly two neighbours at the MED and no MED pair crosses rings.
/// Natural binary labels are attached.
pub fn ring_4_12(p1: f64) -> Result<Bundle> {
    if !(p1 > 0.0 && p1 < 0.25) {
        return Err(Error::InvalidConfig(format!(
            "p1 must lie in (0, 1/4), got {p1}"
        )));
    }
    let p2 = (1.0 - 4.0 * p1) / 12.0;
    let outer = ring_outer_radius();
    let mut points = Vec::with_capacity(16);
    for k in 0..4 {
        let a = PI / 4.0 + k as f64 * PI / 2.0;
        points.push(vec![RING_INNER_RADIUS * a.cos(), RING_INNER_RADIUS * a.sin()]);
    }
    for k in 0..12 {
        let a = PI / 12.0 + k as f64 * PI / 6.0;
        points.push(vec![outer * a.cos(), outer * a.sin()]);
    }
    let mut probs = vec![p1; 4];
    probs.extend(std::iter::repeat_n(p2, 12));
    Ok(validate(
        Constellation::new(points)?,
        Distribution::new(probs)?,
        Some(Labeling::natural(4)?),
    )?
    .with_name(format!("4+12 rings, p1 = {p1}")))
}
