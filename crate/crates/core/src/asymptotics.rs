//! High-SNR behaviour: `P(sigma) / Q(d / (2 sigma)) -> B` and the MAP/ML
//! ratio `R = B_map / B_ml`.

use crate::constellation::Bundle;
use crate::detector::{DetectorKind, Noise};
use crate::error::Result;
use crate::qfunc::q_function;
use crate::weights::{ErrorKind, ErrorSpec};

/// Asymptotic constant `B = sum_i p_i sum_{j: delta_ij = d} h_ij w_ij`.
///
/// Summed `i`-major then `j`, in the order of the MED pair list.
pub fn asymptotic_b(bundle: &Bundle, spec: ErrorSpec) -> Result<f64> {
    let cost = spec.costs(bundle)?;
    let mut total = 0.0;
    for &(i, j) in bundle.graph().med_pairs() {
        total += bundle.prob(i) * cost.get(i, j) * spec.asymptotic_weight(bundle, i, j);
    }
    Ok(total)
}

/// `R = B_map / B_ml` for the given error kind.
pub fn ratio_r(bundle: &Bundle, error: ErrorKind) -> Result<f64> {
    let map = asymptotic_b(bundle, ErrorSpec::new(DetectorKind::Map, error))?;
    let ml = asymptotic_b(bundle, ErrorSpec::new(DetectorKind::Ml, error))?;
    Ok(map / ml)
}

/// High-SNR approximation `B Q(d / (2 sigma))`.
pub fn asymptotic_approx(bundle: &Bundle, spec: ErrorSpec, noise: Noise) -> Result<f64> {
    let b = asymptotic_b(bundle, spec)?;
    Ok(b * q_function(bundle.graph().med() / (2.0 * noise.sigma())))
}

/// All four asymptotic constants and both ratios of a bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSummary {
    pub b_map_sep: f64,
    pub b_ml_sep: f64,
    pub r_sep: f64,
    /// Present only when the bundle carries a labeling.
    pub bep: Option<BitSummary>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BitSummary {
    pub b_map_bep: f64,
    pub b_ml_bep: f64,
    pub r_bep: f64,
}

impl AsymptoticSummary {
    pub fn new(bundle: &Bundle) -> Result<Self> {
        let b_map_sep = asymptotic_b(bundle, ErrorSpec::MAP_SEP)?;
        let b_ml_sep = asymptotic_b(bundle, ErrorSpec::ML_SEP)?;
        let bep = match bundle.labeling() {
            Some(_) => {
                let b_map_bep = asymptotic_b(bundle, ErrorSpec::MAP_BEP)?;
                let b_ml_bep = asymptotic_b(bundle, ErrorSpec::ML_BEP)?;
                Some(BitSummary {
                    b_map_bep,
                    b_ml_bep,
                    r_bep: b_map_bep / b_ml_bep,
                })
            }
            None => None,
        };
        Ok(AsymptoticSummary {
            b_map_sep,
            b_ml_sep,
            r_sep: b_map_sep / b_ml_sep,
            bep,
        })
    }
}
