//! Error probabilities of MAP and ML detection of multidimensional
//! constellations with arbitrary priors over the AWGN channel.
//!
//! The crate offers four views of the same quantity, the symbol or bit error
//! probability `P(sigma)`:
//!
//! * [`exact1d`]: closed form for one-dimensional constellations;
//! * [`bounds`]: union upper bound and a hypercube lower bound, any dimension;
//! * [`asymptotics`]: the high-SNR constant `B` with
//!   `P(sigma) / Q(d / (2 sigma)) -> B`, and the MAP/ML ratio `R <= 1`;
//! * [`montecarlo`]: seeded, reproducible simulation.
//!
//! SNR is always `E_s / sigma^2` in dB with `sigma^2` the noise variance per
//! dimension.

pub mod analysis;
pub mod asymptotics;
pub mod bounds;
pub mod cli;
pub mod constellation;
pub mod detector;
pub mod error;
pub mod exact1d;
pub mod io;
pub mod montecarlo;
pub mod presets;
pub mod qfunc;
pub mod weights;

pub use asymptotics::{asymptotic_approx, asymptotic_b, ratio_r, AsymptoticSummary};
pub use bounds::{error_lb, error_ub, lb_geometry, transition_lb, transition_ub, LowerBoundGeometry};
pub use constellation::{
    average_energy, hamming, med_graph, validate, Bundle, Constellation, Distribution, Labeling,
    MedGraph,
};
pub use detector::{decide, delta_ij, rasterize_regions, DetectorKind, Noise, Window};
pub use error::{Error, Result};
pub use exact1d::{bep_exact, regions_1d, sep_exact, transition_exact};
pub use montecarlo::{simulate, sweep, SimConfig, SimResult};
pub use qfunc::q_function;
pub use weights::{ErrorKind, ErrorSpec};
