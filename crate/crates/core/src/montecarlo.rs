//! Seeded Monte Carlo estimation of symbol and bit error probabilities.
//!
//! The trial range is split into `workers` contiguous blocks. Block `b` draws
//! from a ChaCha20 stream keyed by `seed` with stream id `b`, so a result is
//! a pure function of `(bundle, noise, trials, seed, workers)` regardless of
//! thread scheduling.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::asymptotics::asymptotic_approx;
use crate::bounds::{error_lb_checked, error_ub};
use crate::constellation::Bundle;
use crate::detector::{Decider, DetectorKind, Noise};
use crate::error::{Error, Result};
use crate::weights::{ErrorKind, ErrorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub detector: DetectorKind,
    pub error: ErrorKind,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(spec: ErrorSpec, trials: u64, seed: u64) -> Self {
        SimConfig {
            trials,
            seed,
            detector: spec.detector,
            error: spec.error,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn spec(&self) -> ErrorSpec {
        ErrorSpec::new(self.detector, self.error)
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    pub estimate: f64,
    /// `sqrt(v / trials)` with `v` the sample variance of the per-trial score.
    pub stderr: f64,
    pub trials: u64,
    /// Trials with a wrong symbol decision.
    pub symbol_errors: u64,
    /// Sum of per-trial scores: equals `symbol_errors` for SEP, bit-error
    /// mass `sum d_H / m` for BEP.
    pub error_mass: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    trials: u64,
    symbol_errors: u64,
    sum: f64,
    sum_sq: f64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.symbol_errors += other.symbol_errors;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    fn finish(self) -> SimResult {
        let n = self.trials as f64;
        let estimate = self.sum / n;
        let variance = if self.trials > 1 {
            ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        SimResult {
            estimate: estimate.clamp(0.0, 1.0),
            stderr: (variance / n).sqrt(),
            trials: self.trials,
            symbol_errors: self.symbol_errors,
            error_mass: self.sum,
        }
    }
}

fn run_block(bundle: &Bundle, noise: Noise, config: &SimConfig, block: usize, trials: u64) -> Tally {
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    rng.set_stream(block as u64);

    let decider = Decider::new(bundle, config.detector, noise);
    let constellation = bundle.constellation();
    let labeling = bundle.labeling();
    let cdf: Vec<f64> = bundle
        .distribution()
        .probs()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let last = cdf.len() - 1;
    let sigma = noise.sigma();
    let mut y = vec![0.0; bundle.dim()];

    let mut tally = Tally {
        trials,
        ..Tally::default()
    };
    for _ in 0..trials {
        let u: f64 = rng.random();
        let sent = cdf.partition_point(|&c| c <= u).min(last);
        for (yk, xk) in y.iter_mut().zip(constellation.point(sent)) {
            let z: f64 = rng.sample(StandardNormal);
            *yk = xk + sigma * z;
        }
        let decided = decider.decide_unchecked(&y);
        if decided != sent {
            tally.symbol_errors += 1;
            let score = match (config.error, labeling) {
                (ErrorKind::Bep, Some(l)) => l.normalized_hamming(sent, decided),
                _ => 1.0,
            };
            tally.sum += score;
            tally.sum_sq += score * score;
        }
    }
    tally
}

/// Estimates the error probability selected by `config` at one noise level.
pub fn simulate(bundle: &Bundle, noise: Noise, config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    if config.error == ErrorKind::Bep {
        bundle.require_labeling()?;
    }
    let workers = config.workers as u64;
    let blocks: Vec<(usize, u64)> = (0..workers)
        .map(|b| {
            let start = b * config.trials / workers;
            let end = (b + 1) * config.trials / workers;
            (b as usize, end - start)
        })
        .collect();

    let tallies: Vec<Tally> = if blocks.len() == 1 {
        vec![run_block(bundle, noise, config, 0, config.trials)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = blocks
                .iter()
                .map(|&(b, n)| s.spawn(move || run_block(bundle, noise, config, b, n)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .collect()
        })
    };
    let total = tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    Ok(total.finish())
}

/// One point of an SNR sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub sigma: f64,
    pub sim: SimResult,
    pub ub: f64,
    /// `None` where the lower bound is not valid.
    pub lb: Option<f64>,
    pub asym: f64,
}

/// Simulation, both bounds and the asymptote over a grid of `E_s / sigma^2`
/// values in dB.
pub fn sweep(bundle: &Bundle, snr_grid: &[f64], config: &SimConfig) -> Result<Vec<SweepRow>> {
    if snr_grid.is_empty() {
        return Err(Error::InvalidConfig("empty SNR grid".into()));
    }
    let energy = bundle.average_energy();
    let spec = config.spec();
    snr_grid
        .iter()
        .map(|&snr_db| {
            if !snr_db.is_finite() {
                return Err(Error::InvalidConfig(format!("non-finite SNR {snr_db}")));
            }
            let noise = Noise::from_snr_db(energy, snr_db)?;
            Ok(SweepRow {
                snr_db,
                sigma: noise.sigma(),
                sim: simulate(bundle, noise, config)?,
                ub: error_ub(bundle, spec, noise)?,
                lb: error_lb_checked(bundle, spec, noise)?,
                asym: asymptotic_approx(bundle, spec, noise)?,
            })
        })
        .collect()
}
