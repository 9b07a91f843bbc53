//! Structural properties over seed-pinned random bundles.

mod common;

use common::{random_bundle, rng, BundleShape};
use mapml::presets::asymmetric_pam3;
use mapml::{
    asymptotic_approx, asymptotic_b, decide, delta_ij, error_ub, ratio_r, validate, Bundle,
    Constellation, DetectorKind, Distribution, ErrorKind, ErrorSpec, Labeling, Noise,
};
use proptest::prelude::*;

fn shape() -> BundleShape {
    BundleShape {
        sizes: (2..=16).collect(),
        dims: 1..=4,
    }
}

#[test]
fn distances_and_med_graph_are_consistent() {
    let mut r = rng(11);
    for _ in 0..300 {
        let b = random_bundle(&mut r, &shape());
        let g = b.graph();
        let c = b.constellation();
        assert!(g.med() > 0.0);
        assert!(!g.med_pairs().is_empty());
        let n = b.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(c.distance(i, j), c.distance(j, i));
                for k in 0..n {
                    let lhs = c.distance(i, k);
                    let rhs = c.distance(i, j) + c.distance(j, k);
                    assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
                }
            }
        }
        let total: usize = g.neighbor_counts().iter().sum();
        assert_eq!(total, g.med_pairs().len());
        assert_eq!(total % 2, 0);
        for &(i, j) in g.med_pairs() {
            assert!(g.is_med_pair(j, i));
        }
    }
}

#[test]
fn hamming_is_a_metric() {
    let mut r = rng(12);
    for bits in 1..=3usize {
        let size = 1 << bits;
        let mut labelings = vec![Labeling::natural(bits).unwrap()];
        labelings.extend((0..5).map(|_| common::random_labeling(&mut r, size)));
        for l in &labelings {
            for i in 0..size {
                assert_eq!(l.hamming(i, i).unwrap(), 0);
                for j in 0..size {
                    let d = l.hamming(i, j).unwrap();
                    assert_eq!(d, l.hamming(j, i).unwrap());
                    assert_eq!(d == 0, i == j);
                    for k in 0..size {
                        assert!(l.hamming(i, k).unwrap() <= d + l.hamming(j, k).unwrap());
                    }
                }
            }
        }
    }
}

fn small_bundle() -> impl Strategy<Value = Bundle> {
    (2usize..=6, 1usize..=3)
        .prop_flat_map(|(size, dim)| {
            (
                prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), size),
                prop::collection::vec(0.05f64..1.0, size),
            )
        })
        .prop_filter_map("distinct points", |(pts, w)| {
            let c = Constellation::new(pts).ok()?;
            let s: f64 = w.iter().sum();
            let p = Distribution::new(w.iter().map(|x| x / s).collect()).ok()?;
            validate(c, p, None).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn ml_is_scale_invariant(b in small_bundle(), alpha in 0.1f64..10.0, y in prop::collection::vec(-4.0f64..4.0, 3)) {
        let y = &y[..b.dim()];
        let scaled = validate(
            b.constellation().scaled(alpha).unwrap(),
            b.distribution().clone(),
            None,
        ).unwrap();
        let ay: Vec<f64> = y.iter().map(|v| v * alpha).collect();
        let n = Noise::new(1.0).unwrap();
        prop_assert_eq!(
            decide(y, &b, DetectorKind::Ml, n).unwrap(),
            decide(&ay, &scaled, DetectorKind::Ml, n).unwrap()
        );
    }

    #[test]
    fn map_approaches_ml_as_noise_vanishes(b in small_bundle(), y in prop::collection::vec(-4.0f64..4.0, 3)) {
        let y = &y[..b.dim()];
        // skip probes that are almost equidistant from two points
        let mut d: Vec<f64> = b.constellation().points()
            .map(|x| x.iter().zip(y).map(|(a, c)| (a - c) * (a - c)).sum())
            .collect();
        d.sort_by(f64::total_cmp);
        prop_assume!(d[1] - d[0] > 1e-3);
        let ml = decide(y, &b, DetectorKind::Ml, Noise::new(1.0).unwrap()).unwrap();
        let mut agree_from = None;
        for k in 0..40 {
            let n = Noise::new(2f64.powi(-k)).unwrap();
            let map = decide(y, &b, DetectorKind::Map, n).unwrap();
            if map == ml {
                agree_from.get_or_insert(k);
            } else {
                agree_from = None;
            }
        }
        prop_assert!(agree_from.is_some());
    }

    #[test]
    fn delta_offset_identity(b in small_bundle(), sigma in 0.01f64..2.0) {
        let n = Noise::new(sigma).unwrap();
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i == j {
                    continue;
                }
                let delta = b.constellation().distance(i, j);
                let map = delta_ij(i, j, &b, DetectorKind::Map, n).unwrap();
                let ml = delta_ij(i, j, &b, DetectorKind::Ml, n).unwrap();
                prop_assert_eq!(ml, delta / 2.0);
                let bound = sigma * sigma / delta * (b.prob(i) / b.prob(j)).ln().abs();
                prop_assert!(((map - delta / 2.0).abs() - bound).abs() <= 1e-12 * (1.0 + bound + delta));
            }
        }
    }
}

#[test]
fn decisions_are_deterministic() {
    let mut r = rng(13);
    for _ in 0..50 {
        let b = random_bundle(&mut r, &shape());
        let n = Noise::new(0.3).unwrap();
        let y: Vec<f64> = (0..b.dim()).map(|k| 0.37 * k as f64 - 0.5).collect();
        for kind in DetectorKind::ALL {
            let first = decide(&y, &b, kind, n).unwrap();
            for _ in 0..3 {
                assert_eq!(decide(&y, &b, kind, n).unwrap(), first);
            }
        }
    }
}

#[test]
fn map_constant_is_symmetric_in_pair_order() {
    let mut r = rng(14);
    for _ in 0..300 {
        let b = random_bundle(&mut r, &shape());
        let g = b.graph();
        let kinds: &[ErrorKind] = if b.labeling().is_some() {
            &ErrorKind::ALL
        } else {
            &[ErrorKind::Sep]
        };
        for &error in kinds {
            let h = |i: usize, j: usize| match (error, b.labeling()) {
                (ErrorKind::Bep, Some(l)) => l.hamming(i, j).unwrap() as f64 / l.bits() as f64,
                _ => 1.0,
            };
            let forward: f64 = g
                .med_pairs()
                .iter()
                .map(|&(i, j)| b.prob(i) * h(i, j) * (b.prob(j) / b.prob(i)).sqrt())
                .sum();
            let transposed: f64 = g
                .med_pairs()
                .iter()
                .map(|&(i, j)| b.prob(j) * h(j, i) * (b.prob(i) / b.prob(j)).sqrt())
                .sum();
            let lib = asymptotic_b(&b, ErrorSpec::new(DetectorKind::Map, error)).unwrap();
            assert!((forward - transposed).abs() <= 1e-12 * forward);
            assert!((forward - lib).abs() <= 1e-12 * forward);
        }
    }
}

#[test]
fn map_approximation_is_ml_approximation_times_ratio() {
    let mut r = rng(15);
    for _ in 0..200 {
        let b = random_bundle(&mut r, &shape());
        let n = Noise::new(0.2).unwrap();
        let ratio = ratio_r(&b, ErrorKind::Sep).unwrap();
        assert!(ratio <= 1.0 + 1e-12);
        let map = asymptotic_approx(&b, ErrorSpec::MAP_SEP, n).unwrap();
        let ml = asymptotic_approx(&b, ErrorSpec::ML_SEP, n).unwrap();
        assert!((map - ml * ratio).abs() <= 1e-14 * ml.max(1e-300));
    }
}

#[test]
fn approximation_at_vanishing_argument_is_half_b() {
    let b = asymmetric_pam3();
    let n = Noise::new(1e12).unwrap();
    for spec in [ErrorSpec::MAP_SEP, ErrorSpec::ML_SEP] {
        let half = asymptotic_b(&b, spec).unwrap() / 2.0;
        assert!((asymptotic_approx(&b, spec, n).unwrap() - half).abs() < 1e-12);
    }
}

#[test]
fn upper_bound_nonincreasing_along_sweep() {
    let b = asymmetric_pam3();
    for spec in [ErrorSpec::MAP_SEP, ErrorSpec::ML_SEP] {
        let mut prev = f64::INFINITY;
        for k in 1..=19 {
            let n = Noise::from_snr_db(b.average_energy(), k as f64).unwrap();
            let ub = error_ub(&b, spec, n).unwrap();
            assert!(ub <= prev, "{spec} at {k} dB");
            prev = ub;
        }
    }
}

#[test]
fn bit_operations_need_a_labeling() {
    let b = asymmetric_pam3();
    let n = Noise::new(0.3).unwrap();
    assert!(error_ub(&b, ErrorSpec::MAP_BEP, n).is_err());
    assert!(asymptotic_b(&b, ErrorSpec::ML_BEP).is_err());
    assert!(ratio_r(&b, ErrorKind::Bep).is_err());
}
