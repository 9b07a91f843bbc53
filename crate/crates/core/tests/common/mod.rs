#![allow(dead_code)]

use mapml::{validate, Bundle, Constellation, Distribution, Labeling};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Flat Dirichlet(1, ..., 1) sample, renormalised so it passes validation.
pub fn dirichlet(rng: &mut ChaCha8Rng, size: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..size)
        .map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-9)
        .collect();
    normalize(e)
}

pub fn normalize(v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// Random distinct points: either on an integer grid (many MED ties) or
/// uniform in a cube (typically a single MED pair).
pub fn random_points(rng: &mut ChaCha8Rng, size: usize, dim: usize, lattice: bool) -> Constellation {
    loop {
        let pts: Vec<Vec<f64>> = if lattice {
            let side = ((size as f64).powf(1.0 / dim as f64).ceil() as usize + 1).max(2);
            let mut all: Vec<Vec<f64>> = (0..side.pow(dim as u32))
                .map(|mut k| {
                    (0..dim)
                        .map(|_| {
                            let c = (k % side) as f64;
                            k /= side;
                            c
                        })
                        .collect()
                })
                .collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        } else {
            (0..size)
                .map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect()
        };
        if let Ok(c) = Constellation::new(pts) {
            return c;
        }
    }
}

pub fn random_labeling(rng: &mut ChaCha8Rng, size: usize) -> Labeling {
    let bits = size.trailing_zeros() as usize;
    let mut labels: Vec<u64> = (0..size as u64).collect();
    labels.shuffle(rng);
    Labeling::new(bits, labels).unwrap()
}

pub struct BundleShape {
    pub sizes: Vec<usize>,
    pub dims: std::ops::RangeInclusive<usize>,
}

/// Random bundle with Dirichlet priors and, when `M` is a power of two, a
/// random labeling.
pub fn random_bundle(rng: &mut ChaCha8Rng, shape: &BundleShape) -> Bundle {
    let size = *shape.sizes.choose(rng).unwrap();
    let dim = rng.random_range(shape.dims.clone());
    let lattice = rng.random_bool(0.5);
    let c = random_points(rng, size, dim, lattice);
    let p = dirichlet(rng, size);
    let l = size.is_power_of_two().then(|| random_labeling(rng, size));
    validate(c, Distribution::new(p).unwrap(), l).unwrap()
}

/// Connected components of the MED graph.
pub fn med_components(bundle: &Bundle) -> Vec<usize> {
    let n = bundle.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for &(i, j) in bundle.graph().med_pairs() {
        let (a, b) = (find(&mut comp, i), find(&mut comp, j));
        comp[a] = b;
    }
    (0..n).map(|i| find(&mut comp, i)).collect()
}

/// Priors that are equal within each MED component, random across them.
pub fn equal_med_priors(rng: &mut ChaCha8Rng, bundle: &Bundle) -> Vec<f64> {
    let comp = med_components(bundle);
    let weights: Vec<f64> = (0..bundle.len()).map(|_| rng.random_range(0.5..1.5)).collect();
    normalize(comp.iter().map(|&c| weights[c]).collect())
}

pub fn with_priors(bundle: &Bundle, probs: Vec<f64>) -> Bundle {
    validate(
        bundle.constellation().clone(),
        Distribution::new(probs).unwrap(),
        bundle.labeling().cloned(),
    )
    .unwrap()
}

/// Brute-force MAP/ML decision written independently of the library.
pub fn brute_decide(xs: &[f64], ps: &[f64], variance: f64, map: bool, y: f64) -> usize {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (j, (&x, &p)) in xs.iter().zip(ps).enumerate() {
        let prior = if map { p.ln() } else { 0.0 };
        let score = prior - (y - x) * (y - x) / (2.0 * variance);
        if score > best_score {
            best_score = score;
            best = j;
        }
    }
    best
}

/// Decision boundaries located by scanning and bisection, with the decided
/// index on each piece: returns `(edges, owners)` with `edges[0] = -inf` and
/// `edges.last() = +inf`.
pub fn brute_regions(xs: &[f64], ps: &[f64], variance: f64, map: bool) -> (Vec<f64>, Vec<usize>) {
    let sigma = variance.sqrt();
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min) - 50.0 * sigma - 10.0;
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 50.0 * sigma + 10.0;
    let steps = 200_000;
    let dec = |y: f64| brute_decide(xs, ps, variance, map, y);
    let mut edges = vec![f64::NEG_INFINITY];
    let mut owners = vec![dec(lo)];
    let mut prev_y = lo;
    let mut prev = owners[0];
    for k in 1..=steps {
        let y = lo + (hi - lo) * k as f64 / steps as f64;
        let d = dec(y);
        if d != prev {
            let (mut a, mut b) = (prev_y, y);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if dec(m) == prev {
                    a = m;
                } else {
                    b = m;
                }
            }
            edges.push(0.5 * (a + b));
            owners.push(d);
            prev = d;
        }
        prev_y = y;
    }
    edges.push(f64::INFINITY);
    (edges, owners)
}

/// Exact SEP/BEP from brute-force regions; `labels` switches to BEP.
pub fn brute_error(xs: &[f64], ps: &[f64], variance: f64, map: bool, labels: Option<&[u64]>) -> f64 {
    let (edges, owners) = brute_regions(xs, ps, variance, map);
    let sigma = variance.sqrt();
    let bits = labels.map(|l| l.len().trailing_zeros() as f64);
    let mut total = 0.0;
    for (i, (&x, &p)) in xs.iter().zip(ps).enumerate() {
        for (k, &j) in owners.iter().enumerate() {
            if j == i {
                continue;
            }
            let mass = mapml::qfunc::normal_interval(edges[k], edges[k + 1], x, sigma);
            let h = match (labels, bits) {
                (Some(l), Some(m)) => (l[i] ^ l[j]).count_ones() as f64 / m,
                _ => 1.0,
            };
            total += p * h * mass;
        }
    }
    total
}
