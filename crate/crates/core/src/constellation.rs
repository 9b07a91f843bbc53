//! Constellation geometry, priors and binary labelings.
//!
//! Everything here is immutable once validated. A [`Bundle`] ties a
//! constellation to its prior distribution and (optionally) a labeling and
//! caches the pairwise distance structure used by every other module.

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether two points coincide.
pub const DISTINCT_RTOL: f64 = 1e-12;
/// Absolute tolerance on the sum of the prior probabilities.
pub const PROB_SUM_ATOL: f64 = 1e-12;
/// Relative tolerance for membership in the set of minimum-distance pairs.
pub const MED_RTOL: f64 = 1e-9;

/// An ordered set of `M >= 2` distinct points in `N`-dimensional real space.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    dim: usize,
    coords: Vec<f64>,
}

impl Constellation {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        let mut coords = Vec::with_capacity(dim * points.len());
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::PointDimension {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a constellation from row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::PointDimension {
                index: coords.len() / dim,
                expected: dim,
                found: coords.len() % dim,
            });
        }
        let size = coords.len() / dim;
        if size < 2 {
            return Err(Error::TooFewPoints(size));
        }
        let c = Constellation { dim, coords };
        for i in 0..size {
            if c.point(i).iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinitePoint { index: i });
            }
        }
        let scale = c
            .coords
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        for i in 0..size {
            for j in (i + 1)..size {
                if c.distance(i, j) <= DISTINCT_RTOL * scale {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(c)
    }

    /// 1-D constellation from scalar positions.
    pub fn from_scalars(xs: &[f64]) -> Result<Self> {
        Self::from_flat(1, xs.to_vec())
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> f64 {
        squared_distance(self.point(i), self.point(j))
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.squared_distance(i, j).sqrt()
    }

    /// Returns a copy with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_flat(self.dim, self.coords.iter().map(|v| v * factor).collect())
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Prior probabilities of the constellation points, each strictly in (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        for (index, &value) in probs.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::ProbabilityOutOfRange { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_ATOL {
            return Err(Error::ProbabilitySum { sum });
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(size: usize) -> Result<Self> {
        Self::new(vec![1.0 / size as f64; size])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    /// True when every prior is bit-for-bit equal.
    pub fn is_uniform(&self) -> bool {
        self.probs.iter().all(|&p| p == self.probs[0])
    }

    /// `max_{a,b} p_a / p_b`.
    pub fn max_ratio(&self) -> f64 {
        let (lo, hi) = self
            .probs
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &p| (lo.min(p), hi.max(p)));
        hi / lo
    }
}

/// One-to-one assignment of `m`-bit binary labels to the points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    bits: usize,
    labels: Vec<u64>,
}

impl Labeling {
    pub fn new(bits: usize, labels: Vec<u64>) -> Result<Self> {
        if bits == 0 || bits > 63 {
            return Err(Error::InvalidConfig(format!(
                "label length must be between 1 and 63 bits, got {bits}"
            )));
        }
        for (index, &l) in labels.iter().enumerate() {
            if l >> bits != 0 {
                return Err(Error::LabelLength {
                    index,
                    expected: bits,
                    found: 64 - l.leading_zeros() as usize,
                });
            }
        }
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if labels[i] == labels[j] {
                    return Err(Error::DuplicateLabel {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Labeling { bits, labels })
    }

    /// Parses labels written as strings of `0`/`1`, most significant bit first.
    pub fn from_strings<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let bits = labels.first().map_or(0, |s| s.as_ref().len());
        let mut out = Vec::with_capacity(labels.len());
        for (index, s) in labels.iter().enumerate() {
            let s = s.as_ref();
            if s.len() != bits {
                return Err(Error::LabelLength {
                    index,
                    expected: bits,
                    found: s.len(),
                });
            }
            let mut v = 0u64;
            for ch in s.chars() {
                v = match ch {
                    '0' => v << 1,
                    '1' => (v << 1) | 1,
                    _ => return Err(Error::LabelCharacter { index }),
                };
            }
            out.push(v);
        }
        Self::new(bits, out)
    }

    /// Natural binary labeling: point `i` gets the binary expansion of `i`.
    pub fn natural(bits: usize) -> Result<Self> {
        if bits == 0 || bits > 20 {
            return Err(Error::InvalidConfig(format!(
                "natural labeling supports 1..=20 bits, got {bits}"
            )));
        }
        Self::new(bits, (0..1u64 << bits).collect())
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> u64 {
        self.labels[i]
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.labels
            .iter()
            .map(|l| format!("{:0width$b}", l, width = self.bits))
            .collect()
    }

    /// Number of bit positions in which the labels of `i` and `j` differ.
    pub fn hamming(&self, i: usize, j: usize) -> Result<u32> {
        let size = self.labels.len();
        for index in [i, j] {
            if index >= size {
                return Err(Error::IndexOutOfRange { index, size });
            }
        }
        Ok((self.labels[i] ^ self.labels[j]).count_ones())
    }

    /// `d_H(i, j) / m`, for indices already known to be in range.
    pub(crate) fn normalized_hamming(&self, i: usize, j: usize) -> f64 {
        (self.labels[i] ^ self.labels[j]).count_ones() as f64 / self.bits as f64
    }
}

/// Pairwise distances and the minimum-Euclidean-distance (MED) structure.
#[derive(Debug, Clone, PartialEq)]
pub struct MedGraph {
    size: usize,
    dist: Vec<f64>,
    med: f64,
    med_pairs: Vec<(usize, usize)>,
    neighbor_counts: Vec<usize>,
}

impl MedGraph {
    pub fn new(constellation: &Constellation) -> Self {
        let size = constellation.len();
        let mut dist = vec![0.0; size * size];
        let mut med = f64::INFINITY;
        for i in 0..size {
            for j in (i + 1)..size {
                let d = constellation.distance(i, j);
                dist[i * size + j] = d;
                dist[j * size + i] = d;
                med = med.min(d);
            }
        }
        let cutoff = med * (1.0 + MED_RTOL);
        let mut med_pairs = Vec::new();
        let mut neighbor_counts = vec![0; size];
        for i in 0..size {
            for j in 0..size {
                if i != j && dist[i * size + j] <= cutoff {
                    med_pairs.push((i, j));
                    neighbor_counts[i] += 1;
                }
            }
        }
        MedGraph {
            size,
            dist,
            med,
            med_pairs,
            neighbor_counts,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.size + j]
    }

    /// Minimum Euclidean distance `d`.
    pub fn med(&self) -> f64 {
        self.med
    }

    /// Ordered pairs `(i, j)` at distance `d`, sorted `i`-major.
    pub fn med_pairs(&self) -> &[(usize, usize)] {
        &self.med_pairs
    }

    pub fn is_med_pair(&self, i: usize, j: usize) -> bool {
        i != j && self.distance(i, j) <= self.med * (1.0 + MED_RTOL)
    }

    /// `G_i`: number of MED neighbours of each point.
    pub fn neighbor_counts(&self) -> &[usize] {
        &self.neighbor_counts
    }
}

/// Computes the MED graph of a validated constellation.
pub fn med_graph(constellation: &Constellation) -> MedGraph {
    MedGraph::new(constellation)
}

/// A validated constellation, prior and optional labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    name: Option<String>,
    constellation: Constellation,
    distribution: Distribution,
    labeling: Option<Labeling>,
    graph: MedGraph,
}

impl Bundle {
    pub fn new(
        constellation: Constellation,
        distribution: Distribution,
        labeling: Option<Labeling>,
    ) -> Result<Self> {
        validate(constellation, distribution, labeling)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    pub fn distribution(&self) -> &Distribution {
        &self.distribution
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    pub fn require_labeling(&self) -> Result<&Labeling> {
        self.labeling.as_ref().ok_or(Error::MissingLabeling)
    }

    pub fn graph(&self) -> &MedGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.constellation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constellation.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.constellation.dim()
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.distribution.get(i)
    }

    pub fn average_energy(&self) -> f64 {
        average_energy(&self.constellation, &self.distribution)
    }

    /// Same geometry and priors with a different labeling.
    pub fn relabeled(&self, labeling: Option<Labeling>) -> Result<Self> {
        let b = validate(
            self.constellation.clone(),
            self.distribution.clone(),
            labeling,
        )?;
        Ok(Bundle {
            name: self.name.clone(),
            ..b
        })
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::SameIndex(i));
        }
        Ok(())
    }
}

/// Checks the joint invariants and builds a [`Bundle`].
pub fn validate(
    constellation: Constellation,
    distribution: Distribution,
    labeling: Option<Labeling>,
) -> Result<Bundle> {
    let size = constellation.len();
    if distribution.len() != size {
        return Err(Error::ProbabilityCount {
            expected: size,
            found: distribution.len(),
        });
    }
    if let Some(l) = &labeling {
        if !size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(size));
        }
        if l.len() != size {
            return Err(Error::LabelCount {
                expected: size,
                found: l.len(),
            });
        }
        let bits = size.trailing_zeros() as usize;
        if l.bits() != bits {
            return Err(Error::LabelLength {
                index: 0,
                expected: bits,
                found: l.bits(),
            });
        }
    }
    let graph = MedGraph::new(&constellation);
    Ok(Bundle {
        name: None,
        constellation,
        distribution,
        labeling,
        graph,
    })
}

/// `E_s = sum_i p_i ||x_i||^2`.
pub fn average_energy(constellation: &Constellation, distribution: &Distribution) -> f64 {
    constellation
        .points()
        .zip(distribution.probs())
        .map(|(x, p)| p * x.iter().map(|v| v * v).sum::<f64>())
        .sum()
}

/// Hamming distance between the labels of points `i` and `j`.
pub fn hamming(labeling: &Labeling, i: usize, j: usize) -> Result<u32> {
    labeling.hamming(i, j)
}
