//! Domain types and the numeric kernels shared by every stage.
//!
//! Features are stored as `f32`; every reduction accumulates in `f64`.
//! Set variance and centroids are taken over L2-normalized members, so a
//! frame's scale never affects clustering, scoring or merge decisions.

use alloc::vec::Vec;
use core::ops::Range;

use crate::{Error, Result};

/// Rows whose Euclidean norm does not exceed this are rejected.
pub const MIN_NORM: f64 = 1e-8;

/// One timestamped feature vector.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeatureFrame {
    /// Seconds from the start of the stream.
    pub timestamp: f32,
    pub feature: Vec<f32>,
}

impl FeatureFrame {
    pub fn new(timestamp: f32, feature: Vec<f32>) -> Self {
        Self { timestamp, feature }
    }

    pub fn dim(&self) -> usize {
        self.feature.len()
    }
}

/// An ordered sequence of frames sharing one dimension.
///
/// Construction through [`FeatureSequence::new`] enforces ingestion
/// invariants: finite components, norms above [`MIN_NORM`], non-negative
/// and strictly increasing timestamps. Sequences produced by merging may
/// carry equal neighbouring timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSequence {
    dim: usize,
    frames: Vec<FeatureFrame>,
}

impl FeatureSequence {
    pub fn new(dim: usize, frames: Vec<FeatureFrame>) -> Result<Self> {
        let seq = Self::validated(dim, frames)?;
        for (i, w) in seq.frames.windows(2).enumerate() {
            if w[1].timestamp <= w[0].timestamp {
                return Err(Error::NonIncreasingTimestamps { index: i + 1 });
            }
        }
        Ok(seq)
    }

    /// Like [`FeatureSequence::new`] but only requires nondecreasing timestamps.
    pub fn from_merged(dim: usize, frames: Vec<FeatureFrame>) -> Result<Self> {
        let seq = Self::validated(dim, frames)?;
        for (i, w) in seq.frames.windows(2).enumerate() {
            if w[1].timestamp < w[0].timestamp {
                return Err(Error::NonIncreasingTimestamps { index: i + 1 });
            }
        }
        Ok(seq)
    }

    fn validated(dim: usize, frames: Vec<FeatureFrame>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (index, frame) in frames.iter().enumerate() {
            if frame.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: frame.dim() });
            }
            if !frame.timestamp.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if frame.timestamp < 0.0 {
                return Err(Error::NegativeTimestamp { index });
            }
            check_vector(&frame.feature, index)?;
        }
        Ok(Self { dim, frames })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn frames(&self) -> &[FeatureFrame] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<FeatureFrame> {
        self.frames
    }

    pub fn timestamps(&self) -> impl Iterator<Item = f32> + '_ {
        self.frames.iter().map(|f| f.timestamp)
    }
}

/// Contiguous split of `0..n` into clusters `[b_k, b_{k+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Partition {
    boundaries: Vec<usize>,
}

impl Partition {
    /// Validates `boundaries` against a sequence of `n` frames.
    pub fn new(boundaries: Vec<usize>, n: usize) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::InvalidPartition("fewer than two boundaries"));
        }
        if boundaries[0] != 0 {
            return Err(Error::InvalidPartition("first boundary must be 0"));
        }
        if *boundaries.last().unwrap() != n {
            return Err(Error::InvalidPartition("last boundary must equal the frame count"));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition("boundaries must be strictly increasing"));
        }
        Ok(Self { boundaries })
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Number of clusters `U`.
    pub fn num_clusters(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// Number of frames covered.
    pub fn len(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clusters(&self) -> impl ExactSizeIterator<Item = Range<usize>> + '_ {
        self.boundaries.windows(2).map(|w| w[0]..w[1])
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters().map(|r| r.len()).collect()
    }

    fn check_against(&self, seq: &FeatureSequence) -> Result<()> {
        if self.len() != seq.len() {
            return Err(Error::InvalidPartition("partition does not cover the sequence"));
        }
        Ok(())
    }
}

/// Per-cluster summary used for motion scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    /// Component-wise mean of the L2-normalized members.
    pub centroid: Vec<f64>,
    pub variance: f64,
    /// `variance / max variance` over all clusters, in `[0, 1]`.
    pub motion_score: f64,
}

fn check_vector(v: &[f32], index: usize) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if norm_f32(v) <= MIN_NORM {
        return Err(Error::ZeroNorm { index });
    }
    Ok(())
}

pub(crate) fn norm_f32(v: &[f32]) -> f64 {
    libm::sqrt(v.iter().map(|&x| f64::from(x) * f64::from(x)).sum())
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// L2-normalized copy of `v` in `f64`.
pub(crate) fn unit(v: &[f32]) -> Vec<f64> {
    let n = norm_f32(v);
    v.iter().map(|&x| f64::from(x) / n).collect()
}

/// Cosine similarity of two valid vectors, clamped to `[-1, 1]`.
pub fn cosine_sim(a: &[f32], b: &[f32]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    check_vector(a, 0)?;
    check_vector(b, 1)?;
    Ok(cosine_unchecked(a, b))
}

pub(crate) fn cosine_unchecked(a: &[f32], b: &[f32]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(&x, &y)| f64::from(x) * f64::from(y)).sum();
    (d / (norm_f32(a) * norm_f32(b))).clamp(-1.0, 1.0)
}

/// Variance of a vector set: mean squared distance of the L2-normalized
/// members from their centroid.
///
/// Lies in `[0, 1]`. For two members it equals `(1 - cosine_sim) / 2`.
pub fn set_variance<'a, I>(vectors: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a [f32]>,
{
    let mut units: Vec<Vec<f64>> = Vec::new();
    for (index, v) in vectors.into_iter().enumerate() {
        if let Some(first) = units.first() {
            if v.len() != first.len() {
                return Err(Error::DimensionMismatch { expected: first.len(), found: v.len() });
            }
        }
        check_vector(v, index)?;
        units.push(unit(v));
    }
    if units.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(variance_of_units(&units))
}

pub(crate) fn variance_of_units(units: &[Vec<f64>]) -> f64 {
    let c = centroid(units.iter().map(Vec::as_slice), units[0].len());
    let total: f64 =
        units.iter().map(|u| u.iter().zip(&c).map(|(x, m)| (x - m) * (x - m)).sum::<f64>()).sum();
    (total / units.len() as f64).max(0.0)
}

pub(crate) fn centroid<'a>(members: impl Iterator<Item = &'a [f64]>, dim: usize) -> Vec<f64> {
    let mut sum = alloc::vec![0.0; dim];
    let mut count = 0usize;
    for m in members {
        for (s, x) in sum.iter_mut().zip(m) {
            *s += x;
        }
        count += 1;
    }
    for s in &mut sum {
        *s /= count as f64;
    }
    sum
}

/// Statistics of the cluster `frames` (all assumed valid).
pub fn cluster_stats(frames: &[FeatureFrame]) -> Result<ClusterStats> {
    if frames.is_empty() {
        return Err(Error::EmptySet);
    }
    let units: Vec<Vec<f64>> = frames.iter().map(|f| unit(&f.feature)).collect();
    let centroid = centroid(units.iter().map(Vec::as_slice), frames[0].dim());
    Ok(ClusterStats { centroid, variance: variance_of_units(&units), motion_score: 0.0 })
}

/// Total cosine distance of every frame to its cluster centroid:
/// `Σ_k Σ_{t ∈ B_k} (1 - sim(f_t, c_k))`.
///
/// A centroid of zero norm (members cancel exactly) has similarity 0 to
/// every member.
pub fn cluster_objective(seq: &FeatureSequence, p: &Partition) -> Result<f64> {
    p.check_against(seq)?;
    let units: Vec<Vec<f64>> = seq.frames().iter().map(|f| unit(&f.feature)).collect();
    let mut total = 0.0;
    for range in p.clusters() {
        let members = &units[range];
        let c = centroid(members.iter().map(Vec::as_slice), seq.dim());
        let cn = norm(&c);
        for u in members {
            let sim = if cn > 0.0 { (dot(u, &c) / cn).clamp(-1.0, 1.0) } else { 0.0 };
            total += 1.0 - sim;
        }
    }
    Ok(total)
}
