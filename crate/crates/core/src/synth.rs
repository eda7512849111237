//! Deterministic synthetic feature streams.
//!
//! A stream is a run of segments. A static segment jitters around one
//! random unit vector; a burst segment is a normalized random walk with a
//! much larger step, so its frames spread far apart. Every draw comes from
//! a single [`SplitMix64`] stream and the transcendental functions are
//! evaluated with `libm`, so a spec produces the same bits everywhere.

use alloc::format;
use alloc::vec::Vec;

use crate::eval::{Anchor, AnchorSet};
use crate::geometry::{FeatureFrame, FeatureSequence};
use crate::{Error, Result};

pub const DEFAULT_JITTER: f64 = 0.01;
pub const DEFAULT_BURST_STEP: f64 = 0.2;
/// A burst's step is never smaller than this multiple of its jitter.
pub const MIN_STEP_RATIO: f64 = 10.0;

/// Vigna's splitmix64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller on two draws; the sine branch is unused.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64(); // (0, 1]
        let u2 = self.next_f64();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SegmentKind {
    Static,
    Burst,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SegmentSpec {
    pub length: usize,
    pub kind: SegmentKind,
    /// Per-coordinate standard deviation σ of the static jitter.
    #[cfg_attr(feature = "serde", serde(default = "default_jitter"))]
    pub jitter: f64,
    /// Per-coordinate standard deviation of a burst step; raised to
    /// `MIN_STEP_RATIO · jitter` when smaller.
    #[cfg_attr(feature = "serde", serde(default = "default_step"))]
    pub step: f64,
}

#[cfg(feature = "serde")]
fn default_jitter() -> f64 {
    DEFAULT_JITTER
}

#[cfg(feature = "serde")]
fn default_step() -> f64 {
    DEFAULT_BURST_STEP
}

impl SegmentSpec {
    pub fn new(length: usize, kind: SegmentKind) -> Self {
        Self { length, kind, jitter: DEFAULT_JITTER, step: DEFAULT_BURST_STEP }
    }

    fn effective_step(&self) -> f64 {
        self.step.max(MIN_STEP_RATIO * self.jitter)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StreamSpec {
    pub dim: usize,
    pub segments: Vec<SegmentSpec>,
    pub fps: f64,
    pub seed: u64,
}

impl StreamSpec {
    /// `count` equal static segments with the segment at `burst_index`
    /// replaced by a burst.
    pub fn with_burst(dim: usize, count: usize, segment_len: usize, burst_index: usize, seed: u64) -> Self {
        let segments = (0..count)
            .map(|k| {
                let kind = if k == burst_index { SegmentKind::Burst } else { SegmentKind::Static };
                SegmentSpec::new(segment_len, kind)
            })
            .collect();
        Self { dim, segments, fps: 1.0, seed }
    }

    pub fn total_frames(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn duration(&self) -> f64 {
        self.total_frames() as f64 / self.fps
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.segments.is_empty() {
            return Err(Error::InvalidConfig("stream needs at least one segment"));
        }
        if self.segments.iter().any(|s| s.length == 0) {
            return Err(Error::InvalidConfig("segment length must be ≥ 1"));
        }
        if self.segments.iter().any(|s| !(s.jitter >= 0.0 && s.jitter.is_finite())) {
            return Err(Error::InvalidConfig("jitter must be ≥ 0"));
        }
        if self.segments.iter().any(|s| !(s.step >= 0.0 && s.step.is_finite())) {
            return Err(Error::InvalidConfig("burst step must be ≥ 0"));
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(Error::InvalidConfig("fps must be > 0"));
        }
        Ok(())
    }
}

fn gaussian_vec(rng: &mut SplitMix64, dim: usize, scale: f64) -> Vec<f64> {
    (0..dim).map(|_| scale * rng.next_gaussian()).collect()
}

/// Normalizes in place; a vanishing vector is replaced by the first basis vector.
fn normalize(v: &mut [f64]) {
    let n = libm::sqrt(v.iter().map(|x| x * x).sum());
    if n > 1e-12 {
        v.iter_mut().for_each(|x| *x /= n);
    } else {
        v.iter_mut().enumerate().for_each(|(i, x)| *x = if i == 0 { 1.0 } else { 0.0 });
    }
}

fn random_unit(rng: &mut SplitMix64, dim: usize) -> Vec<f64> {
    let mut v = gaussian_vec(rng, dim, 1.0);
    normalize(&mut v);
    v
}

fn to_f32(v: &[f64]) -> Vec<f32> {
    v.iter().map(|&x| x as f32).collect()
}

/// Generates the frames and one anchor per segment start.
pub fn generate_stream(spec: &StreamSpec) -> Result<(FeatureSequence, AnchorSet)> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let mut frames = Vec::with_capacity(spec.total_frames());
    let mut anchors = Vec::with_capacity(spec.segments.len());
    let mut index = 0usize;
    let timestamp = |i: usize| i as f64 / spec.fps;

    for (k, seg) in spec.segments.iter().enumerate() {
        let label = match seg.kind {
            SegmentKind::Static => "static",
            SegmentKind::Burst => "burst",
        };
        anchors.push(Anchor::new(timestamp(index), format!("segment {k} ({label})")));
        let mut current = random_unit(&mut rng, spec.dim);
        for _ in 0..seg.length {
            let feature = match seg.kind {
                SegmentKind::Static => {
                    let mut v = gaussian_vec(&mut rng, spec.dim, seg.jitter);
                    v.iter_mut().zip(&current).for_each(|(x, b)| *x += b);
                    normalize(&mut v);
                    to_f32(&v)
                }
                SegmentKind::Burst => {
                    let out = to_f32(&current);
                    let step = gaussian_vec(&mut rng, spec.dim, seg.effective_step());
                    current.iter_mut().zip(&step).for_each(|(x, s)| *x += s);
                    normalize(&mut current);
                    out
                }
            };
            frames.push(FeatureFrame::new(timestamp(index) as f32, feature));
            index += 1;
        }
    }
    let seq = FeatureSequence::new(spec.dim, frames)?;
    let anchors = AnchorSet::new(anchors, spec.duration())?;
    Ok((seq, anchors))
}
