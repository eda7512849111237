//! Within-cluster reduction.
//!
//! Each step picks the adjacent pair with the highest cosine similarity
//! (ties to the earliest pair). When the pair's motion penalty
//! `Var({a, b}) = (1 - sim) / 2` exceeds `delta`, one frame of the pair is
//! dropped; otherwise the two are replaced by their plain average. Nested
//! merges therefore weight later constituents more heavily.

use alloc::vec::Vec;

use crate::geometry::{cosine_unchecked, norm_f32, set_variance, FeatureFrame, MIN_NORM};
use crate::{Error, Result};

/// Default motion-penalty threshold.
pub const DEFAULT_DELTA: f64 = 0.3;

/// Similarities of the two outer neighbours closer than this count as tied.
const DISCARD_TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MergeConfig {
    /// Pairs with penalty strictly above this are not averaged.
    pub delta: f64,
}

impl Default for MergeConfig {
    fn default() -> Self {
        Self { delta: DEFAULT_DELTA }
    }
}

impl MergeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta.is_nan() || self.delta < 0.0 {
            return Err(Error::InvalidConfig("delta must be ≥ 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "lowercase"))]
pub enum MergeKind {
    Merged,
    Discarded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MergeEvent {
    pub kind: MergeKind,
    /// Index of the pair's first frame in the list as it stood at this step.
    pub pair_index: usize,
    pub penalty: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct MergeTrace {
    pub events: Vec<MergeEvent>,
}

impl MergeTrace {
    pub fn merges(&self) -> usize {
        self.events.iter().filter(|e| e.kind == MergeKind::Merged).count()
    }

    pub fn discards(&self) -> usize {
        self.events.iter().filter(|e| e.kind == MergeKind::Discarded).count()
    }
}

/// Motion penalty of an adjacent pair, in `[0, 1]`.
pub fn pair_penalty(a: &FeatureFrame, b: &FeatureFrame) -> Result<f64> {
    set_variance([a.feature.as_slice(), b.feature.as_slice()])
}

/// Averages features and timestamps of two frames.
pub fn merge_pair(a: &FeatureFrame, b: &FeatureFrame) -> Result<FeatureFrame> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    if a.timestamp > b.timestamp {
        return Err(Error::UnorderedPair);
    }
    let feature: Vec<f32> = a
        .feature
        .iter()
        .zip(&b.feature)
        .map(|(&x, &y)| ((f64::from(x) + f64::from(y)) / 2.0) as f32)
        .collect();
    if norm_f32(&feature) <= MIN_NORM {
        return Err(Error::DegenerateMerge);
    }
    let timestamp = ((f64::from(a.timestamp) + f64::from(b.timestamp)) / 2.0) as f32;
    Ok(FeatureFrame { timestamp, feature })
}

/// Reduces `frames` to exactly `target` frames.
///
/// When a pair is dropped rather than merged, the frame more similar to
/// its other neighbour goes; if either frame lacks another neighbour, or
/// the two similarities tie, the later frame goes. A merge whose average
/// would have zero norm is recorded as a discard of the later frame.
pub fn reduce_cluster(
    frames: &[FeatureFrame],
    target: usize,
    cfg: &MergeConfig,
) -> Result<(Vec<FeatureFrame>, MergeTrace)> {
    cfg.validate()?;
    if target == 0 || target > frames.len() {
        return Err(Error::InvalidTarget { target, len: frames.len() });
    }
    if let Some(first) = frames.first() {
        if let Some(bad) = frames.iter().find(|f| f.dim() != first.dim()) {
            return Err(Error::DimensionMismatch { expected: first.dim(), found: bad.dim() });
        }
    }
    let mut frames = frames.to_vec();
    let mut trace = MergeTrace::default();
    let pair_sim = |f: &[FeatureFrame], i: usize| cosine_unchecked(&f[i].feature, &f[i + 1].feature);
    // sims[i] = sim(frames[i], frames[i + 1])
    let mut sims: Vec<f64> = (0..frames.len().saturating_sub(1)).map(|i| pair_sim(&frames, i)).collect();

    while frames.len() > target {
        let mut i = 0;
        for (j, &s) in sims.iter().enumerate().skip(1) {
            if s > sims[i] {
                i = j;
            }
        }
        let penalty = pair_penalty(&frames[i], &frames[i + 1])?;
        let merged = if penalty > cfg.delta {
            None
        } else {
            match merge_pair(&frames[i], &frames[i + 1]) {
                Ok(m) => Some(m),
                Err(Error::DegenerateMerge) => None,
                Err(e) => return Err(e),
            }
        };
        match merged {
            Some(m) => {
                frames[i] = m;
                frames.remove(i + 1);
                sims.remove(i);
                trace.events.push(MergeEvent { kind: MergeKind::Merged, pair_index: i, penalty });
                if i > 0 {
                    sims[i - 1] = pair_sim(&frames, i - 1);
                }
                if i < sims.len() {
                    sims[i] = pair_sim(&frames, i);
                }
            }
            None => {
                let drop = discard_choice(&sims, i);
                frames.remove(drop);
                // Removing frame `drop` fuses pairs drop-1 and drop.
                if drop < sims.len() {
                    sims.remove(drop);
                } else {
                    sims.pop();
                }
                if drop > 0 && drop - 1 < sims.len() {
                    sims[drop - 1] = pair_sim(&frames, drop - 1);
                }
                trace.events.push(MergeEvent { kind: MergeKind::Discarded, pair_index: i, penalty });
            }
        }
    }
    Ok((frames, trace))
}

/// Which frame of pair `(i, i + 1)` to drop.
fn discard_choice(sims: &[f64], i: usize) -> usize {
    let later = i + 1;
    if i == 0 || i + 1 >= sims.len() {
        return later;
    }
    let (left, right) = (sims[i - 1], sims[i + 1]);
    if (left - right).abs() <= DISCARD_TIE_EPS || right > left {
        later
    } else {
        i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn frame(t: f32, v: &[f32]) -> FeatureFrame {
        FeatureFrame::new(t, v.to_vec())
    }

    #[test]
    fn penalty_examples() {
        let a = frame(0.0, &[0.4, 0.1]);
        assert!(pair_penalty(&a, &a).unwrap().abs() < 1e-12);
        let p = pair_penalty(&frame(0.0, &[1.0, 0.0]), &frame(1.0, &[0.0, 1.0])).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let c = 0.4f64;
        let b = frame(1.0, &[c as f32, libm::sqrt(1.0 - c * c) as f32]);
        let p = pair_penalty(&frame(0.0, &[1.0, 0.0]), &b).unwrap();
        assert!((p - 0.3).abs() < 1e-7);
    }

    #[test]
    fn merge_examples() {
        let m = merge_pair(&frame(2.0, &[1.0, 0.0]), &frame(4.0, &[1.0, 0.0])).unwrap();
        assert_eq!(m, frame(3.0, &[1.0, 0.0]));
        let m = merge_pair(&frame(0.0, &[2.0, 0.0]), &frame(10.0, &[0.0, 2.0])).unwrap();
        assert_eq!(m, frame(5.0, &[1.0, 1.0]));
        let m = merge_pair(&m, &frame(7.0, &[1.0, 0.0])).unwrap();
        assert_eq!(m.timestamp, 6.0);
        assert_eq!(
            merge_pair(&frame(0.0, &[1.0]), &frame(1.0, &[1.0, 0.0])),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            merge_pair(&frame(0.0, &[1.0, 0.0]), &frame(1.0, &[-1.0, 0.0])),
            Err(Error::DegenerateMerge)
        );
    }

    #[test]
    fn reduce_identical_frames() {
        let frames = vec![frame(0.0, &[1.0, 0.0]), frame(2.0, &[1.0, 0.0]), frame(4.0, &[1.0, 0.0])];
        let (out, trace) = reduce_cluster(&frames, 1, &MergeConfig::default()).unwrap();
        assert_eq!(out, vec![frame(2.5, &[1.0, 0.0])]);
        assert_eq!(trace.merges(), 2);
        assert_eq!(trace.events[0].pair_index, 0);
        assert_eq!(trace.events[1].pair_index, 0);
    }

    #[test]
    fn reduce_to_same_length_is_identity() {
        let frames = vec![frame(0.0, &[1.0, 0.0]), frame(2.0, &[0.0, 1.0])];
        let (out, trace) = reduce_cluster(&frames, 2, &MergeConfig::default()).unwrap();
        assert_eq!(out, frames);
        assert!(trace.events.is_empty());
    }

    #[test]
    fn high_penalty_discards_later_frame() {
        let frames = vec![frame(0.0, &[1.0, 0.0]), frame(2.0, &[0.0, 1.0])];
        let (out, trace) = reduce_cluster(&frames, 1, &MergeConfig::default()).unwrap();
        assert_eq!(out, vec![frame(0.0, &[1.0, 0.0])]);
        assert_eq!(trace.discards(), 1);
        assert!((trace.events[0].penalty - 0.5).abs() < 1e-12);
    }

    #[test]
    fn discard_drops_frame_closer_to_its_outer_neighbour() {
        // Pair (1, 2) is the most similar. Frame 1 resembles frame 0 more than
        // frame 2 resembles frame 3, so frame 1 goes.
        let frames = vec![
            frame(0.0, &[1.0, 0.2, 0.0]),
            frame(1.0, &[1.0, 0.1, 0.0]),
            frame(2.0, &[1.0, 0.05, 0.0]),
            frame(3.0, &[0.0, 0.0, 1.0]),
        ];
        let (out, trace) = reduce_cluster(&frames, 3, &MergeConfig { delta: 0.0 }).unwrap();
        assert_eq!(trace.events.len(), 1);
        assert_eq!(trace.events[0].kind, MergeKind::Discarded);
        assert_eq!(trace.events[0].pair_index, 1);
        assert_eq!(out, vec![frames[0].clone(), frames[2].clone(), frames[3].clone()]);

        // Mirrored: now the later frame of the pair is the redundant one.
        let frames = vec![
            frame(0.0, &[0.0, 0.0, 1.0]),
            frame(1.0, &[1.0, 0.05, 0.0]),
            frame(2.0, &[1.0, 0.1, 0.0]),
            frame(3.0, &[1.0, 0.2, 0.0]),
        ];
        let (out, _) = reduce_cluster(&frames, 3, &MergeConfig { delta: 0.0 }).unwrap();
        assert_eq!(out, vec![frames[0].clone(), frames[1].clone(), frames[3].clone()]);
    }

    #[test]
    fn degenerate_merge_falls_back_to_discard() {
        let frames = vec![frame(0.0, &[1.0, 0.0]), frame(1.0, &[-1.0, 0.0])];
        let cfg = MergeConfig { delta: f64::INFINITY };
        let (out, trace) = reduce_cluster(&frames, 1, &cfg).unwrap();
        assert_eq!(out, vec![frame(0.0, &[1.0, 0.0])]);
        assert_eq!(trace.discards(), 1);
    }

    #[test]
    fn invalid_targets() {
        let frames = vec![frame(0.0, &[1.0, 0.0])];
        let cfg = MergeConfig::default();
        assert_eq!(reduce_cluster(&frames, 0, &cfg), Err(Error::InvalidTarget { target: 0, len: 1 }));
        assert_eq!(reduce_cluster(&frames, 2, &cfg), Err(Error::InvalidTarget { target: 2, len: 1 }));
        assert!(reduce_cluster(&frames, 1, &MergeConfig { delta: -0.1 }).is_err());
    }
}
