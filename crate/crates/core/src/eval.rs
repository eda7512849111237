//! Temporal scoring of single-timestamp anchors.
//!
//! Every predicted and ground-truth anchor is widened into a window of
//! `± expansion` seconds, clamped to `[0, duration]`. Predictions and ground
//! truth are paired one-to-one greedily by descending window IoU, and each
//! threshold counts the pairs whose IoU reaches it.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

pub const DEFAULT_EXPANSION: f64 = 5.0;
pub const DEFAULT_THRESHOLDS: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
pub const DEFAULT_F1_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Anchor {
    /// Seconds.
    #[cfg_attr(feature = "serde", serde(rename = "t"))]
    pub timestamp: f64,
    pub caption: String,
}

impl Anchor {
    pub fn new(timestamp: f64, caption: impl Into<String>) -> Self {
        Self { timestamp, caption: caption.into() }
    }
}

/// Anchors of one video, in any order.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorSet {
    items: Vec<Anchor>,
    duration: f64,
}

impl AnchorSet {
    pub fn new(items: Vec<Anchor>, duration: f64) -> Result<Self> {
        if !duration.is_finite() || duration < 0.0 {
            return Err(Error::InvalidConfig("duration must be a finite non-negative number"));
        }
        for a in &items {
            if !(a.timestamp >= 0.0 && a.timestamp <= duration) {
                return Err(Error::AnchorOutOfRange { timestamp: a.timestamp, duration });
            }
        }
        Ok(Self { items, duration })
    }

    pub fn from_timestamps(ts: &[f64], duration: f64) -> Result<Self> {
        Self::new(ts.iter().map(|&t| Anchor::new(t, String::new())).collect(), duration)
    }

    pub fn items(&self) -> &[Anchor] {
        &self.items
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalConfig {
    /// Seconds added on each side of an anchor.
    pub expansion: f64,
    pub thresholds: Vec<f64>,
    pub f1_threshold: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            expansion: DEFAULT_EXPANSION,
            thresholds: DEFAULT_THRESHOLDS.to_vec(),
            f1_threshold: DEFAULT_F1_THRESHOLD,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.expansion > 0.0 && self.expansion.is_finite()) {
            return Err(Error::InvalidConfig("expansion must be > 0"));
        }
        let in_range = |t: &f64| *t > 0.0 && *t <= 1.0;
        if !self.thresholds.iter().all(in_range) || !in_range(&self.f1_threshold) {
            return Err(Error::InvalidConfig("IoU thresholds must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo > hi || lo.is_nan() || hi.is_nan() {
            return Err(Error::InvertedInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MatchedPair {
    pub pred: usize,
    pub gt: usize,
    pub iou: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EvalReport {
    pub thresholds: Vec<f64>,
    /// Aligned with `thresholds`.
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f1_threshold: f64,
    pub f1: f64,
    pub matches: Vec<MatchedPair>,
}

/// `[max(0, t - expansion), min(duration, t + expansion)]`.
pub fn anchor_window(t: f64, cfg: &EvalConfig, duration: f64) -> Result<Interval> {
    if !(t >= 0.0 && t <= duration) {
        return Err(Error::AnchorOutOfRange { timestamp: t, duration });
    }
    Interval::new((t - cfg.expansion).max(0.0), (t + cfg.expansion).min(duration))
}

/// Length of the intersection over length of the union.
///
/// Two zero-length intervals score 1 when identical and 0 otherwise.
pub fn interval_iou(a: Interval, b: Interval) -> Result<f64> {
    Interval::new(a.lo, a.hi)?;
    Interval::new(b.lo, b.hi)?;
    let inter = (a.hi.min(b.hi) - a.lo.max(b.lo)).max(0.0);
    let union = a.len() + b.len() - inter;
    if union <= 0.0 {
        return Ok(if a == b { 1.0 } else { 0.0 });
    }
    Ok((inter / union).clamp(0.0, 1.0))
}

/// Scores `preds` against `gts`.
///
/// Pairs with positive IoU are matched greedily in descending IoU order,
/// ties broken by earlier prediction timestamp, then earlier ground-truth
/// timestamp. Empty denominators give rates of 0.
pub fn evaluate(preds: &AnchorSet, gts: &AnchorSet, cfg: &EvalConfig) -> Result<EvalReport> {
    cfg.validate()?;
    if preds.duration != gts.duration {
        return Err(Error::DurationMismatch);
    }
    let duration = preds.duration;
    let windows = |set: &AnchorSet| {
        set.items.iter().map(|a| anchor_window(a.timestamp, cfg, duration)).collect::<Result<Vec<_>>>()
    };
    let (pw, gw) = (windows(preds)?, windows(gts)?);

    let mut candidates = Vec::new();
    for (p, &a) in pw.iter().enumerate() {
        for (g, &b) in gw.iter().enumerate() {
            let iou = interval_iou(a, b)?;
            if iou > 0.0 {
                candidates.push(MatchedPair { pred: p, gt: g, iou });
            }
        }
    }
    let ts = |set: &AnchorSet, i: usize| set.items[i].timestamp;
    candidates.sort_by(|x, y| {
        y.iou
            .partial_cmp(&x.iou)
            .unwrap_or(Ordering::Equal)
            .then(ts(preds, x.pred).total_cmp(&ts(preds, y.pred)))
            .then(ts(gts, x.gt).total_cmp(&ts(gts, y.gt)))
            .then(x.pred.cmp(&y.pred))
            .then(x.gt.cmp(&y.gt))
    });
    let mut pred_used = vec![false; preds.len()];
    let mut gt_used = vec![false; gts.len()];
    let mut matches = Vec::new();
    for c in candidates {
        if !pred_used[c.pred] && !gt_used[c.gt] {
            pred_used[c.pred] = true;
            gt_used[c.gt] = true;
            matches.push(c);
        }
    }

    let rate = |hits: usize, total: usize| if total == 0 { 0.0 } else { hits as f64 / total as f64 };
    let hits = |theta: f64| matches.iter().filter(|m| m.iou >= theta).count();
    let precision = cfg.thresholds.iter().map(|&t| rate(hits(t), preds.len())).collect();
    let recall = cfg.thresholds.iter().map(|&t| rate(hits(t), gts.len())).collect();
    let (p, r) = (rate(hits(cfg.f1_threshold), preds.len()), rate(hits(cfg.f1_threshold), gts.len()));
    let f1 = if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 };

    Ok(EvalReport {
        thresholds: cfg.thresholds.clone(),
        precision,
        recall,
        f1_threshold: cfg.f1_threshold,
        f1,
        matches,
    })
}
