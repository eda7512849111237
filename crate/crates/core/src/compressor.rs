//! The end-to-end compressor: segment, score, allocate, reduce, concatenate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::allocator::{allocate, partition_stats};
use crate::exec::{Executor, Sequential};
use crate::geometry::{FeatureFrame, FeatureSequence};
use crate::merger::{reduce_cluster, MergeConfig, MergeTrace, DEFAULT_DELTA};
use crate::segmenter::{
    segment_with, SegmenterConfig, DEFAULT_CLUSTERS, DEFAULT_EXACT_THRESHOLD, DEFAULT_MAX_ITERS,
};
use crate::{Error, Result};

/// Default compressed length `N_p`.
pub const DEFAULT_TARGET_LEN: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompressionConfig {
    pub target_len: usize,
    pub num_clusters: usize,
    pub delta: f64,
    pub max_iters: usize,
    pub exact_threshold: usize,
}

impl Default for CompressionConfig {
    fn default() -> Self {
        Self {
            target_len: DEFAULT_TARGET_LEN,
            num_clusters: DEFAULT_CLUSTERS,
            delta: DEFAULT_DELTA,
            max_iters: DEFAULT_MAX_ITERS,
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
        }
    }
}

impl CompressionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.target_len == 0 {
            return Err(Error::InvalidConfig("target-len must be ≥ 1"));
        }
        if self.num_clusters == 0 {
            return Err(Error::InvalidConfig("clusters must be ≥ 1"));
        }
        self.merge_config().validate()?;
        self.segmenter_config(1).validate()
    }

    pub fn segmenter_config(&self, num_clusters: usize) -> SegmenterConfig {
        SegmenterConfig { num_clusters, max_iters: self.max_iters, exact_threshold: self.exact_threshold }
    }

    pub fn merge_config(&self) -> MergeConfig {
        MergeConfig { delta: self.delta }
    }
}

/// Everything the compressor decided, cluster by cluster.
///
/// In passthrough mode the per-cluster vectors are empty.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CompressionReport {
    pub input_len: usize,
    pub output_len: usize,
    pub passthrough: bool,
    pub boundaries: Vec<usize>,
    pub variances: Vec<f64>,
    pub motion_scores: Vec<f64>,
    pub r_origin: Vec<usize>,
    pub r_raw: Vec<usize>,
    pub r_final: Vec<usize>,
    pub traces: Vec<MergeTrace>,
}

impl CompressionReport {
    fn passthrough(len: usize) -> Self {
        Self {
            input_len: len,
            output_len: len,
            passthrough: true,
            boundaries: Vec::new(),
            variances: Vec::new(),
            motion_scores: Vec::new(),
            r_origin: Vec::new(),
            r_raw: Vec::new(),
            r_final: Vec::new(),
            traces: Vec::new(),
        }
    }
}

/// Compresses `seq` to `min(N_o, cfg.target_len)` frames.
pub fn compress(
    seq: &FeatureSequence,
    cfg: &CompressionConfig,
) -> Result<(FeatureSequence, CompressionReport)> {
    compress_with(seq, cfg, &Sequential)
}

/// [`compress`] with segment costs and per-cluster reduction dispatched
/// through `exec`. The result does not depend on the executor.
pub fn compress_with<E: Executor>(
    seq: &FeatureSequence,
    cfg: &CompressionConfig,
    exec: &E,
) -> Result<(FeatureSequence, CompressionReport)> {
    cfg.validate()?;
    let n_o = seq.len();
    let n_p = cfg.target_len;
    if n_o <= n_p {
        return Ok((seq.clone(), CompressionReport::passthrough(n_o)));
    }

    let clusters = cfg.num_clusters.min(n_p).min(n_o);
    let partition = segment_with(seq, &cfg.segmenter_config(clusters), exec)?;
    let stats = partition_stats(seq, &partition)?;
    let scores: Vec<f64> = stats.iter().map(|s| s.motion_score).collect();
    let sizes = partition.sizes();
    let allocation = allocate(&sizes, &scores, n_p)?;

    let ranges: Vec<_> = partition.clusters().collect();
    let merge_cfg = cfg.merge_config();
    let reduced = exec.map(ranges.len(), |k| {
        reduce_cluster(&seq.frames()[ranges[k].clone()], allocation.r_final[k], &merge_cfg)
    });

    let mut frames: Vec<FeatureFrame> = Vec::with_capacity(n_p);
    let mut traces = Vec::with_capacity(ranges.len());
    for r in reduced {
        let (kept, trace) = r?;
        frames.extend(kept);
        traces.push(trace);
    }
    let out = FeatureSequence::from_merged(seq.dim(), frames)?;
    let report = CompressionReport {
        input_len: n_o,
        output_len: out.len(),
        passthrough: false,
        boundaries: partition.boundaries().to_vec(),
        variances: stats.iter().map(|s| s.variance).collect(),
        motion_scores: scores,
        r_origin: allocation.r_origin,
        r_raw: allocation.r_raw,
        r_final: allocation.r_final,
        traces,
    };
    Ok((out, report))
}

/// `This video contains {N} frames sampled at {t1}, ..., {tN} seconds.`
/// with one decimal per timestamp.
pub fn format_timestamp_prompt(seq: &FeatureSequence) -> Result<String> {
    if seq.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut out = format!("This video contains {} frames sampled at ", seq.len());
    for (i, t) in seq.timestamps().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{:.1}", f64::from(t)).expect("writing to a String");
    }
    out.push_str(" seconds.");
    Ok(out)
}

/// Token count of a sliding-window aggregator over the compressed frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TokenBudget {
    pub window_len: usize,
    pub stride: usize,
    pub queries_per_window: usize,
    pub window_count: usize,
    pub total_tokens: usize,
}

/// `window_count = n_frames / stride` and `total_tokens = window_count · k_v`.
pub fn plan_token_budget(
    n_frames: usize,
    window_len: usize,
    stride: usize,
    queries_per_window: usize,
) -> Result<TokenBudget> {
    if window_len == 0 || stride == 0 {
        return Err(Error::InvalidConfig("window length and stride must be ≥ 1"));
    }
    if n_frames < window_len {
        return Err(Error::InvalidConfig("window longer than the frame sequence"));
    }
    if !n_frames.is_multiple_of(stride) {
        return Err(Error::IndivisibleStride { frames: n_frames, stride });
    }
    let window_count = n_frames / stride;
    Ok(TokenBudget {
        window_len,
        stride,
        queries_per_window,
        window_count,
        total_tokens: window_count * queries_per_window,
    })
}
