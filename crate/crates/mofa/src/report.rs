//! JSON documents emitted by the CLI. Field order is fixed by declaration
//! order; floats print as their shortest round-trip decimal.

use mofa_core::compressor::{CompressionReport, TokenBudget};
use mofa_core::eval::{EvalReport, MatchedPair};
use mofa_core::merger::MergeTrace;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct CompressJson<'a> {
    pub schema: u32,
    pub input_len: usize,
    pub output_len: usize,
    pub passthrough: bool,
    pub boundaries: &'a [usize],
    pub variances: &'a [f64],
    pub motion_scores: &'a [f64],
    pub r_origin: &'a [usize],
    pub r_raw: &'a [usize],
    pub r_final: &'a [usize],
    /// Merge count per cluster.
    pub merges: Vec<usize>,
    /// Discard count per cluster.
    pub discards: Vec<usize>,
    pub traces: &'a [MergeTrace],
    pub elapsed_ms: u64,
}

impl<'a> CompressJson<'a> {
    pub fn new(r: &'a CompressionReport, elapsed_ms: u64) -> Self {
        Self {
            schema: SCHEMA,
            input_len: r.input_len,
            output_len: r.output_len,
            passthrough: r.passthrough,
            boundaries: &r.boundaries,
            variances: &r.variances,
            motion_scores: &r.motion_scores,
            r_origin: &r.r_origin,
            r_raw: &r.r_raw,
            r_final: &r.r_final,
            merges: r.traces.iter().map(MergeTrace::merges).collect(),
            discards: r.traces.iter().map(MergeTrace::discards).collect(),
            traces: &r.traces,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SegmentJson {
    pub schema: u32,
    pub frame_count: usize,
    pub clusters: usize,
    pub boundaries: Vec<usize>,
    pub objective: f64,
}

#[derive(Debug, Serialize)]
pub struct EvalJson<'a> {
    pub schema: u32,
    pub duration: f64,
    pub expansion: f64,
    pub pred_count: usize,
    pub gt_count: usize,
    pub thresholds: &'a [f64],
    pub precision: &'a [f64],
    pub recall: &'a [f64],
    pub f1_threshold: f64,
    pub f1: f64,
    pub matches: &'a [MatchedPair],
}

impl<'a> EvalJson<'a> {
    pub fn new(r: &'a EvalReport, duration: f64, expansion: f64, pred_count: usize, gt_count: usize) -> Self {
        Self {
            schema: SCHEMA,
            duration,
            expansion,
            pred_count,
            gt_count,
            thresholds: &r.thresholds,
            precision: &r.precision,
            recall: &r.recall,
            f1_threshold: r.f1_threshold,
            f1: r.f1,
            matches: &r.matches,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InspectJson {
    pub schema: u32,
    pub frame_count: usize,
    pub dim: usize,
    pub first_timestamp: Option<f32>,
    pub last_timestamp: Option<f32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<ManifestSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub token_budget: Option<TokenBudget>,
}

#[derive(Debug, Serialize)]
pub struct ManifestSummary {
    pub version: String,
    pub duration: f64,
    pub fps: f64,
    pub anchor_counts: Vec<usize>,
}
