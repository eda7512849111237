//! `mofa` subcommands.
//!
//! Exit codes: 0 on success, 1 when input validation or IO fails, 2 on a
//! usage error (unknown subcommand, bad flag).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mofa_core::compressor::{compress_with, format_timestamp_prompt, plan_token_budget};
use mofa_core::eval::{evaluate, AnchorSet, DEFAULT_F1_THRESHOLD};
use mofa_core::geometry::cluster_objective;
use mofa_core::posenc::{extend_interpolate, extend_periodic};
use mofa_core::segmenter::{segment_with, SegmenterConfig, DEFAULT_EXACT_THRESHOLD, DEFAULT_MAX_ITERS};
use mofa_core::synth::{generate_stream, StreamSpec};
use mofa_core::{CompressionConfig, EvalConfig};
use serde::Serialize;

use crate::anchors::{read_anchor_lines, write_anchor_file};
use crate::features::{read_feature_file, read_table_file, write_feature_file, write_table_file};
use crate::manifest::{Manifest, MANIFEST_VERSION};
use crate::parallel::ThreadedExecutor;
use crate::report::{CompressJson, EvalJson, InspectJson, ManifestSummary, SegmentJson, SCHEMA};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mofa", version, about = "Motion-aware compression of timestamped feature sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compress a feature file to a fixed number of frames.
    Compress(CompressArgs),
    /// Print the contiguous clustering of a feature file.
    Segment(SegmentArgs),
    /// Score predicted anchors against ground truth.
    Eval(EvalArgs),
    /// Generate a synthetic feature stream with ground-truth anchors.
    Synth(SynthArgs),
    /// Extend a positional-embedding table.
    Posenc(PosencArgs),
    /// Describe a feature file or manifest.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
struct CompressArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = mofa_core::compressor::DEFAULT_TARGET_LEN)]
    target_len: usize,
    #[arg(long, default_value_t = mofa_core::segmenter::DEFAULT_CLUSTERS)]
    clusters: usize,
    #[arg(long, default_value_t = mofa_core::merger::DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_THRESHOLD)]
    exact_threshold: usize,
    /// Print the timestamp prompt for the compressed frames.
    #[arg(long)]
    prompt: bool,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = mofa_core::segmenter::DEFAULT_CLUSTERS)]
    clusters: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_THRESHOLD)]
    exact_threshold: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("length").required(true).args(["duration", "manifest"]))]
struct EvalArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    gt: PathBuf,
    /// Video length in seconds.
    #[arg(long)]
    duration: Option<f64>,
    /// Take the duration from a manifest.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = mofa_core::eval::DEFAULT_EXPANSION)]
    expansion: f64,
    #[arg(long, value_delimiter = ',', default_values_t = mofa_core::eval::DEFAULT_THRESHOLDS)]
    thresholds: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_F1_THRESHOLD)]
    f1_threshold: f64,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out_features: PathBuf,
    #[arg(long)]
    out_anchors: PathBuf,
    /// Also write a manifest describing the outputs.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PosencMode {
    Periodic,
    Interpolate,
}

#[derive(Debug, Args)]
struct PosencArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = PosencMode::Periodic)]
    mode: PosencMode,
    #[arg(long)]
    len: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "manifest"]))]
struct InspectArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Sliding-window length for a token-budget estimate.
    #[arg(long, requires_all = ["stride", "queries"])]
    window: Option<usize>,
    #[arg(long, requires = "window")]
    stride: Option<usize>,
    #[arg(long, requires = "window")]
    queries: Option<usize>,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Compress(a) => compress_cmd(a, out),
        Command::Segment(a) => segment_cmd(a, out),
        Command::Eval(a) => eval_cmd(a, out),
        Command::Synth(a) => synth_cmd(a),
        Command::Posenc(a) => posenc_cmd(a),
        Command::Inspect(a) => inspect_cmd(a, out),
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn compress_cmd(a: CompressArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = CompressionConfig {
        target_len: a.target_len,
        num_clusters: a.clusters,
        delta: a.delta,
        max_iters: a.max_iters,
        exact_threshold: a.exact_threshold,
    };
    cfg.validate()?;
    let exec = ThreadedExecutor::from_env()?;
    let seq = read_feature_file(&a.input)?;
    let start = Instant::now();
    let (compressed, report) = compress_with(&seq, &cfg, &exec)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    write_feature_file(&compressed, &a.out)?;
    if let Some(path) = &a.report {
        let text = serde_json::to_string(&CompressJson::new(&report, elapsed_ms))?;
        std::fs::write(path, text + "\n").map_err(Error::io(path))?;
    }
    if a.prompt {
        writeln!(out, "{}", format_timestamp_prompt(&compressed)?)?;
    }
    Ok(())
}

fn segment_cmd(a: SegmentArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = SegmenterConfig {
        num_clusters: a.clusters,
        max_iters: a.max_iters,
        exact_threshold: a.exact_threshold,
    };
    let exec = ThreadedExecutor::from_env()?;
    let seq = read_feature_file(&a.input)?;
    let p = segment_with(&seq, &cfg, &exec)?;
    let objective = cluster_objective(&seq, &p)?;
    print_json(
        out,
        &SegmentJson {
            schema: SCHEMA,
            frame_count: seq.len(),
            clusters: p.num_clusters(),
            boundaries: p.boundaries().to_vec(),
            objective,
        },
    )
}

fn eval_cmd(a: EvalArgs, out: &mut dyn Write) -> Result<()> {
    let duration = match (a.duration, &a.manifest) {
        (Some(d), _) => d,
        (None, Some(m)) => Manifest::load(m)?.duration,
        (None, None) => unreachable!("clap enforces one of --duration/--manifest"),
    };
    let cfg = EvalConfig { expansion: a.expansion, thresholds: a.thresholds, f1_threshold: a.f1_threshold };
    let preds = AnchorSet::new(read_anchor_lines(&a.pred)?, duration)?;
    let gts = AnchorSet::new(read_anchor_lines(&a.gt)?, duration)?;
    let report = evaluate(&preds, &gts, &cfg)?;
    print_json(out, &EvalJson::new(&report, duration, cfg.expansion, preds.len(), gts.len()))
}

fn synth_cmd(a: SynthArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.spec).map_err(Error::io(&a.spec))?;
    let spec: StreamSpec = serde_json::from_str(&text)?;
    let (seq, anchors) = generate_stream(&spec)?;
    write_feature_file(&seq, &a.out_features)?;
    write_anchor_file(&anchors, &a.out_anchors)?;
    if let Some(path) = &a.manifest {
        let base = path.parent().unwrap_or(std::path::Path::new(""));
        let relative = |p: &PathBuf| p.strip_prefix(base).map(PathBuf::from).unwrap_or_else(|_| p.clone());
        Manifest {
            version: MANIFEST_VERSION.into(),
            duration: spec.duration(),
            fps: spec.fps,
            dim: spec.dim,
            frame_count: seq.len(),
            features: relative(&a.out_features),
            anchors: vec![relative(&a.out_anchors)],
        }
        .save(path)?;
    }
    Ok(())
}

fn posenc_cmd(a: PosencArgs) -> Result<()> {
    let table = read_table_file(&a.input)?;
    let extended = match a.mode {
        PosencMode::Periodic => extend_periodic(&table, a.len)?,
        PosencMode::Interpolate => extend_interpolate(&table, a.len)?,
    };
    write_table_file(&extended, &a.out)
}

fn inspect_cmd(a: InspectArgs, out: &mut dyn Write) -> Result<()> {
    let (seq, manifest) = match (&a.input, &a.manifest) {
        (Some(path), _) => (read_feature_file(path)?, None),
        (None, Some(path)) => {
            let m = Manifest::load_checked(path)?;
            let counts = m
                .anchors
                .iter()
                .map(|p| {
                    AnchorSet::new(read_anchor_lines(p)?, m.duration).map(|s| s.len()).map_err(Error::from)
                })
                .collect::<Result<Vec<_>>>()?;
            let summary = ManifestSummary {
                version: m.version.clone(),
                duration: m.duration,
                fps: m.fps,
                anchor_counts: counts,
            };
            (read_feature_file(&m.features)?, Some(summary))
        }
        (None, None) => unreachable!("clap enforces one of --in/--manifest"),
    };
    let token_budget = match (a.window, a.stride, a.queries) {
        (Some(w), Some(s), Some(q)) => Some(plan_token_budget(seq.len(), w, s, q)?),
        _ => None,
    };
    print_json(
        out,
        &InspectJson {
            schema: SCHEMA,
            frame_count: seq.len(),
            dim: seq.dim(),
            first_timestamp: seq.frames().first().map(|f| f.timestamp),
            last_timestamp: seq.frames().last().map(|f| f.timestamp),
            manifest,
            token_budget,
        },
    )
}
