//! Motion-aware, fine-to-coarse compression of timestamped feature sequences.
//!
//! The pipeline reduces a sequence of `N_o` feature frames to a fixed length
//! `N_p` in four stages:
//!
//! 1. [`segmenter`] splits the sequence into `U` temporally contiguous
//!    clusters minimizing cumulative cosine distance to the cluster centroids.
//! 2. [`allocator`] scores each cluster by its internal variance and turns the
//!    scores into integer frame budgets that sum to exactly `N_p`.
//! 3. [`merger`] shrinks every cluster to its budget by repeatedly averaging the
//!    most similar adjacent pair, or dropping one frame of the pair when the
//!    pair differs too much to be averaged.
//! 4. [`compressor`] runs the stages above and concatenates the clusters.
//!
//! Alongside the compressor the crate carries positional-embedding table
//! extension ([`posenc`]), the single-anchor temporal evaluation protocol
//! ([`eval`]) and a deterministic synthetic stream generator ([`synth`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threading and
//! the command-line interface live in the `mofa` crate.

#![no_std]
#![deny(rust_2018_idioms)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod allocator;
pub mod compressor;
mod error;
pub mod eval;
pub mod exec;
pub mod geometry;
pub mod merger;
pub mod posenc;
pub mod segmenter;
pub mod synth;

pub use allocator::Allocation;
pub use compressor::{compress, CompressionConfig, CompressionReport, TokenBudget};
pub use error::{Error, Result};
pub use eval::{AnchorSet, EvalConfig, EvalReport};
pub use exec::{Executor, Sequential};
pub use geometry::{FeatureFrame, FeatureSequence, Partition};
pub use merger::{MergeConfig, MergeTrace};
pub use posenc::EmbeddingTable;
pub use segmenter::SegmenterConfig;
pub use synth::StreamSpec;
