//! File formats, threading and the `mofa` command line on top of `mofa-core`.
//!
//! * [`npy`]: the `\x93NUMPY` v1.0 container restricted to 2-D `<f4` arrays.
//! * [`features`]: feature files, shape `(N, D + 1)` with timestamps in column 0.
//! * [`anchors`]: JSON-lines anchor files, one `{"t": .., "caption": ..}` per line.
//! * [`manifest`]: the JSON manifest tying a feature file to its anchors.
//! * [`report`]: versioned JSON reports printed or written by the CLI.
//! * [`parallel`]: a rayon-backed [`mofa_core::Executor`] sized by `MOFA_THREADS`.
//! * [`cli`]: subcommand parsing and dispatch.

pub mod anchors;
pub mod cli;
mod error;
pub mod features;
pub mod manifest;
pub mod npy;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
