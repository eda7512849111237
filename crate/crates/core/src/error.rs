use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Validation and precondition failures reported by every operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    ZeroDimension,
    NonFinite { index: usize },
    ZeroNorm { index: usize },
    NonIncreasingTimestamps { index: usize },
    NegativeTimestamp { index: usize },
    EmptySet,
    InvalidPartition(&'static str),
    TooManyClusters { clusters: usize, frames: usize },
    ZeroClusters,
    InvalidConfig(&'static str),
    InfeasibleBudget { target: usize, clusters: usize, frames: usize },
    InvalidTarget { target: usize, len: usize },
    DegenerateMerge,
    UnorderedPair,
    IndivisibleStride { frames: usize, stride: usize },
    TableTooShort { rows: usize, required: usize },
    AnchorOutOfRange { timestamp: f64, duration: f64 },
    DurationMismatch,
    InvertedInterval,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroDimension => f.write_str("feature dimension must be ≥ 1"),
            Error::NonFinite { index } => write!(f, "non-finite value in row {index}"),
            Error::ZeroNorm { index } => write!(f, "zero-norm row {index}"),
            Error::NonIncreasingTimestamps { index } => {
                write!(f, "non-increasing timestamps at row {index}")
            }
            Error::NegativeTimestamp { index } => write!(f, "negative timestamp at row {index}"),
            Error::EmptySet => f.write_str("empty vector set"),
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::TooManyClusters { clusters, frames } => {
                write!(f, "{clusters} clusters requested for {frames} frames")
            }
            Error::ZeroClusters => f.write_str("clusters must be ≥ 1"),
            Error::InvalidConfig(why) => f.write_str(why),
            Error::InfeasibleBudget { target, clusters, frames } => {
                write!(f, "infeasible budget: target {target} with {clusters} clusters over {frames} frames")
            }
            Error::InvalidTarget { target, len } => {
                write!(f, "invalid reduction target {target} for {len} frames")
            }
            Error::DegenerateMerge => f.write_str("merged feature has zero norm"),
            Error::UnorderedPair => f.write_str("frames must be in timestamp order"),
            Error::IndivisibleStride { frames, stride } => {
                write!(f, "stride {stride} does not divide frame count {frames}")
            }
            Error::TableTooShort { rows, required } => {
                write!(f, "table has {rows} rows, at least {required} required")
            }
            Error::AnchorOutOfRange { timestamp, duration } => {
                write!(f, "anchor {timestamp} outside [0, {duration}]")
            }
            Error::DurationMismatch => f.write_str("anchor sets disagree on duration"),
            Error::InvertedInterval => f.write_str("interval lower bound exceeds upper bound"),
        }
    }
}

impl core::error::Error for Error {}
