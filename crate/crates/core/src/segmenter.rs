//! Temporally contiguous clustering.
//!
//! For a segment `[i, j)` with L2-normalized members `u_t` and sum
//! `S = Σ u_t`, the centroid is `S / (j - i)` and
//! `Σ_t (1 - sim(u_t, S)) = (j - i) - ‖S‖`. Every segment cost below is
//! evaluated from a freshly accumulated `S`, in frame order.
//!
//! Sequences up to [`SegmenterConfig::exact_threshold`] frames are solved
//! exactly by dynamic programming; longer ones are refined from the
//! equal-size initial split by boundary coordinate descent.

use alloc::vec;
use alloc::vec::Vec;

use crate::exec::{Executor, Sequential};
use crate::geometry::{norm, unit, FeatureSequence, Partition};
use crate::{Error, Result};

/// Default cluster count `U`.
pub const DEFAULT_CLUSTERS: usize = 6;
pub const DEFAULT_MAX_ITERS: usize = 100;
pub const DEFAULT_EXACT_THRESHOLD: usize = 512;

/// Two optimal-path totals closer than this are treated as tied.
const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SegmenterConfig {
    pub num_clusters: usize,
    /// Cap on full coordinate-descent sweeps.
    pub max_iters: usize,
    /// Largest sequence solved with the exact dynamic program.
    pub exact_threshold: usize,
}

impl Default for SegmenterConfig {
    fn default() -> Self {
        Self {
            num_clusters: DEFAULT_CLUSTERS,
            max_iters: DEFAULT_MAX_ITERS,
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
        }
    }
}

impl SegmenterConfig {
    pub fn with_clusters(num_clusters: usize) -> Self {
        Self { num_clusters, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_clusters == 0 {
            return Err(Error::ZeroClusters);
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max-iters must be ≥ 1"));
        }
        Ok(())
    }
}

/// Splits `n` frames into `u` contiguous runs whose sizes differ by at most
/// one, longer runs first.
pub fn init_partition(n: usize, u: usize) -> Result<Partition> {
    check_clusters(n, u)?;
    let (base, extra) = (n / u, n % u);
    let mut boundaries = Vec::with_capacity(u + 1);
    boundaries.push(0);
    let mut at = 0;
    for k in 0..u {
        at += base + usize::from(k < extra);
        boundaries.push(at);
    }
    Partition::new(boundaries, n)
}

fn check_clusters(n: usize, u: usize) -> Result<()> {
    if u == 0 {
        return Err(Error::ZeroClusters);
    }
    if u > n {
        return Err(Error::TooManyClusters { clusters: u, frames: n });
    }
    Ok(())
}

/// Partitions `seq` into `cfg.num_clusters` contiguous clusters.
pub fn segment(seq: &FeatureSequence, cfg: &SegmenterConfig) -> Result<Partition> {
    segment_with(seq, cfg, &Sequential)
}

pub fn segment_with<E: Executor>(
    seq: &FeatureSequence,
    cfg: &SegmenterConfig,
    exec: &E,
) -> Result<Partition> {
    cfg.validate()?;
    check_clusters(seq.len(), cfg.num_clusters)?;
    if seq.len() <= cfg.exact_threshold {
        dp_optimal_partition_with(seq, cfg.num_clusters, exec)
    } else {
        coordinate_descent(seq, cfg)
    }
}

/// Normalized rows, stored flat.
struct Units {
    dim: usize,
    data: Vec<f64>,
}

impl Units {
    fn new(seq: &FeatureSequence) -> Self {
        let mut data = Vec::with_capacity(seq.len() * seq.dim());
        for f in seq.frames() {
            data.extend(unit(&f.feature));
        }
        Self { dim: seq.dim(), data }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }
}

fn add_into(acc: &mut [f64], row: &[f64]) {
    for (a, x) in acc.iter_mut().zip(row) {
        *a += x;
    }
}

/// `cost[i][j - i - 1]` = cost of segment `[i, j)` for `j` in `i+1..=n`.
fn segment_costs<E: Executor>(units: &Units, n: usize, exec: &E) -> Vec<Vec<f64>> {
    exec.map(n, |i| {
        let mut sum = vec![0.0; units.dim];
        (i..n)
            .map(|t| {
                add_into(&mut sum, units.row(t));
                ((t + 1 - i) as f64 - norm(&sum)).max(0.0)
            })
            .collect()
    })
}

/// Exact minimizer of the clustering objective over all contiguous
/// `u`-partitions. Ties go to the lexicographically smallest boundary list.
pub fn dp_optimal_partition(seq: &FeatureSequence, u: usize) -> Result<Partition> {
    dp_optimal_partition_with(seq, u, &Sequential)
}

pub fn dp_optimal_partition_with<E: Executor>(
    seq: &FeatureSequence,
    u: usize,
    exec: &E,
) -> Result<Partition> {
    let n = seq.len();
    check_clusters(n, u)?;
    let units = Units::new(seq);
    let costs = segment_costs(&units, n, exec);
    let cost = |i: usize, j: usize| costs[i][j - i - 1];

    // best[k][i]: minimal cost of covering [i, n) with k + 1 segments.
    let mut best: Vec<Vec<f64>> = Vec::with_capacity(u);
    best.push((0..n).map(|i| cost(i, n)).collect());
    for k in 1..u {
        let prev = &best[k - 1];
        let row = (0..n)
            .map(|i| {
                if i + k + 1 > n {
                    return f64::INFINITY;
                }
                (i + 1..=n - k).map(|j| cost(i, j) + prev[j]).fold(f64::INFINITY, f64::min)
            })
            .collect();
        best.push(row);
    }

    let mut boundaries = Vec::with_capacity(u + 1);
    boundaries.push(0);
    let mut i = 0;
    for k in (1..u).rev() {
        let target = best[k][i] + TIE_EPS;
        let j =
            (i + 1..=n - k).find(|&j| cost(i, j) + best[k - 1][j] <= target).expect("minimum is attained");
        boundaries.push(j);
        i = j;
    }
    boundaries.push(n);
    Partition::new(boundaries, n)
}

/// Boundary coordinate descent from [`init_partition`]. Each boundary in
/// turn moves to the position between its neighbours that minimizes the two
/// adjacent segment costs; sweeps stop once nothing moves.
fn coordinate_descent(seq: &FeatureSequence, cfg: &SegmenterConfig) -> Result<Partition> {
    let n = seq.len();
    let u = cfg.num_clusters;
    let units = Units::new(seq);
    let mut b = init_partition(n, u)?.boundaries().to_vec();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for _ in 0..cfg.max_iters {
        let mut changed = false;
        for k in 1..u {
            let (lo, hi) = (b[k - 1], b[k + 1]);
            // left[p - lo - 1] = ‖Σ u[lo..p]‖, right[p - lo - 1] = ‖Σ u[p..hi]‖
            left.clear();
            right.clear();
            right.resize(hi - lo - 1, 0.0);
            let mut sum = vec![0.0; units.dim];
            for p in lo + 1..hi {
                add_into(&mut sum, units.row(p - 1));
                left.push(norm(&sum));
            }
            sum.iter_mut().for_each(|s| *s = 0.0);
            for p in (lo + 1..hi).rev() {
                add_into(&mut sum, units.row(p));
                right[p - lo - 1] = norm(&sum);
            }
            // Segment costs are (len - ‖S‖); the lengths sum to hi - lo for
            // every p, so the best p maximizes left + right.
            let mut best_p = lo + 1;
            let mut best_v = f64::NEG_INFINITY;
            for (off, (l, r)) in left.iter().zip(&right).enumerate() {
                let v = l + r;
                if v > best_v {
                    best_v = v;
                    best_p = lo + 1 + off;
                }
            }
            if best_p != b[k] {
                b[k] = best_p;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Partition::new(b, n)
}
