//! Motion-aware frame budgets.
//!
//! Each cluster first receives its size-proportional share
//! `R_origin = ⌊N_p·|B_k| / N_o⌋`, boosted by its motion score to
//! `⌊R_origin·(1 + s_k)⌋` and clamped to `[1, |B_k|]`. The boosted budgets
//! are then rescaled with largest-remainder apportionment so they sum to
//! exactly `N_p`.

use alloc::vec::Vec;

use crate::geometry::{cluster_stats, ClusterStats, FeatureSequence, Partition};
use crate::{Error, Result};

/// A maximum cluster variance at or below this counts as zero motion.
pub const ZERO_VARIANCE: f64 = 1e-12;

/// Budgets at each allocation step, one entry per cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Allocation {
    pub r_origin: Vec<usize>,
    pub r_raw: Vec<usize>,
    pub r_final: Vec<usize>,
}

/// Per-cluster statistics with motion scores filled in.
pub fn partition_stats(seq: &FeatureSequence, p: &Partition) -> Result<Vec<ClusterStats>> {
    if p.len() != seq.len() {
        return Err(Error::InvalidPartition("partition does not cover the sequence"));
    }
    let mut stats = p.clusters().map(|r| cluster_stats(&seq.frames()[r])).collect::<Result<Vec<_>>>()?;
    let variances: Vec<f64> = stats.iter().map(|s| s.variance).collect();
    for (s, m) in stats.iter_mut().zip(scores_from_variances(&variances)) {
        s.motion_score = m;
    }
    Ok(stats)
}

/// `s_k = Var(B_k) / max_j Var(B_j)`.
pub fn motion_scores(seq: &FeatureSequence, p: &Partition) -> Result<Vec<f64>> {
    Ok(partition_stats(seq, p)?.into_iter().map(|s| s.motion_score).collect())
}

/// Normalizes variances by their maximum; all zero when every cluster is
/// internally colinear.
pub fn scores_from_variances(variances: &[f64]) -> Vec<f64> {
    let max = variances.iter().copied().fold(0.0, f64::max);
    if max <= ZERO_VARIANCE {
        return variances.iter().map(|_| 0.0).collect();
    }
    variances.iter().map(|v| (v / max).clamp(0.0, 1.0)).collect()
}

/// Size-proportional shares `⌊n_p·|B_k| / N_o⌋`.
pub fn origin_budgets(sizes: &[usize], n_p: usize) -> Vec<usize> {
    let total: usize = sizes.iter().sum();
    sizes.iter().map(|&s| (n_p * s).checked_div(total).unwrap_or(0)).collect()
}

fn check_budget_inputs(sizes: &[usize], n_p: usize) -> Result<usize> {
    let total: usize = sizes.iter().sum();
    if sizes.is_empty() {
        return Err(Error::ZeroClusters);
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidPartition("empty cluster"));
    }
    if n_p < sizes.len() || n_p > total {
        return Err(Error::InfeasibleBudget { target: n_p, clusters: sizes.len(), frames: total });
    }
    Ok(total)
}

/// Motion-boosted budgets `max(1, min(⌊R_origin·(1 + s_k)⌋, |B_k|))`.
pub fn raw_budgets(sizes: &[usize], scores: &[f64], n_p: usize) -> Result<Vec<usize>> {
    check_budget_inputs(sizes, n_p)?;
    if scores.len() != sizes.len() {
        return Err(Error::DimensionMismatch { expected: sizes.len(), found: scores.len() });
    }
    if scores.iter().any(|s| !(0.0..=1.0).contains(s)) {
        return Err(Error::InvalidConfig("motion scores must lie in [0, 1]"));
    }
    Ok(origin_budgets(sizes, n_p)
        .into_iter()
        .zip(sizes.iter().zip(scores))
        .map(|(origin, (&size, &s))| {
            let boosted = libm::floor(origin as f64 * (1.0 + s)) as usize;
            boosted.min(size).max(1)
        })
        .collect())
}

/// Rescales `r_raw` to integers summing to `n_p`, each within `[1, sizes[k]]`.
///
/// Quotas `r_raw[k]·n_p / Σ r_raw` are apportioned by largest remainder
/// (ties to the lower index) and clamped to the bounds. Any surplus is then
/// taken back from unclamped clusters in ascending remainder order, any
/// deficit handed to unclamped clusters in descending remainder order, one
/// unit per cluster per pass. Remainders are compared as exact integers.
pub fn scale_budgets(r_raw: &[usize], sizes: &[usize], n_p: usize) -> Result<Vec<usize>> {
    check_budget_inputs(sizes, n_p)?;
    if r_raw.len() != sizes.len() {
        return Err(Error::DimensionMismatch { expected: sizes.len(), found: r_raw.len() });
    }
    if r_raw.iter().zip(sizes).any(|(&r, &s)| r == 0 || r > s) {
        return Err(Error::InvalidConfig("raw budgets must lie in [1, cluster size]"));
    }
    let total: usize = r_raw.iter().sum();
    let u = r_raw.len();

    // quota_k = r_k·n_p / total = floor_k + rem_k / total
    let mut out: Vec<usize> = r_raw.iter().map(|&r| r * n_p / total).collect();
    let rem: Vec<usize> = r_raw.iter().map(|&r| r * n_p % total).collect();

    let mut by_rem_desc: Vec<usize> = (0..u).collect();
    by_rem_desc.sort_by(|&a, &b| rem[b].cmp(&rem[a]).then(a.cmp(&b)));
    let assigned: usize = out.iter().sum();
    for &k in by_rem_desc.iter().take(n_p - assigned) {
        out[k] += 1;
    }

    let mut clamped = alloc::vec![false; u];
    for k in 0..u {
        let bounded = out[k].clamp(1, sizes[k]);
        if bounded != out[k] {
            clamped[k] = true;
            out[k] = bounded;
        }
    }

    let mut sum: usize = out.iter().sum();
    if sum > n_p {
        let mut order: Vec<usize> = (0..u).collect();
        order.sort_by(|&a, &b| rem[a].cmp(&rem[b]).then(a.cmp(&b)));
        redistribute(&mut out, &mut sum, n_p, &order, &clamped, |v, _| (v > 1).then(|| v - 1));
    } else if sum < n_p {
        redistribute(&mut out, &mut sum, n_p, &by_rem_desc, &clamped, |v, k| (v < sizes[k]).then_some(v + 1));
    }
    Ok(out)
}

/// Walks `order` repeatedly, stepping one eligible cluster at a time until
/// the sum reaches `n_p`. Unclamped clusters are preferred; clamped ones
/// are used only once no unclamped cluster can move.
fn redistribute(
    out: &mut [usize],
    sum: &mut usize,
    n_p: usize,
    order: &[usize],
    clamped: &[bool],
    step: impl Fn(usize, usize) -> Option<usize>,
) {
    for allow_clamped in [false, true] {
        loop {
            let mut moved = false;
            for &k in order {
                if *sum == n_p {
                    return;
                }
                if clamped[k] && !allow_clamped {
                    continue;
                }
                if let Some(v) = step(out[k], k) {
                    if v > out[k] {
                        *sum += 1;
                    } else {
                        *sum -= 1;
                    }
                    out[k] = v;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
    }
}

/// Runs all three allocation steps.
pub fn allocate(sizes: &[usize], scores: &[f64], n_p: usize) -> Result<Allocation> {
    let r_raw = raw_budgets(sizes, scores, n_p)?;
    let r_final = scale_budgets(&r_raw, sizes, n_p)?;
    Ok(Allocation { r_origin: origin_budgets(sizes, n_p), r_raw, r_final })
}
