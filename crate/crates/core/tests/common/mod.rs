#![allow(dead_code)]

use mofa_core::{FeatureFrame, FeatureSequence};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random vector with components in [-1, 1], rejecting near-zero norms.
pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<f32> {
    loop {
        let v: Vec<f32> = (0..dim).map(|_| rng.gen_range(-1.0f32..1.0)).collect();
        if v.iter().map(|x| x * x).sum::<f32>() > 1e-3 {
            return v;
        }
    }
}

pub fn random_sequence(rng: &mut impl Rng, n: usize, dim: usize) -> FeatureSequence {
    let frames = (0..n).map(|i| FeatureFrame::new(i as f32 * 0.5, random_vector(rng, dim))).collect();
    FeatureSequence::new(dim, frames).unwrap()
}

pub fn sequence_from(rows: &[Vec<f32>]) -> FeatureSequence {
    let frames = rows.iter().enumerate().map(|(i, r)| FeatureFrame::new(i as f32, r.clone())).collect();
    FeatureSequence::new(rows[0].len(), frames).unwrap()
}

/// Every strictly increasing boundary list `0 = b_0 < .. < b_u = n`, in
/// lexicographic order.
pub fn all_partitions(n: usize, u: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for b in start + 1..=n - (left - 1) {
            cur.push(b);
            rec(b, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, u, &mut vec![0], &mut out);
    out
}
