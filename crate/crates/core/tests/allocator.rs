use mofa_core::allocator::{allocate, origin_budgets, raw_budgets, scale_budgets};
use proptest::prelude::*;

/// Cluster sizes, scores and a feasible target.
fn budget_case() -> impl Strategy<Value = (Vec<usize>, Vec<f64>, usize)> {
    prop::collection::vec((1usize..200, 0.0f64..=1.0), 1..12).prop_flat_map(|cs| {
        let sizes: Vec<usize> = cs.iter().map(|c| c.0).collect();
        let scores: Vec<f64> = cs.iter().map(|c| c.1).collect();
        let total: usize = sizes.iter().sum();
        (Just(sizes), Just(scores), sizes_len(&cs)..=total)
    })
}

fn sizes_len<T>(v: &[T]) -> usize {
    v.len()
}

proptest! {
    #[test]
    fn final_budgets_are_exact_and_bounded((sizes, scores, n_p) in budget_case()) {
        let a = allocate(&sizes, &scores, n_p).unwrap();
        prop_assert_eq!(a.r_final.iter().sum::<usize>(), n_p);
        for (r, s) in a.r_final.iter().zip(&sizes) {
            prop_assert!(*r >= 1 && r <= s);
        }
        for (r, s) in a.r_raw.iter().zip(&sizes) {
            prop_assert!(*r >= 1 && r <= s);
        }
    }

    #[test]
    fn raw_budget_monotone_in_score((sizes, scores, n_p) in budget_case(), k in 0usize..12, bump in 0.0f64..1.0) {
        let k = k % sizes.len();
        let mut higher = scores.clone();
        higher[k] = (higher[k] + bump).min(1.0);
        let lo = raw_budgets(&sizes, &scores, n_p).unwrap();
        let hi = raw_budgets(&sizes, &higher, n_p).unwrap();
        prop_assert!(hi[k] >= lo[k]);
    }

    #[test]
    fn zero_motion_is_clamped_origin((sizes, _scores, n_p) in budget_case()) {
        let zeros = vec![0.0; sizes.len()];
        let raw = raw_budgets(&sizes, &zeros, n_p).unwrap();
        let origin = origin_budgets(&sizes, n_p);
        for ((r, o), s) in raw.iter().zip(&origin).zip(&sizes) {
            prop_assert_eq!(*r, (*o).min(*s).max(1));
        }
    }

    #[test]
    fn scaling_raw_budgets_is_consistent(
        raw in prop::collection::vec(1usize..20, 1..10),
        c in 1usize..5,
        extra in 0usize..100,
    ) {
        let sizes: Vec<usize> = raw.iter().map(|r| r * 5).collect();
        let total: usize = sizes.iter().sum();
        let n_p = (raw.len() + extra).min(total);
        let scaled: Vec<usize> = raw.iter().map(|r| r * c).collect();
        prop_assert_eq!(
            scale_budgets(&raw, &sizes, n_p).unwrap(),
            scale_budgets(&scaled, &sizes, n_p).unwrap()
        );
    }

    #[test]
    fn exact_sum_is_unchanged(raw in prop::collection::vec(1usize..20, 1..10), slack in prop::collection::vec(0usize..5, 10)) {
        let sizes: Vec<usize> = raw.iter().zip(&slack).map(|(r, s)| r + s).collect();
        let n_p: usize = raw.iter().sum();
        prop_assert_eq!(scale_budgets(&raw, &sizes, n_p).unwrap(), raw);
    }
}

/// Independent largest-remainder reference for the unclamped case.
fn hamilton(weights: &[usize], seats: usize) -> Vec<usize> {
    let total: f64 = weights.iter().sum::<usize>() as f64;
    let quotas: Vec<f64> = weights.iter().map(|&w| w as f64 * seats as f64 / total).collect();
    let mut out: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (quotas[a] - quotas[a].floor(), quotas[b] - quotas[b].floor());
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    let left = seats - out.iter().sum::<usize>();
    for &k in order.iter().take(left) {
        out[k] += 1;
    }
    out
}

#[test]
fn agrees_with_reference_apportionment_when_unclamped() {
    let cases: [(&[usize], usize); 4] =
        [(&[6, 2], 5), (&[3, 3, 3], 7), (&[10, 1, 4, 7], 11), (&[19, 10, 10], 20)];
    for (raw, n_p) in cases {
        let expected = hamilton(raw, n_p);
        let sizes: Vec<usize> = raw.iter().map(|r| r * 10).collect();
        if expected.iter().all(|&e| e >= 1) {
            assert_eq!(scale_budgets(raw, &sizes, n_p).unwrap(), expected, "{raw:?}");
        }
    }
}

#[test]
fn exhaustive_small_feasibility() {
    // Every size vector over {1..4}^3 and every feasible target.
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                let sizes = [a, b, c];
                for n_p in 3..=a + b + c {
                    for scores in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.5], [0.2, 1.0, 1.0]] {
                        let al = allocate(&sizes, &scores, n_p).unwrap();
                        assert_eq!(al.r_final.iter().sum::<usize>(), n_p);
                        assert!(al.r_final.iter().zip(&sizes).all(|(r, s)| *r >= 1 && r <= s));
                    }
                }
            }
        }
    }
}

#[test]
fn high_motion_cluster_is_boosted() {
    for s in [0.9, 0.97, 1.0] {
        let a = allocate(&[100; 6], &[0.0, 0.0, 0.0, 0.0, 0.0, s], 60).unwrap();
        assert!(a.r_final[5] >= 14, "{a:?}");
    }
}
