mod common;

use mofa_core::geometry::{cluster_objective, cosine_sim, set_variance};
use mofa_core::Partition;
use proptest::prelude::*;

fn vector(dim: usize) -> impl Strategy<Value = Vec<f32>> {
    prop::collection::vec(-10.0f32..10.0, dim)
        .prop_filter("non-zero", |v| v.iter().map(|x| x * x).sum::<f32>() > 1e-4)
}

proptest! {
    #[test]
    fn self_similarity_is_one(v in vector(8)) {
        prop_assert!((cosine_sim(&v, &v).unwrap() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn cosine_symmetric_and_scale_invariant(a in vector(6), b in vector(6), k in 0.01f32..100.0) {
        let ab = cosine_sim(&a, &b).unwrap();
        prop_assert!((ab - cosine_sim(&b, &a).unwrap()).abs() <= 1e-12);
        let scaled: Vec<f32> = a.iter().map(|x| x * k).collect();
        prop_assert!((ab - cosine_sim(&scaled, &b).unwrap()).abs() <= 1e-6);
        prop_assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn pair_variance_matches_cosine(a in vector(5), b in vector(5)) {
        let v = set_variance([a.as_slice(), b.as_slice()]).unwrap();
        let c = cosine_sim(&a, &b).unwrap();
        prop_assert!((v - (1.0 - c) / 2.0).abs() <= 1e-6);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
    }

    #[test]
    fn variance_ignores_per_vector_scale(
        vs in prop::collection::vec(vector(4), 1..8),
        scales in prop::collection::vec(0.01f32..100.0, 8),
    ) {
        let scaled: Vec<Vec<f32>> = vs
            .iter()
            .zip(&scales)
            .map(|(v, s)| v.iter().map(|x| x * s).collect())
            .collect();
        let a = set_variance(vs.iter().map(Vec::as_slice)).unwrap();
        let b = set_variance(scaled.iter().map(Vec::as_slice)).unwrap();
        prop_assert!((a - b).abs() <= 1e-6);
    }

    #[test]
    fn refining_to_singletons_never_increases(rows in prop::collection::vec(vector(3), 2..10), cut in 0usize..10) {
        let seq = common::sequence_from(&rows);
        let n = rows.len();
        let cut = 1 + cut % (n - 1);
        let coarse = Partition::new(vec![0, cut, n], n).unwrap();
        let fine = Partition::new((0..=n).collect(), n).unwrap();
        let c = cluster_objective(&seq, &coarse).unwrap();
        let f = cluster_objective(&seq, &fine).unwrap();
        prop_assert!(c >= 0.0);
        prop_assert!(f <= c + 1e-9);
        prop_assert!(f.abs() <= 1e-9);
    }
}

#[test]
fn objective_matches_direct_evaluation() {
    // Hand evaluation: one cluster of [1,0] and [0,1] has centroid (½, ½),
    // each member at cosine 1/√2 from it.
    let seq = common::sequence_from(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
    let p = Partition::new(vec![0, 2], 2).unwrap();
    let expected = 2.0 * (1.0 - 1.0 / 2f64.sqrt());
    assert!((cluster_objective(&seq, &p).unwrap() - expected).abs() < 1e-12);
}
