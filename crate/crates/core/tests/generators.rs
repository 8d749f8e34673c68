use infodiff::generators::{gen_er, gen_gaussian_partition, gen_lfr, ErParams, GaussianPartitionParams, LfrParams};
use proptest::prelude::*;

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn er_edge_counts_follow_the_binomial() {
    let params = ErParams { n: 60, edge_exist_prob: 0.1 };
    let pairs = 60.0 * 59.0 / 2.0;
    let (mu, sigma2) = (pairs * 0.1, pairs * 0.1 * 0.9);
    let runs = 400;
    let counts: Vec<f64> = (0..runs).map(|s| gen_er(&params, s).unwrap().edge_count() as f64).collect();
    let (mean, var) = mean_var(&counts);
    let se_mean = (sigma2 / runs as f64).sqrt();
    assert!((mean - mu).abs() <= 4.0 * se_mean, "mean {mean} vs {mu}");
    let se_var = sigma2 * (2.0 / (runs as f64 - 1.0)).sqrt();
    assert!((var - sigma2).abs() <= 4.0 * se_var, "variance {var} vs {sigma2}");
}

fn community_size_variance(v: f64) -> f64 {
    let mut sizes = Vec::new();
    for seed in 0..20 {
        let params = GaussianPartitionParams { n: 4000, s: 40.0, v, p_in: 0.0, p_out: 0.0 };
        let (_, communities) = gen_gaussian_partition(&params, seed).unwrap();
        let s = communities.sizes();
        // the last community absorbs the remainder
        sizes.extend(s[..s.len() - 1].iter().map(|&x| x as f64));
    }
    mean_var(&sizes).1
}

#[test]
fn gaussian_partition_size_variance_is_s_over_v() {
    // rounding to integers adds about 1/12
    let narrow = community_size_variance(40.0);
    assert!((narrow - 1.0).abs() < 0.3, "v=40 variance {narrow}");
    let wide = community_size_variance(1.0);
    assert!((wide - 40.0).abs() < 6.0, "v=1 variance {wide}");
}

#[test]
fn lfr_reference_invariants_across_seeds() {
    let params = LfrParams::reference();
    for seed in 0..8 {
        let (g, communities) = gen_lfr(&params, seed).unwrap();
        assert_eq!(g.node_count(), 1000);
        let mean_degree = 2.0 * g.edge_count() as f64 / 1000.0;
        assert!((mean_degree - 5.0).abs() <= 1.0, "seed {seed}: mean degree {mean_degree}");
        assert!(communities.sizes().iter().all(|&s| s >= 50), "seed {seed}: {:?}", communities.sizes());
        assert_eq!(communities.sizes().iter().sum::<usize>(), 1000);
        let mixing = communities.mixing_fraction(&g);
        assert!((0.03..=0.2).contains(&mixing), "seed {seed}: mixing {mixing}");
    }
}

#[test]
fn lfr_mixing_tracks_mu() {
    let mut last = -1.0;
    for mu in [0.1, 0.3, 0.5] {
        let params = LfrParams { n: 500, mu, ..LfrParams::reference() };
        let (g, communities) = gen_lfr(&params, 3).unwrap();
        let mixing = communities.mixing_fraction(&g);
        assert!((mixing - mu).abs() < 0.08, "mu {mu}: mixing {mixing}");
        assert!(mixing > last);
        last = mixing;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), n in 2usize..120) {
        let er = ErParams { n, edge_exist_prob: 0.2 };
        prop_assert_eq!(gen_er(&er, seed).unwrap().to_edge_list(), gen_er(&er, seed).unwrap().to_edge_list());

        let gp = GaussianPartitionParams { n, s: 10.0, v: 2.0, p_in: 0.5, p_out: 0.05 };
        let (a, ca) = gen_gaussian_partition(&gp, seed).unwrap();
        let (b, cb) = gen_gaussian_partition(&gp, seed).unwrap();
        prop_assert_eq!(a.to_edge_list(), b.to_edge_list());
        prop_assert_eq!(ca.membership(), cb.membership());
    }

    #[test]
    fn gaussian_partition_covers_every_node(seed in any::<u64>(), n in 1usize..300, s in 1.0f64..50.0, v in 0.5f64..50.0) {
        let params = GaussianPartitionParams { n, s, v, p_in: 0.3, p_out: 0.01 };
        let (g, communities) = gen_gaussian_partition(&params, seed).unwrap();
        prop_assert_eq!(g.node_count(), n);
        prop_assert_eq!(communities.membership().len(), n);
        prop_assert_eq!(communities.sizes().iter().sum::<usize>(), n);
        prop_assert!(communities.sizes().iter().all(|&c| c >= 1));
        prop_assert!(communities.membership().iter().all(|&c| c < communities.count()));
    }

    #[test]
    fn lfr_is_deterministic_and_meets_invariants(seed in any::<u64>()) {
        let params = LfrParams { n: 400, min_community: 20, ..LfrParams::reference() };
        let (g, communities) = gen_lfr(&params, seed).unwrap();
        let (h, _) = gen_lfr(&params, seed).unwrap();
        prop_assert_eq!(g.to_edge_list(), h.to_edge_list());
        let mean_degree = 2.0 * g.edge_count() as f64 / 400.0;
        prop_assert!((mean_degree - 5.0).abs() <= 1.0);
        prop_assert!(communities.sizes().iter().all(|&s| s >= 20));
    }
}
