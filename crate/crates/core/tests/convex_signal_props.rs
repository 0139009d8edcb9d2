use groupsparse::convex::{
    count_hierarchy_violations, hierarchical_group_lasso, latent_group_lasso, latent_group_lasso_with, ConvexOptions,
};
use groupsparse::exact::{solve_gwmc_dp, WeightVector};
use groupsparse::signals::{
    approximate_from_cover, energy, gen_piecewise_constant, haar_forward, haar_inverse, squared_error,
};
use groupsparse::fixtures;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| if rng.random_bool(0.4) { 0.0 } else { rng.random::<f64>() * 4.0 - 2.0 }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn haar_round_trip_conserves_energy(seed in any::<u64>(), depth in 0u32..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = signal(&mut rng, 1 << depth);
        let c = haar_forward(&x).unwrap();
        prop_assert!((energy(&c.values).sqrt() - energy(&x).sqrt()).abs() <= 1e-10);
        let back = haar_inverse(&c).unwrap();
        prop_assert!(squared_error(&x, &back) <= 1e-20);
    }

    #[test]
    fn piecewise_signals_respect_sparsity_bound(seed in any::<u64>(), depth in 1u32..8, pieces in 1usize..10) {
        let n = 1usize << depth;
        let pieces = pieces.min(n);
        let x = gen_piecewise_constant(n, pieces, seed).unwrap();
        let jumps = x.windows(2).filter(|p| p[0] != p[1]).count();
        prop_assert_eq!(jumps, pieces - 1);
        let c = haar_forward(&x).unwrap();
        let nonzero = c.values.iter().filter(|v| v.abs() > 1e-9).count();
        prop_assert!(nonzero <= 1 + (pieces - 1) * depth as usize);
    }

    #[test]
    fn cover_approximation_splits_energy(seed in any::<u64>(), m in 1usize..8, g in 1usize..8, k in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = fixtures::random_loopless_pairwise(&mut rng, m, 2);
        let x = signal(&mut rng, s.ground_size());
        let w = WeightVector::from_signal(&x);
        let sel = solve_gwmc_dp(&s, &w, g.min(m), k.min(s.ground_size())).unwrap();
        let xhat = approximate_from_cover(&x, &sel).unwrap();
        let lhs = squared_error(&x, &xhat) + sel.objective;
        prop_assert!((lhs - energy(&x)).abs() <= 1e-12 * energy(&x).max(1.0));
    }

    #[test]
    fn latent_lasso_descends_and_converges(seed in any::<u64>(), m in 1usize..6, lambda in 0.05f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = fixtures::random_loopless_pairwise(&mut rng, m, 2);
        let x = signal(&mut rng, s.ground_size());
        let d = vec![1.0; m];
        let r = latent_group_lasso(&s, &x, lambda, &d).unwrap();
        prop_assert!(r.objective_trace.windows(2).all(|p| p[1] <= p[0] + 1e-12));
        let dec = r.decomposition.as_ref().unwrap();
        for (j, v) in dec.components.iter().enumerate() {
            for (i, vi) in v.iter().enumerate() {
                prop_assert!(*vi == 0.0 || s.group(j).contains(&i));
            }
        }
        for i in 0..x.len() {
            let sum: f64 = dec.components.iter().map(|v| v[i]).sum();
            prop_assert!((sum - r.approximation[i]).abs() <= 1e-12);
        }
        let tight = ConvexOptions { tol: 5e-9, ..ConvexOptions::default() };
        let r2 = latent_group_lasso_with(&s, &x, lambda, &d, tight).unwrap();
        prop_assert!((r.final_objective - r2.final_objective).abs() <= 1e-8);
    }

    #[test]
    fn tree_prox_support_is_rooted(seed in any::<u64>(), n in 1usize..40, lambda in 0.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = fixtures::random_tree(&mut rng, n);
        let x = signal(&mut rng, n);
        let r = hierarchical_group_lasso(&t, &x, lambda).unwrap();
        prop_assert_eq!(count_hierarchy_violations(&t, &r.strong_support), 0);
        prop_assert!(r.decomposition.is_none());
    }
}

#[test]
fn case_study_threshold_brackets() {
    let s = fixtures::case_study();
    let x = fixtures::case_study_signal();
    let at = |c: f64| latent_group_lasso(&s, &x, 0.5, &[1.0, c, 1.0]).unwrap().strong_support;
    assert_eq!(at(1.0), vec![0, 1, 2]);
    assert_eq!(at(1.2), vec![0, 2]);
}
