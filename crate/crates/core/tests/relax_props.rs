use groupsparse::exact::{brute_force_wmc, WeightVector};
use groupsparse::relax::{
    brute_force_regularized, lambda_sweep, pareto_frontier, solve_tu_lp, standard_form, FrontierSolver,
};
use groupsparse::{fixtures, GroupStructure};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, m: usize) -> (GroupStructure, WeightVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = fixtures::random_loopless_pairwise(&mut rng, m, 2);
    let w = WeightVector::new((0..s.ground_size()).map(|_| rng.random_range(0..10) as f64).collect()).unwrap();
    (s, w)
}

/// A point is on the upper hull (with the origin) iff no chord between two
/// other points passes strictly above it.
fn on_upper_hull(points: &[(f64, f64)], i: usize) -> bool {
    let (x, y) = points[i];
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let ((xa, ya), (xb, yb)) = (points[a], points[b]);
            if xa < x && x < xb && ya + (yb - ya) * (x - xa) / (xb - xa) > y + 1e-9 {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frontier_is_monotone_and_complete(seed in any::<u64>(), m in 1usize..9) {
        let (s, w) = instance(seed, m);
        let f = pareto_frontier(&s, &w, FrontierSolver::Dp).unwrap();
        prop_assert_eq!(f.len(), m);
        prop_assert!(f.points.windows(2).all(|p| p[0].1 <= p[1].1));
        prop_assert_eq!(f.points[m - 1].1, w.total());
        for (g, sel) in f.selections.iter().enumerate() {
            prop_assert!(sel.is_feasible(&s, Some(g + 1), None));
            prop_assert_eq!(sel.objective, brute_force_wmc(&s, &w, g + 1, None).unwrap().objective);
        }
    }

    #[test]
    fn hull_flags_match_chord_test(seed in any::<u64>(), m in 1usize..9) {
        let (s, w) = instance(seed, m);
        let f = pareto_frontier(&s, &w, FrontierSolver::Oracle).unwrap();
        let pts: Vec<(f64, f64)> =
            std::iter::once((0.0, 0.0)).chain(f.points.iter().map(|&(g, v)| (g as f64, v))).collect();
        for g in 1..=m {
            prop_assert_eq!(f.hull_flags[g - 1], on_upper_hull(&pts, g), "G={}", g);
        }
    }

    #[test]
    fn regularized_solutions_are_exact_on_the_frontier(seed in any::<u64>(), m in 1usize..9) {
        let (s, w) = instance(seed, m);
        let f = pareto_frontier(&s, &w, FrontierSolver::Oracle).unwrap();
        let grid: Vec<f64> = (1..=40).map(|i| i as f64 * 0.5).collect();
        for p in lambda_sweep(&s, &w, &grid).unwrap() {
            prop_assert!(p.selection.is_feasible(&s, None, None));
            if p.num_groups > 0 {
                prop_assert_eq!(p.selection.objective, f.points[p.num_groups - 1].1);
                prop_assert!(f.hull_flags[p.num_groups - 1]);
            }
        }
    }

    #[test]
    fn lp_agrees_with_enumeration(seed in any::<u64>(), m in 1usize..8, lambda in 0.01f64..15.0) {
        let (s, w) = instance(seed, m);
        let out = solve_tu_lp(&standard_form(&s, &w, lambda, None).unwrap()).unwrap();
        prop_assert!(out.integral);
        prop_assert!(out.u.iter().all(|v| (v - v.round()).abs() <= 1e-9));
        let bf = brute_force_regularized(&s, &w, lambda).unwrap();
        let bf_value = bf.objective - lambda * bf.num_groups() as f64;
        prop_assert!((out.objective - bf_value).abs() <= 1e-9);
    }
}

#[test]
fn case_study_frontier_is_concave() {
    let s = fixtures::case_study();
    let w = WeightVector::from_signal(&fixtures::case_study_signal());
    let f = pareto_frontier(&s, &w, FrontierSolver::Auto).unwrap();
    assert_eq!(f.points, vec![(1, 4.0), (2, 6.0), (3, 6.0)]);
    assert!(f.hull_flags.iter().all(|h| *h));
}
