mod common;

use common::{consistent_matrix, random_matrix, rng};
use fahp_core::{feasible_at, lambda_at, oracle_solve, solve_fpp, SolverConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn permutation_equivariance(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, n, 0.6);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let p = m.reordered(&order).unwrap();
        let a = solve_fpp(&m, &cfg()).unwrap();
        let b = solve_fpp(&p, &cfg()).unwrap();
        prop_assert!((a.lambda - b.lambda).abs() <= 2.0 * cfg().bisection_tol);
        for (id, w) in &a.weights {
            prop_assert!((w - b.weights[id]).abs() < 1e-4, "{id}: {w} vs {}", b.weights[id]);
        }
    }

    #[test]
    fn certificate_and_simplex(seed in any::<u64>(), n in 2usize..=5) {
        let m = random_matrix(&mut rng(seed), n, 0.8);
        let s = solve_fpp(&m, &cfg()).unwrap();
        let w = s.weight_vec();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(w.iter().all(|&x| x >= cfg().weight_floor * 0.999));
        let cert = lambda_at(&m, &w).unwrap();
        prop_assert!(cert >= s.lambda - 1e-6, "certificate {cert} below {}", s.lambda);
        prop_assert_eq!(s.consistent, s.lambda >= 0.0);
    }

    #[test]
    fn feasibility_is_monotone_in_lambda(seed in any::<u64>(), n in 2usize..=4) {
        let m = random_matrix(&mut rng(seed), n, 0.8);
        let s = solve_fpp(&m, &cfg()).unwrap();
        let lo = s.lambda.min(0.0) - 1.0;
        let samples: Vec<f64> = (0..10).map(|i| lo + (1.0 - lo) * i as f64 / 9.0).collect();
        let feasible: Vec<bool> = samples
            .iter()
            .map(|&l| feasible_at(&m, l, &cfg()).unwrap().is_some())
            .collect();
        // once infeasible, every higher level stays infeasible
        if let Some(first) = feasible.iter().position(|f| !f) {
            prop_assert!(feasible[first..].iter().all(|f| !f), "{feasible:?}");
        }
        for (&l, &f) in samples.iter().zip(&feasible) {
            if l <= s.lambda - 1e-6 {
                prop_assert!(f, "level {l} below optimum {} reported infeasible", s.lambda);
            }
            if l >= s.lambda + 1e-5 {
                prop_assert!(!f, "level {l} above optimum {} reported feasible", s.lambda);
            }
        }
    }

    #[test]
    fn consistent_matrices_are_recovered(seed in any::<u64>(), n in 2usize..=6) {
        let (m, want) = consistent_matrix(&mut rng(seed), n);
        let s = solve_fpp(&m, &cfg()).unwrap();
        prop_assert_eq!(s.lambda, 1.0);
        prop_assert!(s.clamped);
        for (w, e) in s.weight_vec().iter().zip(&want) {
            prop_assert!((w - e).abs() < 1e-6, "{w} vs {e}");
        }
    }
}

#[test]
fn oracle_never_beats_the_solver() {
    let mut r = rng(3);
    for n in 2..=4 {
        for _ in 0..10 {
            let m = random_matrix(&mut r, n, 0.8);
            let s = solve_fpp(&m, &cfg()).unwrap();
            let o = oracle_solve(&m, 0.02).unwrap();
            assert!(
                o.lambda <= s.lambda + 2.0 * cfg().bisection_tol,
                "oracle {} solver {}",
                o.lambda,
                s.lambda
            );
        }
    }
}
