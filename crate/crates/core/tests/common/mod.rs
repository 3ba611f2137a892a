#![allow(dead_code)]

use fahp_core::{ComparisonJudgment, ComparisonMatrix, Tfn};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete random matrix over `n` items: modes follow hidden weights up to
/// multiplicative noise `exp(±noise)`, spreads are drawn per side, and each
/// pair gets a random orientation.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, noise: f64) -> ComparisonMatrix {
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let items: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let mut judgments = Vec::new();
    for r in 0..n {
        for c in 0..r {
            let (a, b) = if rng.gen_bool(0.5) { (r, c) } else { (c, r) };
            let jitter = if noise > 0.0 {
                rng.gen_range(-noise..noise)
            } else {
                0.0
            };
            let m = v[a] / v[b] * f64::exp(jitter);
            let l = m / rng.gen_range(1.2..3.0);
            let u = m * rng.gen_range(1.2..3.0);
            judgments.push(ComparisonJudgment::new(
                items[a].clone(),
                items[b].clone(),
                Tfn::new(l, m, u).unwrap(),
            ));
        }
    }
    judgments.shuffle(rng);
    ComparisonMatrix::new("P", items, judgments).unwrap()
}

/// Hidden weights behind an exactly consistent matrix, normalized.
pub fn consistent_matrix(rng: &mut ChaCha8Rng, n: usize) -> (ComparisonMatrix, Vec<f64>) {
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = v.iter().sum();
    let items: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let mut judgments = Vec::new();
    for r in 0..n {
        for c in 0..r {
            let m = v[r] / v[c];
            let t = Tfn::new(
                m * rng.gen_range(0.5..0.95),
                m,
                m * rng.gen_range(1.05..2.0),
            )
            .unwrap();
            judgments.push(ComparisonJudgment::new(
                items[r].clone(),
                items[c].clone(),
                t,
            ));
        }
    }
    let m = ComparisonMatrix::new("P", items, judgments).unwrap();
    (m, v.iter().map(|x| x / total).collect())
}
