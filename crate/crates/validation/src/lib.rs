//! Seeded fixtures and a small pass/fail ledger for the acceptance run.

use std::time::{Duration, Instant};

use fahp_core::{ComparisonJudgment, ComparisonMatrix, Tfn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as FixtureRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete matrix over `n` items `X0..`. Hidden weights are drawn from
/// U(0.2, 1); each pair gets a random orientation, a mode equal to the
/// hidden ratio times `exp(U(-0.5, 0.5))`, and lower/upper bounds at the
/// mode divided/multiplied by independent U(1.5, 3) factors.
pub fn random_valid_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComparisonMatrix {
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let items: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let mut judgments = Vec::new();
    for r in 0..n {
        for c in 0..r {
            let (a, b) = if rng.gen_bool(0.5) { (r, c) } else { (c, r) };
            let m = v[a] / v[b] * rng.gen_range(-0.5f64..0.5).exp();
            let l = m / rng.gen_range(1.5..3.0);
            let u = m * rng.gen_range(1.5..3.0);
            judgments.push(ComparisonJudgment::new(
                items[a].clone(),
                items[b].clone(),
                Tfn::new(l, m, u).expect("l < m < u by construction"),
            ));
        }
    }
    ComparisonMatrix::new("P", items, judgments).expect("complete matrix")
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} {} ({}; {:.2?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

/// Runs `check`, times it, and fails the criterion when it overruns `limit`.
pub fn run_criterion(
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    check: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail.push_str(&format!("; over the {limit:?} budget"));
        }
    }
    Outcome {
        id,
        name,
        pass,
        detail,
        elapsed,
    }
}

/// Max-norm distance between two equally long vectors.
pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_seeded_and_valid() {
        let a = random_valid_matrix(&mut rng(7), 4);
        let b = random_valid_matrix(&mut rng(7), 4);
        assert_eq!(a, b);
        assert_eq!(a.judgments().len(), 6);
        for j in a.judgments() {
            let t = j.value;
            assert!(t.lower() < t.mode() && t.mode() < t.upper());
            assert!(t.mode() / t.lower() >= 1.5 && t.upper() / t.mode() <= 3.0);
        }
    }

    #[test]
    fn budget_overrun_fails() {
        let o = run_criterion(1, "x", Some(Duration::ZERO), || {
            std::thread::sleep(Duration::from_millis(2));
            Ok("fine".into())
        });
        assert!(!o.pass);
        assert!(o.line().starts_with("criterion 1: FAIL x (fine; over"));
    }
}
