//! Exhaustive simplex-lattice search, used to cross-check [`super::solve_fpp`].
//!
//! Every weight vector `w = k·step` with positive integer `k` summing to
//! `1/step` is scored by its judgment memberships. The reported `λ` is the
//! best smallest membership on the lattice, so it never exceeds the true
//! optimum. Among lattice points within `tie_tol` of the best level at each
//! successive sorted position (leximin with a grid-sized tolerance) the
//! weights are taken from the survivor closest to any crisp modes, then the
//! lexicographically best sorted membership vector, then enumeration order.

use std::cmp::Ordering;

use indexmap::IndexMap;

use crate::fuzzy::Tfn;
use crate::hierarchy::ComparisonMatrix;
use crate::par::{self, Execution};

use super::{tolerant_membership, SolveResult, SolverError};

pub const MAX_ITEMS: usize = 4;
const MAX_JUDGMENTS: usize = MAX_ITEMS * (MAX_ITEMS - 1) / 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub step: f64,
    /// Membership tolerance of the leximin tie filter.
    pub tie_tol: f64,
    pub exec: Execution,
}

impl OracleConfig {
    pub fn new(step: f64) -> Self {
        OracleConfig {
            step,
            tie_tol: 0.01,
            exec: Execution::default(),
        }
    }
}

pub fn oracle_solve(matrix: &ComparisonMatrix, step: f64) -> Result<SolveResult, SolverError> {
    oracle_solve_with(matrix, &OracleConfig::new(step))
}

pub fn oracle_solve_with(
    matrix: &ComparisonMatrix,
    cfg: &OracleConfig,
) -> Result<SolveResult, SolverError> {
    let n = matrix.len();
    if n > MAX_ITEMS {
        return Err(SolverError::TooLarge { n, max: MAX_ITEMS });
    }
    if !(1e-3 - 1e-12..=0.05 + 1e-12).contains(&cfg.step) {
        return Err(SolverError::InvalidStep(cfg.step));
    }
    let grid = Grid::new(matrix, cfg.step);
    let total = grid.count();

    // pass 0: is any lattice point within a cell of every crisp mode
    let any_crisp_ok = grid
        .reduce(cfg.exec, |s| s.crisp_ok, |a, b| a || b)
        .unwrap_or(false);

    let mut floors: Vec<f64> = Vec::new();
    let mut lambda = f64::NEG_INFINITY;
    for pos in 0..grid.fuzzy_count() {
        let keep = |s: &Score| s.survives(any_crisp_ok, &floors);
        let best = grid
            .reduce(
                cfg.exec,
                |s| {
                    if keep(&s) {
                        s.sorted[pos]
                    } else {
                        f64::NEG_INFINITY
                    }
                },
                f64::max,
            )
            .unwrap_or(f64::NEG_INFINITY);
        if pos == 0 {
            lambda = best;
        }
        floors.push(best - cfg.tie_tol);
    }
    if grid.fuzzy_count() == 0 {
        lambda = 1.0;
    }

    let chosen = grid
        .reduce(
            cfg.exec,
            |s| s.survives(any_crisp_ok, &floors).then_some(s),
            |a, b| match (a, b) {
                (Some(a), Some(b)) => Some(if prefer(&b, &a) { b } else { a }),
                (a, b) => a.or(b),
            },
        )
        .flatten()
        .expect("lattice is non-empty");

    let weights: IndexMap<String, f64> = matrix
        .items()
        .iter()
        .cloned()
        .zip(grid.weights(&chosen.k))
        .collect();
    Ok(SolveResult {
        weights,
        lambda,
        consistent: lambda >= 0.0,
        iterations: total,
        clamped: lambda >= 1.0,
        max_slack: 0.0,
        non_unique: false,
    })
}

/// Nearest lattice point to `weights` for the given step: each coordinate
/// becomes a positive multiple of the step and the total stays 1.
pub fn lattice_round(weights: &[f64], step: f64) -> Result<Vec<f64>, SolverError> {
    if !(1e-3 - 1e-12..=0.05 + 1e-12).contains(&step) {
        return Err(SolverError::InvalidStep(step));
    }
    let units = (1.0 / step).round() as i64;
    let n = weights.len() as i64;
    if n == 0 || n > units {
        return Err(SolverError::Dimension {
            expected: units as usize,
            got: weights.len(),
        });
    }
    let total: f64 = weights.iter().sum();
    let scaled: Vec<f64> = weights.iter().map(|w| w / total * units as f64).collect();
    let mut k: Vec<i64> = scaled.iter().map(|s| (s.round() as i64).max(1)).collect();
    // repair the total one unit at a time, moving the coordinate whose
    // rounding error is largest in the needed direction
    loop {
        let diff = units - k.iter().sum::<i64>();
        if diff == 0 {
            break;
        }
        let pick = (0..k.len())
            .filter(|&i| diff > 0 || k[i] > 1)
            .max_by(|&a, &b| {
                let ea = (scaled[a] - k[a] as f64) * diff.signum() as f64;
                let eb = (scaled[b] - k[b] as f64) * diff.signum() as f64;
                ea.total_cmp(&eb).then(b.cmp(&a))
            })
            .expect("a movable coordinate exists");
        k[pick] += diff.signum();
    }
    Ok(k.iter().map(|&v| v as f64 / units as f64).collect())
}

/// Whether `b` beats `a` for the final pick.
fn prefer(b: &Score, a: &Score) -> bool {
    match b.crisp_dev.partial_cmp(&a.crisp_dev) {
        Some(Ordering::Less) => return true,
        Some(Ordering::Greater) => return false,
        _ => {}
    }
    for (x, y) in b.sorted.iter().zip(&a.sorted) {
        match x.partial_cmp(y) {
            Some(Ordering::Greater) => return true,
            Some(Ordering::Less) => return false,
            _ => {}
        }
    }
    b.k < a.k
}

#[derive(Debug, Clone)]
struct Score {
    k: [u32; MAX_ITEMS],
    crisp_ok: bool,
    crisp_dev: f64,
    sorted: [f64; MAX_JUDGMENTS],
}

impl Score {
    fn survives(&self, need_crisp: bool, floors: &[f64]) -> bool {
        (self.crisp_ok || !need_crisp) && floors.iter().zip(&self.sorted).all(|(f, v)| v >= f)
    }
}

struct Grid {
    n: usize,
    units: u32,
    step: f64,
    fuzzy: Vec<(usize, usize, Tfn)>,
    crisp: Vec<(usize, usize, Tfn)>,
}

impl Grid {
    fn new(matrix: &ComparisonMatrix, step: f64) -> Self {
        let units = (1.0 / step).round() as u32;
        let (crisp, fuzzy): (Vec<_>, Vec<_>) = matrix
            .indexed_judgments()
            .iter()
            .map(|j| (j.row, j.col, j.value))
            .partition(|(_, _, v)| v.is_crisp());
        Grid {
            n: matrix.len(),
            units,
            step: 1.0 / units as f64,
            fuzzy,
            crisp,
        }
    }

    fn fuzzy_count(&self) -> usize {
        self.fuzzy.len()
    }

    fn weights(&self, k: &[u32; MAX_ITEMS]) -> Vec<f64> {
        k[..self.n].iter().map(|&v| v as f64 * self.step).collect()
    }

    fn count(&self) -> usize {
        // compositions of `units` into `n` positive parts
        let (mut num, mut den) = (1u128, 1u128);
        for i in 0..(self.n as u128 - 1) {
            num *= self.units as u128 - 1 - i;
            den *= i + 1;
        }
        (num / den) as usize
    }

    fn score(&self, k: [u32; MAX_ITEMS]) -> Score {
        let w = self.weights(&k);
        let mut crisp_ok = true;
        let mut crisp_dev: f64 = 0.0;
        for &(r, c, t) in &self.crisp {
            let dev = (w[r] / w[c] / t.mode()).ln().abs();
            crisp_dev = crisp_dev.max(dev);
            if dev > self.step / w[r] + self.step / w[c] {
                crisp_ok = false;
            }
        }
        let mut sorted = [f64::INFINITY; MAX_JUDGMENTS];
        for (slot, &(r, c, t)) in sorted.iter_mut().zip(&self.fuzzy) {
            *slot = tolerant_membership(&t, w[r] / w[c]);
        }
        sorted[..self.fuzzy.len()].sort_by(|a, b| a.total_cmp(b));
        Score {
            k,
            crisp_ok,
            crisp_dev,
            sorted,
        }
    }

    /// Maps every lattice point and folds; parallel over the first coordinate.
    fn reduce<T, M, R>(&self, exec: Execution, map: M, reduce: R) -> Option<T>
    where
        T: Send,
        M: Fn(Score) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let n = self.n;
        let units = self.units;
        let outer = (units as usize).saturating_sub(n - 1);
        par::map_reduce(
            0..outer,
            exec,
            |i| {
                let k0 = i as u32 + 1;
                let mut acc: Option<T> = None;
                let mut k = [0u32; MAX_ITEMS];
                k[0] = k0;
                self.fill(&mut k, 1, units - k0, &mut |kk| {
                    let v = map(self.score(kk));
                    acc = Some(match acc.take() {
                        Some(a) => reduce(a, v),
                        None => v,
                    });
                });
                acc
            },
            |a, b| match (a, b) {
                (Some(a), Some(b)) => Some(reduce(a, b)),
                (a, b) => a.or(b),
            },
        )
        .flatten()
    }

    fn fill(
        &self,
        k: &mut [u32; MAX_ITEMS],
        pos: usize,
        left: u32,
        f: &mut dyn FnMut([u32; MAX_ITEMS]),
    ) {
        if pos == self.n - 1 {
            if left >= 1 {
                k[pos] = left;
                f(*k);
            }
            return;
        }
        let slots_after = (self.n - 1 - pos) as u32;
        if left < slots_after + 1 {
            return;
        }
        for v in 1..=(left - slots_after) {
            k[pos] = v;
            self.fill(k, pos + 1, left - v, f);
        }
    }
}
