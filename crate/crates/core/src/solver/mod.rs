//! Fuzzy preference programming: find the crisp weight vector that
//! maximizes the smallest membership degree `λ` over all judgments.
//!
//! For a judgment `w_r / w_c ≈ (l, m, u)` the program requires
//!
//! ```text
//! (m - l)·λ·w_c - w_r + l·w_c <= 0
//! (u - m)·λ·w_c + w_r - u·w_c <= 0
//! ```
//!
//! together with `Σ w = 1` and `w > 0`. The constraints are bilinear in
//! `(λ, w)` but linear in `w` once `λ` is fixed, and the feasible set only
//! shrinks as `λ` grows. [`solve_fpp`] therefore bisects on `λ`, deciding
//! each trial level with an exact linear feasibility program
//! ([`feasible_at`]) solved by the in-crate simplex in [`lp`].
//!
//! When the optimal `λ` leaves the weights under-determined (for instance a
//! single inconsistent cycle fixes `λ` while other items keep room to move),
//! the weights are made canonical by continuing leximin-style: judgments
//! that cannot rise above the current level are frozen there and the
//! remaining ones are maximized again, until every judgment is frozen.

pub mod lp;
pub mod oracle;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::Tfn;
use crate::hierarchy::{ComparisonMatrix, IndexedJudgment};
use crate::par::{self, Execution};

use lp::{LinearProgram, LpError, LpSolution, Relation};

pub use oracle::{lattice_round, oracle_solve, oracle_solve_with, OracleConfig};

/// A slack above `-FEAS_TOL` counts as feasible.
const FEAS_TOL: f64 = 1e-10;
/// Relative tolerance for treating a ratio as equal to a crisp mode.
pub const CRISP_RTOL: f64 = 1e-9;
/// Weights that can still move by more than this at the optimal `λ` are
/// reported as not unique.
const NON_UNIQUE_WIDTH: f64 = 1e-4;
/// Frozen constraint slacks are relaxed by this much so that rounding in
/// one stage cannot make the next infeasible.
const SLACK_MARGIN: f64 = 1e-10;
/// Judgments are fixed this far below the level they reached, for the
/// same reason.
const LEVEL_MARGIN: f64 = 1e-8;
/// Cap on level-raising steps in one refinement stage.
const RAISE_LIMIT: usize = 200;
/// Duals above this mark a constraint as binding in every optimum.
const DUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("weight vector has {got} entries, matrix has {expected} items")]
    Dimension { expected: usize, got: usize },
    #[error("weights must be strictly positive and finite")]
    NonPositiveWeight,
    #[error("judgments are infeasible even at lambda = {lambda}; violated pairs: {}", format_pairs(.violated))]
    InfeasibleAtFloor {
        lambda: f64,
        violated: Vec<(String, String)>,
    },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("oracle refuses {n} items (at most {max})")]
    TooLarge { n: usize, max: usize },
    #[error("oracle grid step {0} outside [0.001, 0.05]")]
    InvalidStep(f64),
    #[error(transparent)]
    Lp(#[from] LpError),
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(r, c)| format!("{r}/{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Bottom of the `λ` search interval.
    pub lambda_lo: f64,
    /// Top of the `λ` search interval.
    pub lambda_cap: f64,
    pub bisection_tol: f64,
    /// Every weight is kept at or above this floor.
    pub weight_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            lambda_lo: -10.0,
            lambda_cap: 1.0,
            bisection_tol: 1e-6,
            weight_floor: 1e-6,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let finite = [
            self.lambda_lo,
            self.lambda_cap,
            self.bisection_tol,
            self.weight_floor,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(SolverError::InvalidConfig("values must be finite".into()));
        }
        if self.lambda_lo >= self.lambda_cap {
            return Err(SolverError::InvalidConfig(format!(
                "lambda_lo ({}) must be below lambda_cap ({})",
                self.lambda_lo, self.lambda_cap
            )));
        }
        if self.bisection_tol <= 0.0 || self.weight_floor <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "bisection_tol and weight_floor must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Crisp priorities for one comparison matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub weights: IndexMap<String, f64>,
    pub lambda: f64,
    pub consistent: bool,
    pub iterations: usize,
    pub clamped: bool,
    /// Smallest constraint slack at the reported point for the optimal `λ`.
    pub max_slack: f64,
    /// Some weight could still move by more than 1e-4 at the optimal `λ`;
    /// a leximin refinement chose among the optimal weight vectors.
    pub non_unique: bool,
}

impl SolveResult {
    pub fn weight_vec(&self) -> Vec<f64> {
        self.weights.values().copied().collect()
    }
}

/// Smallest membership degree of the ratios implied by `weights` (given in
/// item order). This is the largest `λ` at which `weights` is feasible.
pub fn lambda_at(matrix: &ComparisonMatrix, weights: &[f64]) -> Result<f64, SolverError> {
    if weights.len() != matrix.len() {
        return Err(SolverError::Dimension {
            expected: matrix.len(),
            got: weights.len(),
        });
    }
    if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(SolverError::NonPositiveWeight);
    }
    Ok(matrix
        .indexed_judgments()
        .iter()
        .map(|j| tolerant_membership(&j.value, weights[j.row] / weights[j.col]))
        .fold(f64::INFINITY, f64::min))
}

pub(crate) fn tolerant_membership(j: &Tfn, ratio: f64) -> f64 {
    if (ratio / j.mode() - 1.0).abs() <= CRISP_RTOL {
        1.0
    } else {
        j.membership_unchecked(ratio)
    }
}

/// Max-slack weight vector satisfying every judgment at level `lambda`, or
/// `None` when that level is infeasible.
pub fn feasible_at(
    matrix: &ComparisonMatrix,
    lambda: f64,
    cfg: &SolverConfig,
) -> Result<Option<Vec<f64>>, SolverError> {
    cfg.validate()?;
    let levels = vec![Level::Free; matrix.indexed_judgments().len()];
    let probe = Feasibility::new(matrix, cfg.weight_floor);
    Ok(probe.check(&levels, lambda, None)?.map(|p| p.weights))
}

/// Maximizes `λ` by bisection and returns the leximin-refined weights.
pub fn solve_fpp(
    matrix: &ComparisonMatrix,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolverError> {
    cfg.validate()?;
    let probe = Feasibility::new(matrix, cfg.weight_floor);
    let judgments = matrix.indexed_judgments();
    let mut levels: Vec<Level> = judgments
        .iter()
        .map(|j| {
            if j.value.is_crisp() {
                Level::Hard
            } else {
                Level::Free
            }
        })
        .collect();

    let floor_point = match probe.check(&levels, cfg.lambda_lo, None)? {
        Some(p) => p,
        None => {
            return Err(SolverError::InfeasibleAtFloor {
                lambda: cfg.lambda_lo,
                violated: probe.violated_pairs(&levels, cfg.lambda_lo),
            })
        }
    };

    let stage = probe.maximize_level(&levels, cfg.lambda_lo, floor_point, cfg)?;
    let lambda = stage.level;
    let clamped = stage.clamped;
    let iterations = stage.iterations;
    let max_slack = stage.point.slack;
    let stage_levels = levels.clone();

    // the bisection stops short of the optimum; duals read there can flag
    // judgments that are not actually blocking
    let (mut level, mut at_cap, mut current) = if stage.clamped {
        (stage.level, true, stage.point.weights.clone())
    } else {
        probe.raise_level(&levels, stage.level, &stage.point.weights, cfg)?
    };
    let mut stages = 1;
    loop {
        let free: Vec<usize> = (0..levels.len())
            .filter(|&i| levels[i] == Level::Free)
            .collect();
        if free.is_empty() {
            break;
        }
        if at_cap {
            for &i in &free {
                levels[i] = Level::Fixed(level - LEVEL_MARGIN);
            }
            break;
        }
        // judgments with a side carrying a positive dual sit exactly at
        // `level` in every optimum and cannot rise further
        let duals = probe.slack_duals(&levels, level, &current)?;
        let mut blocking: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&i| duals[2 * i].max(duals[2 * i + 1]) > DUAL_TOL)
            .collect();
        if blocking.is_empty() {
            blocking = free.clone();
        }
        for &i in &blocking {
            levels[i] = Level::Fixed(level - LEVEL_MARGIN);
        }
        if blocking.len() == free.len() {
            break;
        }
        stages += 1;
        (level, at_cap, current) = probe.raise_level(&levels, level, &current, cfg)?;
    }

    let final_point = probe
        .settle(&levels, &current)?
        .unwrap_or(stage.point.clone());
    let non_unique = stages > 1 && {
        let mut wide = false;
        for k in 0..matrix.len() {
            if probe.weight_range(&stage_levels, lambda, k, &stage.point.weights)?
                > NON_UNIQUE_WIDTH
            {
                wide = true;
                break;
            }
        }
        wide
    };
    let weights = matrix
        .items()
        .iter()
        .cloned()
        .zip(normalize_point(&final_point.weights))
        .collect();

    Ok(SolveResult {
        weights,
        lambda,
        consistent: lambda >= 0.0,
        iterations,
        clamped,
        max_slack,
        non_unique,
    })
}

/// Solves many matrices, in parallel when enabled. Output order follows input.
pub fn solve_many(
    matrices: &[ComparisonMatrix],
    cfg: &SolverConfig,
    exec: Execution,
) -> Vec<Result<SolveResult, SolverError>> {
    par::map_slice(matrices, exec, |m| solve_fpp(m, cfg))
}

fn normalize_point(w: &[f64]) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.iter().map(|v| v / s).collect()
}

/// How the shared slack `s` enters each constraint side.
#[derive(Clone, Copy)]
enum Slack<'f> {
    /// Every non-crisp side carries `s`.
    Shared,
    /// Frozen sides keep their own slack; the others carry `s`.
    Frozen(&'f [Option<f64>]),
    /// Each side carries `s` times its own weight.
    Scaled(&'f [f64]),
}

/// Per-judgment requirement in a feasibility check.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Level {
    /// Crisp judgment: interval constraint independent of `λ`.
    Hard,
    /// Must reach the trial level.
    Free,
    /// Must reach this fixed level.
    Fixed(f64),
}

#[derive(Debug, Clone)]
struct Point {
    weights: Vec<f64>,
    slack: f64,
}

struct Stage {
    level: f64,
    point: Point,
    iterations: usize,
    clamped: bool,
}

struct Feasibility<'a> {
    judgments: &'a [IndexedJudgment],
    items: &'a [String],
    n: usize,
    floor: f64,
}

impl<'a> Feasibility<'a> {
    fn new(matrix: &'a ComparisonMatrix, floor: f64) -> Self {
        Feasibility {
            judgments: matrix.indexed_judgments(),
            items: matrix.items(),
            n: matrix.len(),
            floor,
        }
    }

    /// Largest trial level in `[lo, cap]` at which the free judgments are
    /// feasible; `lo` must already be feasible with `lo_point`.
    fn maximize_level(
        &self,
        levels: &[Level],
        lo: f64,
        lo_point: Point,
        cfg: &SolverConfig,
    ) -> Result<Stage, SolverError> {
        if let Some(point) = self.check(levels, cfg.lambda_cap, Some(&lo_point.weights))? {
            return Ok(Stage {
                level: cfg.lambda_cap,
                point,
                iterations: 0,
                clamped: true,
            });
        }
        let (mut lo, mut hi, mut best) = (lo, cfg.lambda_cap, lo_point);
        let mut iterations = 0;
        while hi - lo > cfg.bisection_tol {
            let mid = 0.5 * (lo + hi);
            iterations += 1;
            match self.check(levels, mid, Some(&best.weights))? {
                Some(p) => {
                    lo = mid;
                    best = p;
                }
                None => hi = mid,
            }
        }
        Ok(Stage {
            level: lo,
            point: best,
            iterations,
            clamped: cfg.lambda_cap - lo <= cfg.bisection_tol,
        })
    }

    /// Duals of the max-slack program at `trial`, one per constraint side.
    /// Only the free judgments share the slack; fixed ones must hold at
    /// their level.
    fn slack_duals(
        &self,
        levels: &[Level],
        trial: f64,
        hint: &[f64],
    ) -> Result<Vec<f64>, SolverError> {
        let mut objective = vec![0.0; self.n + 2];
        objective[self.n] = 1.0;
        objective[self.n + 1] = -1.0;
        let kept: Vec<Option<f64>> = levels
            .iter()
            .flat_map(|l| {
                let k = matches!(l, Level::Fixed(_)).then_some(-SLACK_MARGIN);
                [k, k]
            })
            .collect();
        let lp = self.build(levels, trial, objective, Slack::Frozen(&kept))?;
        Ok(self.solve_near(&lp, hint)?.duals)
    }

    /// Largest level the free judgments reach together, starting from level
    /// `start`, which `hint` attains. Each membership is a ratio of linear
    /// functions of the weights, so this is a generalized fractional program: the
    /// max-slack point at the current level lifts the level to the smallest
    /// free membership it attains, until that stops improving.
    fn raise_level(
        &self,
        levels: &[Level],
        start: f64,
        hint: &[f64],
        cfg: &SolverConfig,
    ) -> Result<(f64, bool, Vec<f64>), SolverError> {
        if let Some(p) = self.check(levels, cfg.lambda_cap, Some(hint))? {
            return Ok((cfg.lambda_cap, true, p.weights));
        }
        let mut level = start;
        let mut point = Point {
            weights: hint.to_vec(),
            slack: 0.0,
        };
        for _ in 0..RAISE_LIMIT {
            // each side's slack is weighed by its denominator at the last
            // point, which makes the iteration converge superlinearly
            let mut scale = vec![0.0; 2 * self.judgments.len()];
            for (k, (j, l)) in self.judgments.iter().zip(levels).enumerate() {
                if *l == Level::Free {
                    let wc = point.weights[j.col];
                    scale[2 * k] = (j.value.mode() - j.value.lower()) * wc;
                    scale[2 * k + 1] = (j.value.upper() - j.value.mode()) * wc;
                }
            }
            let mut objective = vec![0.0; self.n + 2];
            objective[self.n] = 1.0;
            objective[self.n + 1] = -1.0;
            let lp = self.build(levels, level, objective, Slack::Scaled(&scale))?;
            let sol = match self.solve_near(&lp, &point.weights) {
                Ok(sol) if sol.objective >= -FEAS_TOL => sol,
                Ok(_) | Err(LpError::Infeasible) => break,
                Err(e) => return Err(e.into()),
            };
            let weights: Vec<f64> = sol.x[..self.n].iter().map(|x| x + self.floor).collect();
            let next = self
                .judgments
                .iter()
                .zip(levels)
                .filter(|(_, l)| **l == Level::Free)
                .map(|(j, _)| tolerant_membership(&j.value, weights[j.row] / weights[j.col]))
                .fold(f64::INFINITY, f64::min)
                .min(cfg.lambda_cap);
            if next <= level + 0.01 * cfg.bisection_tol {
                break;
            }
            level = next;
            point = Point {
                weights,
                slack: sol.objective,
            };
        }
        Ok((
            level,
            cfg.lambda_cap - level <= cfg.bisection_tol,
            point.weights,
        ))
    }

    /// With every membership level fixed, picks the point whose constraint
    /// slacks are leximin-maximal. The frozen slacks pin every weight, so
    /// the result does not depend on item or judgment order.
    ///
    /// Each stage maximizes the slack shared by the unfrozen sides; sides
    /// with a positive dual are at that slack in every optimum and are
    /// frozen there.
    fn settle(&self, levels: &[Level], hint: &[f64]) -> Result<Option<Point>, SolverError> {
        let sides = 2 * self.judgments.len();
        let mut frozen: Vec<Option<f64>> = vec![None; sides];
        let hard = |i: usize| levels[i / 2] == Level::Hard;
        let mut point = None;
        loop {
            let free: Vec<usize> = (0..sides)
                .filter(|&i| !hard(i) && frozen[i].is_none())
                .collect();
            if free.is_empty() {
                return Ok(point);
            }
            let mut objective = vec![0.0; self.n + 2];
            objective[self.n] = 1.0;
            objective[self.n + 1] = -1.0;
            let lp = self.build(levels, 0.0, objective, Slack::Frozen(&frozen))?;
            let near = point.as_ref().map_or(hint, |p: &Point| &p.weights[..]);
            let sol = match self.solve_near(&lp, near) {
                Ok(sol) if sol.objective >= -FEAS_TOL => sol,
                Ok(_) | Err(LpError::Infeasible) => return Ok(point),
                Err(e) => return Err(e.into()),
            };
            let s = sol.objective;
            let mut blocking: Vec<usize> = free
                .iter()
                .copied()
                .filter(|&i| sol.duals[i] > DUAL_TOL)
                .collect();
            if blocking.is_empty() {
                blocking = free;
            }
            for i in blocking {
                frozen[i] = Some(s - SLACK_MARGIN);
            }
            point = Some(Point {
                weights: sol.x[..self.n].iter().map(|x| x + self.floor).collect(),
                slack: s,
            });
        }
    }

    /// Solves `lp` warm-started at `hint` with the largest slack that keeps
    /// every slacked row satisfied.
    fn solve_near(&self, lp: &LinearProgram, hint: &[f64]) -> Result<LpSolution, LpError> {
        let (sp, sn) = (self.n, self.n + 1);
        let mut start: Vec<f64> = hint.iter().map(|w| (w - self.floor).max(0.0)).collect();
        start.extend([0.0, 0.0]);
        let mut s = 1.0_f64;
        for c in lp.constraints() {
            let coef = c.coeffs[sp];
            if c.relation == Relation::Le && coef > 0.0 {
                let at: f64 = c.coeffs[..self.n]
                    .iter()
                    .zip(&start)
                    .map(|(a, x)| a * x)
                    .sum();
                s = s.min((c.rhs - at) / coef);
            }
        }
        if s.is_finite() {
            start[sp] = s.max(0.0);
            start[sn] = (-s).max(0.0);
        }
        lp.solve_from(&start)
    }

    fn check(
        &self,
        levels: &[Level],
        trial: f64,
        hint: Option<&[f64]>,
    ) -> Result<Option<Point>, SolverError> {
        match self.max_slack(levels, trial, hint) {
            Ok(p) if p.slack >= -FEAS_TOL => Ok(Some(p)),
            Ok(_) | Err(SolverError::Lp(LpError::Infeasible)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// `max s` subject to every non-crisp constraint holding with slack `s`.
    fn max_slack(
        &self,
        levels: &[Level],
        trial: f64,
        hint: Option<&[f64]>,
    ) -> Result<Point, SolverError> {
        let mut objective = vec![0.0; self.n + 2];
        objective[self.n] = 1.0;
        objective[self.n + 1] = -1.0;
        let lp = self.program(levels, trial, objective)?;
        let sol = match hint {
            Some(h) => self.solve_near(&lp, h)?,
            None => lp.solve()?,
        };
        Ok(Point {
            weights: sol.x[..self.n].iter().map(|x| x + self.floor).collect(),
            slack: sol.objective,
        })
    }

    /// Width of the interval weight `k` can take while every judgment
    /// still meets its level at `trial`.
    fn weight_range(
        &self,
        levels: &[Level],
        trial: f64,
        k: usize,
        hint: &[f64],
    ) -> Result<f64, SolverError> {
        let mut ends = [0.0; 2];
        for (end, sign) in ends.iter_mut().zip([1.0, -1.0]) {
            let mut objective = vec![0.0; self.n + 2];
            objective[k] = sign;
            let mut lp = self.program(levels, trial, objective)?;
            let mut no_deficit = vec![0.0; self.n + 2];
            no_deficit[self.n] = -1.0;
            no_deficit[self.n + 1] = 1.0;
            lp.constrain(no_deficit, Relation::Le, FEAS_TOL)?;
            *end = self.solve_near(&lp, hint)?.objective;
        }
        Ok(ends[0] + ends[1])
    }

    /// Constraint system at level `trial` over `x_k = w_k - floor >= 0`
    /// followed by the slack `s = s⁺ - s⁻` shared by all non-crisp rows.
    fn program(
        &self,
        levels: &[Level],
        trial: f64,
        objective: Vec<f64>,
    ) -> Result<LinearProgram, SolverError> {
        self.build(levels, trial, objective, Slack::Shared)
    }

    /// [`Self::program`] with a choice of how the slack enters each side.
    /// Side `2j` is the rising constraint of judgment `j` and `2j + 1` the
    /// falling one; the rows are added in that order, so side indices are
    /// also row indices.
    fn build(
        &self,
        levels: &[Level],
        trial: f64,
        objective: Vec<f64>,
        slack: Slack,
    ) -> Result<LinearProgram, SolverError> {
        let n = self.n;
        let eps = self.floor;
        let (sp, sn) = (n, n + 1);
        let mut lp = LinearProgram::maximize(objective);

        for (idx, (j, level)) in self.judgments.iter().zip(levels).enumerate() {
            let t = j.value;
            let (a, b, slacked) = match *level {
                Level::Hard => (t.lower(), t.upper(), false),
                Level::Free => bounds_at(&t, trial),
                Level::Fixed(v) => bounds_at(&t, v),
            };
            // a·w_c - w_r (+ s) <= 0
            let mut rise = vec![0.0; n + 2];
            rise[j.col] += a;
            rise[j.row] -= 1.0;
            // w_r - b·w_c (+ s) <= 0
            let mut fall = vec![0.0; n + 2];
            fall[j.row] += 1.0;
            fall[j.col] -= b;
            let mut rhs = [eps * (1.0 - a), eps * (b - 1.0)];
            for (side, row) in [&mut rise, &mut fall].into_iter().enumerate() {
                if !slacked {
                    continue;
                }
                let weight = match slack {
                    Slack::Shared => 1.0,
                    Slack::Frozen(f) => match f[2 * idx + side] {
                        Some(kept) => {
                            rhs[side] -= kept;
                            0.0
                        }
                        None => 1.0,
                    },
                    Slack::Scaled(w) => w[2 * idx + side],
                };
                row[sp] = weight;
                row[sn] = -weight;
            }
            lp.constrain(rise, Relation::Le, rhs[0])?;
            lp.constrain(fall, Relation::Le, rhs[1])?;
        }
        let mut sum = vec![1.0; n + 2];
        sum[sp] = 0.0;
        sum[sn] = 0.0;
        lp.constrain(sum, Relation::Eq, 1.0 - n as f64 * eps)?;
        let mut cap = vec![0.0; n + 2];
        cap[sp] = 1.0;
        lp.constrain(cap, Relation::Le, 1.0)?;
        Ok(lp)
    }

    /// Judged pairs whose constraints fail at the max-slack point for
    /// `trial` (all crisp pairs when even those are mutually inconsistent).
    fn violated_pairs(&self, levels: &[Level], trial: f64) -> Vec<(String, String)> {
        let pair = |j: &IndexedJudgment| (self.items[j.row].clone(), self.items[j.col].clone());
        match self.max_slack(levels, trial, None) {
            Ok(p) => self
                .judgments
                .iter()
                .filter(|j| {
                    let ratio = p.weights[j.row] / p.weights[j.col];
                    let (a, b, _) = if j.value.is_crisp() {
                        (j.value.lower(), j.value.upper(), false)
                    } else {
                        bounds_at(&j.value, trial)
                    };
                    ratio < a * (1.0 - CRISP_RTOL) || ratio > b * (1.0 + CRISP_RTOL)
                })
                .map(pair)
                .collect(),
            Err(_) => self
                .judgments
                .iter()
                .filter(|j| j.value.is_crisp())
                .map(pair)
                .collect(),
        }
    }
}

/// Ratio interval `[a, b]` a judgment allows at membership level `lambda`.
fn bounds_at(t: &Tfn, lambda: f64) -> (f64, f64, bool) {
    let a = t.lower() + lambda * (t.mode() - t.lower());
    let b = t.upper() - lambda * (t.upper() - t.mode());
    (a, b, true)
}
