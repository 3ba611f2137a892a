//! Dense two-phase revised simplex.
//!
//! Sized for the small feasibility programs the preference solver builds
//! (a handful of variables, a few dozen rows). All variables are
//! non-negative; the objective is maximized. The basis matrix is factored
//! afresh from the original rows at every iteration, so rounding never
//! compounds across pivots; at these sizes that costs next to nothing.
//! Entering columns follow Dantzig's rule, falling back to Bland's rule
//! when a phase runs long enough to suggest cycling.

use thiserror::Error;

/// Smallest improving reduced cost and smallest usable pivot element.
const PIVOT_EPS: f64 = 1e-9;
/// Preferred smallest pivot. Smaller pivots (down to `PIVOT_EPS`) leave the
/// basis nearly singular and are only taken when the step is not
/// degenerate.
const PIVOT_MIN: f64 = 1e-7;
/// Column entries above this (absolute, and relative to the column's
/// largest entry) limit the step in the ratio test.
const BLOCK_EPS: f64 = 1e-11;
const BLOCK_REL: f64 = 1e-9;
/// Phase one counts as feasible when the artificial sum is below this.
const FEAS_EPS: f64 = 1e-9;
/// Basic values below `-REVERT_EPS` (relative to the largest one) after a
/// pivot mark it as numerically unsound.
const REVERT_EPS: f64 = 1e-8;
/// Ratio slack allowed in the first pass of the ratio test.
const HARRIS_TOL: f64 = 1e-10;
/// Rows whose entries outside the artificial block are all below this are
/// treated as redundant when artificials leave the basis.
const EXPEL_EPS: f64 = 1e-7;
/// Largest constraint violation tolerated in a warm start.
const START_TOL: f64 = 1e-8;
/// Pivots per program dimension before switching to Bland's rule.
const CYCLE_GUARD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("basis matrix became numerically singular")]
    Singular,
    #[error("constraint has {got} coefficients, expected {expected}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
    /// Shadow price of each constraint, in the order added: the rate at
    /// which the optimum grows as the right-hand side grows. Constraints
    /// dropped as redundant report zero.
    pub duals: Vec<f64>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<f64>,
        relation: Relation,
        rhs: f64,
    ) -> Result<&mut Self, LpError> {
        if coeffs.len() != self.num_vars() {
            return Err(LpError::Dimension {
                expected: self.num_vars(),
                got: coeffs.len(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(self)
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Simplex::build(self)
            .solve(&self.objective)
            .map(|(sol, _)| sol)
    }

    /// Largest violation of any constraint at `x`, or of `x >= 0`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| {
            let v: f64 = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            match c.relation {
                Relation::Le => v - c.rhs,
                Relation::Ge => c.rhs - v,
                Relation::Eq => (v - c.rhs).abs(),
            }
        });
        rows.chain(x.iter().map(|v| -v)).fold(0.0, f64::max)
    }

    /// Like [`Self::solve`], starting from a known feasible `start`.
    ///
    /// Writing `x = start + d⁺ - d⁻` puts the start at the origin with every
    /// right-hand side non-negative, so phase one has nothing to do. That
    /// matters for thin feasible sets, where a cold phase one must find a
    /// sliver a few ulps wide. A start violating some constraint by more
    /// than `START_TOL` falls back to the cold solve, as does a warm solve
    /// that cannot prove its optimum.
    pub fn solve_from(&self, start: &[f64]) -> Result<LpSolution, LpError> {
        let n = self.num_vars();
        if start.len() != n {
            return Err(LpError::Dimension {
                expected: n,
                got: start.len(),
            });
        }
        if self.violation(start) > START_TOL {
            return self.solve();
        }
        let x0: Vec<f64> = start.iter().map(|v| v.max(0.0)).collect();
        let mut objective = self.objective.clone();
        objective.extend(self.objective.iter().map(|c| -c));
        let mut shifted = LinearProgram::maximize(objective);
        for c in &self.constraints {
            let at: f64 = c.coeffs.iter().zip(&x0).map(|(a, b)| a * b).sum();
            let room = c.rhs - at;
            let rhs = match c.relation {
                Relation::Le => room.max(0.0),
                Relation::Ge => room.min(0.0),
                Relation::Eq => 0.0,
            };
            let mut coeffs = c.coeffs.clone();
            coeffs.extend(c.coeffs.iter().map(|a| -a));
            shifted.constrain(coeffs, c.relation, rhs)?;
        }
        for (k, &v) in x0.iter().enumerate() {
            let mut coeffs = vec![0.0; 2 * n];
            coeffs[n + k] = 1.0;
            shifted.constrain(coeffs, Relation::Le, v)?;
        }
        let (sol, proven) = match Simplex::build(&shifted).solve(&shifted.objective) {
            Ok(r) => r,
            Err(_) => return self.solve(),
        };
        let x: Vec<f64> = (0..n)
            .map(|k| (x0[k] + sol.x[k] - sol.x[n + k]).max(0.0))
            .collect();
        let objective = x.iter().zip(&self.objective).map(|(a, c)| a * c).sum();
        let mut duals = sol.duals;
        duals.truncate(self.constraints.len());
        let warm = LpSolution {
            x,
            objective,
            pivots: sol.pivots,
            duals,
        };
        if proven {
            return Ok(warm);
        }
        // the start proves feasibility, so a failed cold solve is a
        // numerical artifact
        match self.solve() {
            Ok(cold) if cold.objective > warm.objective => Ok(cold),
            _ => Ok(warm),
        }
    }
}

/// `A x = b, x >= 0` with slack and artificial columns appended and every
/// `b` non-negative.
struct Simplex {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    /// -1 for rows negated to make `b` non-negative
    signs: Vec<f64>,
    /// original rows still in play; redundant rows are dropped after phase one
    active: Vec<usize>,
    /// basic column for each active row position
    basis: Vec<usize>,
    n_struct: usize,
    /// artificials occupy `art_start..cols`
    art_start: usize,
    cols: usize,
    pivots: usize,
    /// cleared when a phase ends with an improving column left unused
    /// because no numerically sound pivot existed for it
    proven: bool,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let flipped = |c: &Constraint| {
            if c.rhs >= 0.0 {
                return c.relation;
            }
            match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            }
        };
        let n_art = lp
            .constraints
            .iter()
            .filter(|c| flipped(c) != Relation::Le)
            .count();

        let art_start = n + n_slack;
        let cols = art_start + n_art;
        let mut a = vec![vec![0.0; cols]; m];
        let mut b = vec![0.0; m];
        let mut signs = vec![1.0; m];
        let mut basis = vec![0; m];
        let (mut slack, mut art) = (n, art_start);
        for (i, c) in lp.constraints.iter().enumerate() {
            let sign = if c.rhs < 0.0 { -1.0 } else { 1.0 };
            for (dst, v) in a[i].iter_mut().zip(&c.coeffs) {
                *dst = sign * v;
            }
            b[i] = sign * c.rhs;
            signs[i] = sign;
            let rel = flipped(c);
            if c.relation != Relation::Eq {
                a[i][slack] = if rel == Relation::Le { 1.0 } else { -1.0 };
                if rel == Relation::Le {
                    basis[i] = slack;
                }
                slack += 1;
            }
            if rel != Relation::Le {
                a[i][art] = 1.0;
                basis[i] = art;
                art += 1;
            }
        }
        Simplex {
            a,
            b,
            signs,
            active: (0..m).collect(),
            basis,
            n_struct: n,
            art_start,
            cols,
            pivots: 0,
            proven: true,
        }
    }

    /// Optimal solution, and whether optimality was proven rather than
    /// assumed after a column had to be skipped.
    fn solve(mut self, objective: &[f64]) -> Result<(LpSolution, bool), LpError> {
        if self.art_start < self.cols {
            let mut phase1 = vec![0.0; self.cols];
            for c in phase1.iter_mut().skip(self.art_start) {
                *c = -1.0;
            }
            let value = self.optimize(&phase1, self.cols, true)?;
            if value < -FEAS_EPS {
                return Err(LpError::Infeasible);
            }
            self.expel_artificials()?;
        }
        let mut costs = vec![0.0; self.cols];
        costs[..self.n_struct].copy_from_slice(objective);
        self.optimize(&costs, self.art_start, false)?;

        let lu = self.factor()?;
        let values = lu.solve(&self.rhs());
        let cb: Vec<f64> = self.basis.iter().map(|&j| costs[j]).collect();
        let mut duals = vec![0.0; self.a.len()];
        for (&r, y) in self.active.iter().zip(lu.solve_transposed(&cb)) {
            duals[r] = self.signs[r] * y;
        }
        let mut x = vec![0.0; self.n_struct];
        for (&j, &v) in self.basis.iter().zip(&values) {
            if j < self.n_struct {
                x[j] = v.max(0.0);
            }
        }
        let objective = x.iter().zip(objective).map(|(a, c)| a * c).sum();
        let solution = LpSolution {
            x,
            objective,
            pivots: self.pivots,
            duals,
        };
        Ok((solution, self.proven))
    }

    fn rhs(&self) -> Vec<f64> {
        self.active.iter().map(|&r| self.b[r]).collect()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        self.active.iter().map(|&r| self.a[r][j]).collect()
    }

    fn factor(&self) -> Result<Lu, LpError> {
        let m: Vec<Vec<f64>> = self
            .active
            .iter()
            .map(|&r| self.basis.iter().map(|&j| self.a[r][j]).collect())
            .collect();
        Lu::factor(m).ok_or(LpError::Singular)
    }

    /// Runs simplex iterations for `costs`, allowing only columns below
    /// `enter_limit` to enter. Returns the optimal objective value.
    ///
    /// With `bounded` set the objective is known to be bounded (phase one),
    /// so a column without a leaving row only looks improving through
    /// rounding and is skipped until the next pivot.
    fn optimize(
        &mut self,
        costs: &[f64],
        enter_limit: usize,
        bounded: bool,
    ) -> Result<f64, LpError> {
        let mut skipped = vec![false; enter_limit];
        let start = self.pivots;
        let guard = CYCLE_GUARD * (self.active.len() + self.cols);
        let mut last: Option<(usize, usize, usize)> = None;
        let (mut best, mut stall) = (f64::NEG_INFINITY, 0);
        // set once the strict pivot rules leave improving columns unused
        let mut lenient = false;
        loop {
            let lu = match self.factor() {
                Ok(lu) => lu,
                Err(_) if last.is_some() => {
                    // the last pivot left a singular basis; undo it
                    let (pos, old, enter) = last.take().expect("checked");
                    self.basis[pos] = old;
                    self.pivots -= 1;
                    skipped[enter] = true;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let raw = lu.solve(&self.rhs());
            if let Some((pos, old, enter)) = last.take() {
                // a pivot that lost primal feasibility was numerically
                // unsound; undo it and try another column
                let scale = raw.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
                if raw.iter().any(|&v| v < -REVERT_EPS * scale) {
                    self.basis[pos] = old;
                    self.pivots -= 1;
                    skipped[enter] = true;
                    continue;
                }
                skipped.iter_mut().for_each(|s| *s = false);
            }
            let xb: Vec<f64> = raw.into_iter().map(|v| v.max(0.0)).collect();
            let cb: Vec<f64> = self.basis.iter().map(|&j| costs[j]).collect();
            let y = lu.solve_transposed(&cb);

            let mut in_basis = vec![false; self.cols];
            for &j in &self.basis {
                in_basis[j] = true;
            }
            // reduced cost of column `j`, and how far it clears the roundoff
            // in its own computation
            let reduced = |j: usize| {
                let (mut d, mut size) = (costs[j], costs[j].abs());
                for (&r, yr) in self.active.iter().zip(&y) {
                    let t = yr * self.a[r][j];
                    d -= t;
                    size += t.abs();
                }
                (d, d - PIVOT_EPS * (1.0 + size))
            };
            let candidates = (0..enter_limit).filter(|&j| !in_basis[j] && !skipped[j]);
            let enter = if self.pivots - start < guard {
                candidates
                    .map(|j| (j, reduced(j)))
                    .filter(|&(_, (_, clear))| clear > 0.0)
                    .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
                    .map(|(j, _)| j)
            } else {
                candidates.into_iter().find(|&j| reduced(j).1 > 0.0)
            };
            let value: f64 = cb.iter().zip(&xb).map(|(c, x)| c * x).sum();
            if value > best + PIVOT_EPS * (1.0 + best.abs()) {
                (best, stall) = (value, 0);
            } else {
                stall += 1;
            }
            // past the guard, reduced costs at roundoff level can swap a
            // pair of columns forever without moving the objective
            let enter = enter.filter(|_| self.pivots - start < guard || stall < guard);
            let Some(enter) = enter else {
                if !lenient && skipped.iter().any(|&s| s) {
                    // a column skipped for want of a sound pivot still
                    // improves; retry allowing small degenerate pivots
                    lenient = true;
                    skipped.iter_mut().for_each(|s| *s = false);
                    continue;
                }
                self.proven &= !skipped
                    .iter()
                    .enumerate()
                    .any(|(j, &s)| s && reduced(j).1 > 0.0);
                return Ok(value);
            };

            let u = lu.solve(&self.column(enter));
            let bland = self.pivots - start >= guard;
            let pick = |min_pivot| {
                if bland {
                    self.bland_row(&xb, &u, min_pivot)
                } else {
                    harris_row(&xb, &u, min_pivot)
                }
            };
            // a tiny pivot is accepted only when it makes actual progress,
            // or in lenient mode
            let leave = pick(PIVOT_MIN)
                .or_else(|| pick(PIVOT_EPS).filter(|&r| lenient || xb[r] > FEAS_EPS));
            let Some(leave) = leave else {
                if bounded || u.iter().any(|&v| v > PIVOT_EPS) {
                    skipped[enter] = true;
                    continue;
                }
                return Err(LpError::Unbounded);
            };
            last = Some((leave, self.basis[leave], enter));
            self.basis[leave] = enter;
            self.pivots += 1;
        }
    }

    /// Bland: minimum ratio, ties to the lowest basic index.
    fn bland_row(&self, xb: &[f64], u: &[f64], min_pivot: f64) -> Option<usize> {
        let bound = step_bound(xb, u, 1e-12)?;
        xb.iter()
            .zip(u)
            .enumerate()
            .filter(|(_, (&x, &a))| a > min_pivot && x / a <= bound)
            .min_by_key(|(i, _)| self.basis[*i])
            .map(|(i, _)| i)
    }

    /// After phase one, swaps zero-valued artificials out of the basis and
    /// drops rows that turn out to be redundant.
    fn expel_artificials(&mut self) -> Result<(), LpError> {
        let mut p = 0;
        while p < self.basis.len() {
            if self.basis[p] < self.art_start {
                p += 1;
                continue;
            }
            let lu = self.factor()?;
            let mut unit = vec![0.0; self.basis.len()];
            unit[p] = 1.0;
            let rho = lu.solve_transposed(&unit);
            let in_basis: Vec<usize> = self.basis.clone();
            let col = (0..self.art_start)
                .filter(|j| !in_basis.contains(j))
                .map(|j| {
                    let alpha: f64 = self
                        .active
                        .iter()
                        .zip(&rho)
                        .map(|(&r, w)| w * self.a[r][j])
                        .sum();
                    (j, alpha.abs())
                })
                .filter(|&(_, a)| a > EXPEL_EPS)
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(j, _)| j);
            match col {
                Some(j) => {
                    self.basis[p] = j;
                    self.pivots += 1;
                    p += 1;
                }
                None => {
                    // the row is a combination of the others; dropping the
                    // one with the largest weight in e_p^T B^-1 keeps the
                    // reduced basis nonsingular
                    let k = (0..rho.len())
                        .max_by(|&a, &b| rho[a].abs().total_cmp(&rho[b].abs()))
                        .expect("non-empty basis");
                    self.active.remove(k);
                    self.basis.remove(p);
                }
            }
        }
        Ok(())
    }
}

/// Two-pass ratio test: rows whose ratio is within a small tolerance of
/// the minimum compete, and the largest pivot element wins.
fn harris_row(xb: &[f64], u: &[f64], min_pivot: f64) -> Option<usize> {
    let bound = step_bound(xb, u, HARRIS_TOL)?;
    xb.iter()
        .zip(u)
        .enumerate()
        .filter(|(_, (&x, &a))| a > min_pivot && x / a <= bound)
        .max_by(|(_, (_, a)), (_, (_, b))| a.total_cmp(b))
        .map(|(i, _)| i)
}

/// Longest step every row allows when each may dip `tol` below zero. Rows
/// too small to pivot on still bound the step.
fn step_bound(xb: &[f64], u: &[f64], tol: f64) -> Option<f64> {
    let floor = BLOCK_EPS.max(BLOCK_REL * u.iter().fold(0.0_f64, |m, a| m.max(a.abs())));
    xb.iter()
        .zip(u)
        .filter(|(_, &a)| a > floor)
        .map(|(&x, &a)| (x + tol) / a)
        .min_by(f64::total_cmp)
}

/// LU factors with partial pivoting: row `i` of `L·U` is row `perm[i]` of
/// the factored matrix.
struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Option<Self> {
        let k = a.len();
        let mut perm: Vec<usize> = (0..k).collect();
        for col in 0..k {
            let p = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
            if a[p][col].abs() < 1e-13 {
                return None;
            }
            a.swap(col, p);
            perm.swap(col, p);
            let (top, rest) = a.split_at_mut(col + 1);
            let pivot = &top[col];
            for row in rest {
                let f = row[col] / pivot[col];
                row[col] = f;
                if f != 0.0 {
                    for (x, p) in row[col + 1..].iter_mut().zip(&pivot[col + 1..]) {
                        *x -= f * p;
                    }
                }
            }
        }
        Some(Lu { lu: a, perm })
    }

    /// Solves `B x = rhs`.
    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let k = self.lu.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..k {
            let s: f64 = (0..i).map(|j| self.lu[i][j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..k).rev() {
            let s: f64 = (i + 1..k).map(|j| self.lu[i][j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i][i];
        }
        x
    }

    /// Solves `Bᵀ y = rhs`.
    fn solve_transposed(&self, rhs: &[f64]) -> Vec<f64> {
        let k = self.lu.len();
        let mut z = rhs.to_vec();
        for i in 0..k {
            let s: f64 = (0..i).map(|j| self.lu[j][i] * z[j]).sum();
            z[i] = (z[i] - s) / self.lu[i][i];
        }
        for i in (0..k).rev() {
            let s: f64 = (i + 1..k).map(|j| self.lu[j][i] * z[j]).sum();
            z[i] -= s;
        }
        let mut y = vec![0.0; k];
        for (i, &p) in self.perm.iter().enumerate() {
            y[p] = z[i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(obj: &[f64], cons: &[(&[f64], Relation, f64)]) -> LinearProgram {
        let mut p = LinearProgram::maximize(obj.to_vec());
        for (c, r, b) in cons {
            p.constrain(c.to_vec(), *r, *b).unwrap();
        }
        p
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let s = lp(
            &[3.0, 5.0],
            &[
                (&[1.0, 0.0], Relation::Le, 4.0),
                (&[0.0, 2.0], Relation::Le, 12.0),
                (&[3.0, 2.0], Relation::Le, 18.0),
            ],
        )
        .solve()
        .unwrap();
        assert!((s.objective - 36.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9 && (s.x[1] - 6.0).abs() < 1e-9);
        for (d, want) in s.duals.iter().zip([0.0, 1.5, 1.0]) {
            assert!((d - want).abs() < 1e-9, "{:?}", s.duals);
        }
    }

    #[test]
    fn equality_and_ge_need_phase_one() {
        // max x - y, x + y = 2, x >= 0.5, x <= y -> (1, 1), value 0
        let s = lp(
            &[1.0, -1.0],
            &[
                (&[1.0, 1.0], Relation::Eq, 2.0),
                (&[1.0, 0.0], Relation::Ge, 0.5),
                (&[1.0, -1.0], Relation::Le, 0.0),
            ],
        )
        .solve()
        .unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-9 && (s.x[1] - 1.0).abs() < 1e-9);
        assert!(s.objective.abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // -x <= -3  (x >= 3), max -x -> x = 3
        let s = lp(&[-1.0], &[(&[-1.0], Relation::Le, -3.0)])
            .solve()
            .unwrap();
        assert!((s.x[0] - 3.0).abs() < 1e-12);
        // raising the rhs to -2 allows x = 2, improving the objective by 1
        assert!((s.duals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let inf = lp(
            &[1.0],
            &[(&[1.0], Relation::Le, 1.0), (&[1.0], Relation::Ge, 2.0)],
        );
        assert_eq!(inf.solve(), Err(LpError::Infeasible));
        let unb = lp(&[1.0, 0.0], &[(&[1.0, -1.0], Relation::Le, 1.0)]);
        assert_eq!(unb.solve(), Err(LpError::Unbounded));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let s = lp(
            &[1.0, 2.0],
            &[
                (&[1.0, 1.0], Relation::Eq, 1.0),
                (&[2.0, 2.0], Relation::Eq, 2.0),
            ],
        )
        .solve()
        .unwrap();
        assert!((s.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example cycles under the textbook rule without Bland.
        let s = lp(
            &[0.75, -150.0, 0.02, -6.0],
            &[
                (&[0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0),
                (&[0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0),
                (&[0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0),
            ],
        )
        .solve()
        .unwrap();
        assert!((s.objective - 0.05).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch() {
        let mut p = LinearProgram::maximize(vec![1.0, 1.0]);
        assert_eq!(
            p.constrain(vec![1.0], Relation::Le, 1.0).unwrap_err(),
            LpError::Dimension {
                expected: 2,
                got: 1
            }
        );
    }

    /// Brute-force optimum of a bounded 2-variable LP: best feasible point
    /// among all pairwise intersections of constraint lines and axes.
    fn vertex_oracle(obj: [f64; 2], cons: &[([f64; 2], f64)]) -> Option<f64> {
        let mut lines: Vec<([f64; 2], f64)> = cons.to_vec();
        lines.push(([1.0, 0.0], 0.0));
        lines.push(([0.0, 1.0], 0.0));
        let feasible = |x: f64, y: f64| {
            x >= -1e-9 && y >= -1e-9 && cons.iter().all(|(a, b)| a[0] * x + a[1] * y <= b + 1e-9)
        };
        let mut best: Option<f64> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a, b) = lines[i];
                let (c, d) = lines[j];
                let det = a[0] * c[1] - a[1] * c[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (b * c[1] - a[1] * d) / det;
                let y = (a[0] * d - b * c[0]) / det;
                if feasible(x, y) {
                    let v = obj[0] * x + obj[1] * y;
                    best = Some(best.map_or(v, |bv: f64| bv.max(v)));
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration(
            obj in proptest::array::uniform2(-5.0f64..5.0),
            rows in proptest::collection::vec((proptest::array::uniform2(-3.0f64..3.0), -2.0f64..6.0), 1..5),
        ) {
            // box keeps the problem bounded
            let mut cons = rows.clone();
            cons.push(([1.0, 0.0], 10.0));
            cons.push(([0.0, 1.0], 10.0));
            let mut p = LinearProgram::maximize(obj.to_vec());
            for (a, b) in &cons {
                p.constrain(a.to_vec(), Relation::Le, *b).unwrap();
            }
            match (p.solve(), vertex_oracle(obj, &cons)) {
                (Ok(s), Some(v)) => prop_assert!((s.objective - v).abs() < 1e-6, "{} vs {}", s.objective, v),
                (Err(LpError::Infeasible), None) => {}
                (got, want) => prop_assert!(false, "simplex {:?} vs oracle {:?}", got, want),
            }
        }
    }

    fn worst_violation(p: &LinearProgram, x: &[f64]) -> f64 {
        p.constraints()
            .iter()
            .map(|c| {
                let v: f64 = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                match c.relation {
                    Relation::Le => v - c.rhs,
                    Relation::Ge => c.rhs - v,
                    Relation::Eq => (v - c.rhs).abs(),
                }
            })
            .fold(f64::MIN, f64::max)
    }

    #[test]
    fn near_parallel_rows_stay_feasible() {
        // frozen-slack program from the weight refinement; a dense tableau
        // drifted far off the feasible set on this one
        let mut p = LinearProgram::maximize(vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
        p.constrain(
            vec![0.0, 0.0, -1.0, 0.0, 0.6413606492744761, 1.0, -1.0],
            Relation::Le,
            3.5863935072552386e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, 1.0, 0.0, -0.9194092766248723, 1.0, -1.0],
            Relation::Le,
            -8.059072337512773e-8,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.5120749679414525, -1.0, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            4.879250320585475e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, -0.6574153111454133, 1.0, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            -3.425846888545867e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, 0.9066552216006086, -1.0, 0.0, 1.0, -1.0],
            Relation::Le,
            9.334477839939137e-8,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, -1.5396694644384672, 1.0, 0.0, 1.0, -1.0],
            Relation::Le,
            5.396694644384672e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, 0.0, 0.41381416164283763, -1.0, 1.0, -1.0],
            Relation::Le,
            5.861858383571623e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, 0.0, -0.7064213732346577, 1.0, 0.0, 0.0],
            Relation::Le,
            -2.943869853454984e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, -1.0, 0.0, 0.3860197305144606, 0.0, 1.0, -1.0],
            Relation::Le,
            6.139802694855394e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 1.0, 0.0, -0.9879449808248725, 0.0, 0.0, 0.0],
            Relation::Le,
            -1.2863377755283596e-8,
        )
        .unwrap();
        p.constrain(
            vec![0.2888504236808175, 0.0, 0.0, -1.0, 0.0, 1.0, -1.0],
            Relation::Le,
            7.111495763191825e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.1707807510789154, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            Relation::Le,
            1.6997239249875936e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.8270645318215506, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
            Relation::Le,
            1.7212710959829332e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.560610294298013, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0],
            Relation::Le,
            5.606102942980129e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.0, 0.0, 1.3150781876516164, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            -3.1507818765161644e-7,
        )
        .unwrap();
        p.constrain(
            vec![1.0, 0.0, -2.307524574257848, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            1.3075245742578478e-6,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.3491864485740521, 0.0, 0.0, -1.0, 1.0, -1.0],
            Relation::Le,
            6.508135514259479e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, -0.7150414223115489, 0.0, 0.0, 1.0, 1.0, -1.0],
            Relation::Le,
            -2.849585776884511e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.0, 0.46689382237219257, 0.0, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            5.331061776278074e-7,
        )
        .unwrap();
        p.constrain(
            vec![1.0, -0.8645530992292153, 0.0, 0.0, 0.0, 0.0, 0.0],
            Relation::Le,
            -1.3625525935094077e-7,
        )
        .unwrap();
        p.constrain(
            vec![1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0],
            Relation::Eq,
            0.999995,
        )
        .unwrap();
        p.constrain(vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0)
            .unwrap();
        let s = p.solve().unwrap();
        assert!(worst_violation(&p, &s.x) < 1e-10, "{s:?}");
        assert!(s.objective > -1e-9);
    }

    #[test]
    fn tiny_degenerate_pivots_are_rejected() {
        // a pivot of order 1e-6 on a row sitting just below zero used to
        // push the basis infeasible by 7e-5
        let mut p = LinearProgram::maximize(vec![0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
        p.constrain(
            vec![1.1137053394197092, -1.0, 0.0, 0.0, 1.0, -1.0],
            Relation::Le,
            -1.1370533941970916e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.229868401159591, 1.0, 0.0, 0.0, 0.0, 0.0],
            Relation::Le,
            2.0486892701025194e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, -1.0, 0.4538188799026084, 1.0, -1.0],
            Relation::Le,
            5.461811200973916e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 0.0, 1.0, -0.505348485522874, 1.0, -1.0],
            Relation::Le,
            -4.946515144771259e-7,
        )
        .unwrap();
        p.constrain(
            vec![-1.0, 0.0, 0.5412374510508292, 0.0, 1.0, -1.0],
            Relation::Le,
            4.5876254894917077e-7,
        )
        .unwrap();
        p.constrain(
            vec![1.0, 0.0, -0.5948651693516517, 0.0, 1.0, -1.0],
            Relation::Le,
            -4.051348306483483e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, -1.0, 0.6107598795901621, 0.0, 1.0, -1.0],
            Relation::Le,
            3.8924012040983787e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 1.0, -0.7316058150109481, 0.0, 1.0, -1.0],
            Relation::Le,
            -2.6839418498905186e-7,
        )
        .unwrap();
        p.constrain(
            vec![3.3265248466778865, 0.0, 0.0, -1.0, 0.0, 0.0],
            Relation::Le,
            -2.3515243208272255e-6,
        )
        .unwrap();
        p.constrain(
            vec![-3.5942668263374253, 0.0, 0.0, 1.0, 1.0, -1.0],
            Relation::Le,
            2.5942668263374253e-6,
        )
        .unwrap();
        p.constrain(
            vec![0.0, -1.0, 0.0, 0.36971555273739887, 0.0, 0.0],
            Relation::Le,
            6.05284973113262e-7,
        )
        .unwrap();
        p.constrain(
            vec![0.0, 1.0, 0.0, -0.4339149350944761, 1.0, -1.0],
            Relation::Le,
            -5.660850649055239e-7,
        )
        .unwrap();
        p.constrain(vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0], Relation::Eq, 0.999996)
            .unwrap();
        p.constrain(vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0)
            .unwrap();
        let s = p.solve().unwrap();
        assert!(worst_violation(&p, &s.x) < 1e-10, "{s:?}");
        assert!(s.objective > -1e-9);
    }

    #[test]
    fn roundoff_entries_do_not_block_the_step() {
        // scaled-slack program whose cold phase two met a 1e-8 column entry
        // on a zero row; letting it block stalled at the phase-one vertex
        let text = include_str!("testdata/thin_slack.lp");
        let mut p = LinearProgram::maximize(vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
        let mut start = Vec::new();
        for line in text.lines() {
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap();
            let nums: Vec<f64> = parts.map(|v| v.parse().unwrap()).collect();
            match tag {
                "S" => start = nums,
                _ => {
                    let rel = if tag == "E" {
                        Relation::Eq
                    } else {
                        Relation::Le
                    };
                    let (rhs, coeffs) = nums.split_last().unwrap();
                    p.constrain(coeffs.to_vec(), rel, *rhs).unwrap();
                }
            }
        }
        let best = 0.1182028915;
        let cold = p.solve().unwrap();
        assert!((cold.objective - best).abs() < 1e-8, "{}", cold.objective);
        assert!(worst_violation(&p, &cold.x) < 1e-8);

        // warm start: the given weights with just enough negative slack
        let need = p.constraints()[..30]
            .iter()
            .filter(|c| c.coeffs[7] < 0.0)
            .map(|c| {
                let v: f64 = c.coeffs[..6].iter().zip(&start).map(|(a, b)| a * b).sum();
                (v - c.rhs) / -c.coeffs[7]
            })
            .fold(0.0, f64::max);
        start.extend([0.0, need]);
        let warm = p.solve_from(&start).unwrap();
        assert!((warm.objective - best).abs() < 1e-8, "{}", warm.objective);
    }
}
