//! Exact two-phase primal simplex over rationals with Bland's rule.
//!
//! Problems have the form `minimize c·x subject to A x (≤|≥|=) b, x ≥ 0`.
//! The solver returns the optimal point together with dual multipliers read
//! off the final tableau, and [`LinearProgram::check_certificate`] verifies
//! primal feasibility, dual feasibility and equality of both objectives.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    /// Minimized.
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub values: Vec<Rational>,
    pub objective: Rational,
    /// One multiplier per constraint: `≥ 0` on `Ge` rows, `≤ 0` on `Le` rows.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("the linear program is infeasible")]
    Infeasible,
    #[error("the linear program is unbounded")]
    Unbounded,
    #[error("constraint {row} has {got} coefficients, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("certificate check failed: {0}")]
    BadCertificate(String),
}

struct Tableau {
    // rows[i] = [a_i0 .. a_i(cols-1), rhs]
    rows: Vec<Vec<Rational>>,
    // reduced costs, last entry = -objective
    cost: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule until optimal. `allowed(j)` gates entering columns.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> Result<(), LpError> {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| allowed(j) && self.cost[j].is_negative())
            else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(row, enter);
        }
    }
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let nvars = self.variable_count();
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != nvars {
                return Err(LpError::DimensionMismatch {
                    row,
                    expected: nvars,
                    got: c.coeffs.len(),
                });
            }
        }
        let m = self.constraints.len();

        // Normalize to nonnegative right-hand sides.
        let mut flipped = vec![false; m];
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.rhs.is_negative() {
                    flipped[i] = true;
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        // Column layout: originals, one slack/surplus per inequality, then
        // one artificial per Ge/Eq row.
        let mut slack_col = vec![None; m];
        let mut next = nvars;
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            if *rel != Relation::Eq {
                slack_col[i] = Some(next);
                next += 1;
            }
        }
        let first_artificial = next;
        let mut art_col = vec![None; m];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            if *rel != Relation::Le {
                art_col[i] = Some(next);
                next += 1;
            }
        }
        let cols = next;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        // the column holding +e_i at the start, used to read duals
        let mut unit_col = Vec::with_capacity(m);
        for (i, (coeffs, rel, rhs)) in normalized.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols + 1];
            row[..nvars].clone_from_slice(coeffs);
            match rel {
                Relation::Le => row[slack_col[i].unwrap()] = Rational::from_integer(1.into()),
                Relation::Ge => row[slack_col[i].unwrap()] = Rational::from_integer((-1).into()),
                Relation::Eq => {}
            }
            if let Some(a) = art_col[i] {
                row[a] = Rational::from_integer(1.into());
            }
            row[cols] = rhs.clone();
            let start = art_col[i].or(slack_col[i]).unwrap();
            basis.push(start);
            unit_col.push(start);
            rows.push(row);
        }

        let is_artificial = |j: usize| j >= first_artificial && j < cols;
        let mut t = Tableau {
            rows,
            cost: vec![Rational::zero(); cols + 1],
            basis,
            cols,
        };

        // Phase 1: minimize the sum of artificials.
        if first_artificial < cols {
            for j in first_artificial..cols {
                t.cost[j] = Rational::from_integer(1.into());
            }
            for i in 0..m {
                if is_artificial(t.basis[i]) {
                    let row = t.rows[i].clone();
                    for (x, y) in t.cost.iter_mut().zip(&row) {
                        *x -= y;
                    }
                }
            }
            t.optimize(|_| true)?;
            if !t.cost[cols].is_zero() {
                return Err(LpError::Infeasible);
            }
            // Drive remaining zero-level artificials out of the basis.
            for i in 0..m {
                if is_artificial(t.basis[i]) {
                    if let Some(j) = (0..first_artificial).find(|&j| !t.rows[i][j].is_zero()) {
                        t.pivot(i, j);
                    }
                }
            }
        }

        // Phase 2: reduced costs for the true objective.
        let mut cost = vec![Rational::zero(); cols + 1];
        cost[..nvars].clone_from_slice(&self.objective);
        for i in 0..m {
            let b = t.basis[i];
            if b < nvars && !self.objective[b].is_zero() {
                let cb = self.objective[b].clone();
                for (x, y) in cost.iter_mut().zip(&t.rows[i]) {
                    if !y.is_zero() {
                        *x -= &cb * y;
                    }
                }
            }
        }
        t.cost = cost;
        t.optimize(|j| !is_artificial(j))?;

        let mut values = vec![Rational::zero(); nvars];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < nvars {
                values[b] = t.rows[i][cols].clone();
            }
        }
        let objective = -t.cost[cols].clone();
        let duals = (0..m)
            .map(|i| {
                let y = -t.cost[unit_col[i]].clone();
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(LpSolution {
            values,
            objective,
            duals,
        })
    }

    /// Verifies that `solution` is primal feasible, its duals are dual
    /// feasible, and `c·x = b·y`, which together prove optimality.
    pub fn check_certificate(&self, solution: &LpSolution) -> Result<(), LpError> {
        let fail = |msg: String| Err(LpError::BadCertificate(msg));
        let n = self.variable_count();
        if solution.values.len() != n || solution.duals.len() != self.constraints.len() {
            return fail("dimension mismatch".into());
        }
        if let Some(j) = solution.values.iter().position(|x| x.is_negative()) {
            return fail(format!("variable {j} is negative"));
        }
        let primal: Rational = dot(&self.objective, &solution.values);
        if primal != solution.objective {
            return fail(format!("reported objective {} != c·x = {primal}", solution.objective));
        }
        let mut reduced = self.objective.clone();
        let mut dual_obj = Rational::zero();
        for (i, (c, y)) in self.constraints.iter().zip(&solution.duals).enumerate() {
            let lhs = dot(&c.coeffs, &solution.values);
            let (ok, sign_ok) = match c.relation {
                Relation::Le => (lhs <= c.rhs, !y.is_positive()),
                Relation::Ge => (lhs >= c.rhs, !y.is_negative()),
                Relation::Eq => (lhs == c.rhs, true),
            };
            if !ok {
                return fail(format!("constraint {i} violated"));
            }
            if !sign_ok {
                return fail(format!("dual multiplier {i} has the wrong sign"));
            }
            for (r, a) in reduced.iter_mut().zip(&c.coeffs) {
                *r -= y * a;
            }
            dual_obj += y * &c.rhs;
        }
        if let Some(j) = reduced.iter().position(|r| r.is_negative()) {
            return fail(format!("dual constraint for variable {j} violated"));
        }
        if dual_obj != primal {
            return fail(format!("duality gap: primal {primal}, dual {dual_obj}"));
        }
        Ok(())
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
