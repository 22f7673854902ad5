//! Lower bounds on the largest monochromatic component from covers by
//! components.
//!
//! If components of total weight `x` cover the vertex set `γ` times on
//! average and every component has at most `z·C(n,2)` edges, then
//! `z(r-γ)² ≥ max(1-xz, 0)²`. Solving for `z` gives
//!
//! ```text
//! z ≥ 2 / ((r-γ)² + 2x + √(((r-γ)² + 2x)² - 4x²)),
//! ```
//!
//! which [`z_lower_bound`] returns exactly. The remaining operations produce
//! the `(x, γ)` pairs: evaluating a given weighting, rounding a fractional
//! weighting to a subset, and minimizing `x` by linear programming.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::components::ComponentDecomposition;
use crate::quadratic::QuadIrrational;
use crate::simplex::{LinearProgram, LpError, LpSolution, Relation};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("gamma = {gamma} outside [0, {r}]")]
    GammaOutOfRange { gamma: Rational, r: usize },
    #[error("x = {0} is negative")]
    NegativeX(Rational),
    #[error("the bound is undefined for x = 0 and gamma = r")]
    Undefined,
    #[error("z = {0} must be positive")]
    NonPositiveZ(Rational),
    #[error("weight {value} of component {index} outside [0, 1]")]
    WeightOutOfRange { index: usize, value: Rational },
    #[error("weighting has {got} entries but the decomposition has {expected} components")]
    WeightCount { expected: usize, got: usize },
    #[error("weighting violates x + (r - gamma)/sqrt(z) <= 1/z: {lhs} > {rhs}")]
    PreconditionViolated { lhs: String, rhs: String },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rat_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A point `(r, γ, x)` at which the closed-form bound is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub r: usize,
    pub gamma: Rational,
    pub x: Rational,
}

impl BoundQuery {
    pub fn new(r: usize, gamma: Rational, x: Rational) -> Result<Self, BoundsError> {
        if gamma.is_negative() || gamma > rat_usize(r) {
            return Err(BoundsError::GammaOutOfRange { gamma, r });
        }
        if x.is_negative() {
            return Err(BoundsError::NegativeX(x));
        }
        Ok(Self { r, gamma, x })
    }

    /// Shorthand for integer-valued queries.
    pub fn integers(r: usize, gamma: i64, x: i64) -> Result<Self, BoundsError> {
        Self::new(r, rat(gamma), rat(x))
    }

    fn deficit(&self) -> Rational {
        rat_usize(self.r) - &self.gamma
    }
}

/// Smallest `z` compatible with the main inequality at `(r, γ, x)`.
///
/// For `x > 0` this is `((r-γ)² + 2x - √(((r-γ)²+2x)² - 4x²)) / (2x²)`, which
/// equals `1/x` when `γ = r`. For `x = 0` it is `1/(r-γ)²`.
pub fn z_lower_bound(q: &BoundQuery) -> Result<QuadIrrational, BoundsError> {
    let deficit = q.deficit();
    let d2 = &deficit * &deficit;
    if q.x.is_zero() {
        if deficit.is_zero() {
            return Err(BoundsError::Undefined);
        }
        return Ok(QuadIrrational::from_rational(d2.recip()));
    }
    let a = &d2 + rat(2) * &q.x;
    let b = &a * &a - rat(4) * &q.x * &q.x;
    let two_x2 = rat(2) * &q.x * &q.x;
    Ok(QuadIrrational::new(&a / &two_x2, -two_x2.recip(), b))
}

/// Whether `z(r-γ)² ≥ max(1-xz, 0)²` holds.
pub fn check_main_inequality(q: &BoundQuery, z: &Rational) -> Result<bool, BoundsError> {
    if z.is_negative() {
        return Err(BoundsError::NonPositiveZ(z.clone()));
    }
    let deficit = q.deficit();
    let lhs = z * &deficit * &deficit;
    let slack = (Rational::one() - &q.x * z).max(Rational::zero());
    Ok(lhs >= &slack * &slack)
}

/// Integer form of the main inequality for a subset of components:
/// `z = max_edges / C(n,2)`, `x = subset_size`, `γ = incidence / n`.
/// Equivalent to [`check_main_inequality`] after clearing denominators.
pub fn main_inequality_holds(n: u64, r: u64, max_edges: u64, subset_size: u64, incidence: u64) -> bool {
    let pairs = (n * n.saturating_sub(1) / 2) as i128;
    let (n, r) = (n as i128, r as i128);
    let deficit = r * n - incidence as i128;
    let slack = (pairs - subset_size as i128 * max_edges as i128).max(0);
    max_edges as i128 * pairs * deficit * deficit >= slack * slack * n * n
}

/// `1/z - (r-γ)/√z`: the largest `x` for which a cover at level `γ` forces a
/// component with at least `z·C(n,2)` edges.
pub fn x_threshold(r: usize, gamma: &Rational, z: &Rational) -> Result<QuadIrrational, BoundsError> {
    if !z.is_positive() {
        return Err(BoundsError::NonPositiveZ(z.clone()));
    }
    let deficit = rat_usize(r) - gamma;
    Ok(QuadIrrational::new(z.recip(), -(deficit / z), z.clone()))
}

/// `x + (r-γ)/√z` for rational `x`, `γ`, `z > 0`.
fn rounding_objective(r: usize, x: &Rational, gamma: &Rational, z: &Rational) -> QuadIrrational {
    let deficit = rat_usize(r) - gamma;
    QuadIrrational::new(x.clone(), deficit / z, z.clone())
}

/// Weights on the components of a decomposition, indexed like
/// [`ComponentDecomposition::components`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    pub weights: Vec<Rational>,
}

impl Weighting {
    pub fn new(weights: Vec<Rational>) -> Self {
        Self { weights }
    }

    pub fn uniform(len: usize, value: Rational) -> Self {
        Self {
            weights: vec![value; len],
        }
    }

    /// Weight 1 on `chosen`, 0 elsewhere.
    pub fn indicator(len: usize, chosen: &[usize]) -> Self {
        let mut weights = vec![Rational::zero(); len];
        for &c in chosen {
            weights[c] = Rational::one();
        }
        Self { weights }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| !self.weights[i].is_zero()).collect()
    }
}

/// Exact summary of a weighting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightingStats {
    /// `Σ w(C)`.
    pub x: Rational,
    /// `(1/n) Σ w(C)|V(C)|`.
    pub gamma_total: Rational,
    /// `min_v Σ_{C ∋ v} w(C)`.
    pub gamma_min: Rational,
    /// Per-vertex coverage.
    pub coverage: Vec<Rational>,
}

pub fn evaluate_weighting(
    decomp: &ComponentDecomposition,
    w: &Weighting,
) -> Result<WeightingStats, BoundsError> {
    check_weights(decomp, w)?;
    let n = decomp.n();
    let x: Rational = w.weights.iter().sum();
    let incidence: Rational = decomp
        .components()
        .iter()
        .zip(&w.weights)
        .map(|(c, wc)| wc * rat_usize(c.len()))
        .sum();
    let coverage: Vec<Rational> = (0..n)
        .map(|v| {
            decomp
                .components_containing(v)
                .iter()
                .map(|&c| &w.weights[c])
                .sum()
        })
        .collect();
    let gamma_min = coverage.iter().min().cloned().unwrap_or_else(Rational::zero);
    let gamma_total = incidence / rat_usize(n.max(1));
    if gamma_min > gamma_total {
        return Err(BoundsError::Inconsistent("gamma_min exceeds gamma_total".into()));
    }
    Ok(WeightingStats {
        x,
        gamma_total,
        gamma_min,
        coverage,
    })
}

fn check_weights(decomp: &ComponentDecomposition, w: &Weighting) -> Result<(), BoundsError> {
    if w.weights.len() != decomp.len() {
        return Err(BoundsError::WeightCount {
            expected: decomp.len(),
            got: w.weights.len(),
        });
    }
    if let Some(index) = w
        .weights
        .iter()
        .position(|x| x.is_negative() || *x > Rational::one())
    {
        return Err(BoundsError::WeightOutOfRange {
            index,
            value: w.weights[index].clone(),
        });
    }
    Ok(())
}

/// Integral subset obtained by rounding a fractional weighting.
#[derive(Clone, Debug)]
pub struct RoundedSubset {
    pub components: Vec<usize>,
    /// `|𝒳|`.
    pub x: Rational,
    /// `(1/n) Σ_{C∈𝒳} |V(C)|`.
    pub gamma: Rational,
    /// `x + (r-γ)/√z` of the subset.
    pub objective: QuadIrrational,
    /// The same quantity for the input weighting.
    pub input_objective: QuadIrrational,
}

/// Derandomizes independent rounding of `w` by conditional expectations.
///
/// Components are fixed one at a time in index order. Fixing `C` to 1
/// changes the expectation of `x + (r-γ)/√z` by `(1-w(C))(1 - |V(C)|/(n√z))`
/// and fixing it to 0 by `-w(C)(1 - |V(C)|/(n√z))`, so the branch that does
/// not increase it is determined by the sign of `|V(C)|² - n²z`. Already
/// integral weights are kept.
pub fn round_weighting(
    decomp: &ComponentDecomposition,
    w: &Weighting,
    z: &Rational,
) -> Result<RoundedSubset, BoundsError> {
    if !z.is_positive() {
        return Err(BoundsError::NonPositiveZ(z.clone()));
    }
    let stats = evaluate_weighting(decomp, w)?;
    let r = decomp.r();
    let n = rat_usize(decomp.n());
    let input_objective = rounding_objective(r, &stats.x, &stats.gamma_total, z);
    let limit = QuadIrrational::from_rational(z.recip());
    if input_objective > limit {
        return Err(BoundsError::PreconditionViolated {
            lhs: input_objective.to_string(),
            rhs: limit.to_string(),
        });
    }

    let threshold = &n * &n * z;
    let half = Rational::new(1.into(), 2.into());
    let mut chosen = Vec::new();
    for (i, (comp, wc)) in decomp.components().iter().zip(&w.weights).enumerate() {
        let take = if wc.is_zero() || wc.is_one() {
            wc.is_one()
        } else {
            let size = rat_usize(comp.len());
            match (&size * &size).cmp(&threshold) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => *wc >= half,
            }
        };
        if take {
            chosen.push(i);
        }
    }

    let x = rat_usize(chosen.len());
    let incidence: usize = chosen.iter().map(|&c| decomp.component(c).len()).sum();
    let gamma = rat_usize(incidence) / n;
    let objective = rounding_objective(r, &x, &gamma, z);
    if objective > input_objective {
        return Err(BoundsError::Inconsistent(format!(
            "rounding increased the objective from {input_objective} to {objective}"
        )));
    }
    Ok(RoundedSubset {
        components: chosen,
        x,
        gamma,
        objective,
        input_objective,
    })
}

/// Which covering condition the LP enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoverKind {
    /// `Σ_{C∋v} w(C) ≥ γ` for every vertex.
    #[default]
    PerVertex,
    /// `Σ_C w(C)|V(C)| ≥ γn`.
    Aggregate,
}

/// Optimal cover with a dual certificate.
#[derive(Clone, Debug)]
pub struct LpResult {
    pub kind: CoverKind,
    pub gamma: Rational,
    /// Minimum of `Σ w(C)`.
    pub optimum: Rational,
    pub weights: Weighting,
    /// Constraint rows after merging vertices with identical membership.
    /// Each row lists the component indices it sums over.
    pub rows: Vec<Vec<usize>>,
    /// Multiplier of each covering row (`≥ 0`).
    pub row_duals: Vec<Rational>,
    /// Multiplier of each upper bound `w(C) ≤ 1` (`≥ 0`).
    pub bound_duals: Vec<Rational>,
}

impl LpResult {
    fn row_coefficients(&self, decomp: &ComponentDecomposition) -> Vec<Vec<Rational>> {
        match self.kind {
            CoverKind::PerVertex => self
                .rows
                .iter()
                .map(|row| {
                    let mut coeffs = vec![Rational::zero(); decomp.len()];
                    for &c in row {
                        coeffs[c] = Rational::one();
                    }
                    coeffs
                })
                .collect(),
            CoverKind::Aggregate => vec![decomp
                .components()
                .iter()
                .map(|c| rat_usize(c.len()))
                .collect()],
        }
    }

    fn row_rhs(&self, decomp: &ComponentDecomposition) -> Rational {
        match self.kind {
            CoverKind::PerVertex => self.gamma.clone(),
            CoverKind::Aggregate => &self.gamma * rat_usize(decomp.n()),
        }
    }

    /// `rhs·Σ y - Σ u`.
    pub fn dual_objective(&self, decomp: &ComponentDecomposition) -> Rational {
        let ys: Rational = self.row_duals.iter().sum();
        let us: Rational = self.bound_duals.iter().sum();
        self.row_rhs(decomp) * ys - us
    }

    /// The dual objective as a line in `γ`: `(slope, intercept)`. It is a
    /// lower bound on the optimum at every `γ` and tight at `self.gamma`.
    pub fn dual_line(&self, decomp: &ComponentDecomposition) -> (Rational, Rational) {
        let ys: Rational = self.row_duals.iter().sum();
        let us: Rational = self.bound_duals.iter().sum();
        let slope = match self.kind {
            CoverKind::PerVertex => ys,
            CoverKind::Aggregate => ys * rat_usize(decomp.n()),
        };
        (slope, -us)
    }

    /// Re-checks primal feasibility, dual feasibility and strong duality.
    pub fn verify(&self, decomp: &ComponentDecomposition) -> Result<(), BoundsError> {
        let fail = |m: String| Err(BoundsError::Inconsistent(m));
        check_weights(decomp, &self.weights)?;
        let coeffs = self.row_coefficients(decomp);
        let rhs = self.row_rhs(decomp);
        if coeffs.len() != self.row_duals.len() || self.bound_duals.len() != decomp.len() {
            return fail("certificate dimensions do not match".into());
        }
        for (row, y) in coeffs.iter().zip(&self.row_duals) {
            let lhs: Rational = row.iter().zip(&self.weights.weights).map(|(a, w)| a * w).sum();
            if lhs < rhs {
                return fail("cover constraint violated".into());
            }
            if y.is_negative() {
                return fail("negative row multiplier".into());
            }
        }
        for (c, u) in self.bound_duals.iter().enumerate() {
            if u.is_negative() {
                return fail("negative bound multiplier".into());
            }
            let reduced: Rational = coeffs.iter().zip(&self.row_duals).map(|(row, y)| &row[c] * y).sum::<Rational>() - u;
            if reduced > Rational::one() {
                return fail(format!("dual constraint of component {c} violated"));
            }
        }
        let primal: Rational = self.weights.weights.iter().sum();
        if primal != self.optimum {
            return fail("reported optimum differs from the weights".into());
        }
        let dual = self.dual_objective(decomp);
        if dual != primal {
            return fail(format!("duality gap: primal {primal}, dual {dual}"));
        }
        Ok(())
    }
}

/// Minimizes `Σ w(C)` over `0 ≤ w ≤ 1` with every vertex covered to weight
/// at least `γ`.
pub fn min_fractional_cover(
    decomp: &ComponentDecomposition,
    gamma: &Rational,
) -> Result<LpResult, BoundsError> {
    solve_cover(decomp, gamma, CoverKind::PerVertex)
}

/// Minimizes `Σ w(C)` over `0 ≤ w ≤ 1` subject to `Σ w(C)|V(C)| ≥ γn`.
pub fn min_aggregate_cover(
    decomp: &ComponentDecomposition,
    gamma: &Rational,
) -> Result<LpResult, BoundsError> {
    solve_cover(decomp, gamma, CoverKind::Aggregate)
}

/// Distinct component-membership vectors over all vertices, in order of
/// first appearance.
fn distinct_rows(decomp: &ComponentDecomposition) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut rows = Vec::new();
    for v in 0..decomp.n() {
        let row = decomp.components_containing(v);
        if seen.insert(row) {
            rows.push(row.to_vec());
        }
    }
    rows
}

pub fn solve_cover(
    decomp: &ComponentDecomposition,
    gamma: &Rational,
    kind: CoverKind,
) -> Result<LpResult, BoundsError> {
    let r = decomp.r();
    if gamma.is_negative() || *gamma > rat_usize(r) {
        return Err(BoundsError::GammaOutOfRange {
            gamma: gamma.clone(),
            r,
        });
    }
    let m = decomp.len();
    let rows = match kind {
        CoverKind::PerVertex => distinct_rows(decomp),
        CoverKind::Aggregate => vec![(0..m).collect()],
    };
    let mut result = LpResult {
        kind,
        gamma: gamma.clone(),
        optimum: Rational::zero(),
        weights: Weighting::uniform(m, Rational::zero()),
        rows,
        row_duals: Vec::new(),
        bound_duals: vec![Rational::zero(); m],
    };
    let coeffs = result.row_coefficients(decomp);
    let rhs = result.row_rhs(decomp);

    let mut lp = LinearProgram::new(vec![Rational::one(); m]);
    for row in &coeffs {
        lp.add_constraint(row.clone(), Relation::Ge, rhs.clone());
    }
    for c in 0..m {
        let mut unit = vec![Rational::zero(); m];
        unit[c] = Rational::one();
        lp.add_constraint(unit, Relation::Le, Rational::one());
    }
    let solution: LpSolution = lp.solve()?;
    lp.check_certificate(&solution)?;

    let k = coeffs.len();
    result.optimum = solution.objective;
    result.weights = Weighting::new(solution.values);
    result.row_duals = solution.duals[..k].to_vec();
    result.bound_duals = solution.duals[k..].iter().map(|y| -y).collect();
    result.verify(decomp)?;
    Ok(result)
}

/// One evaluated point of the `γ` sweep.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub gamma: Rational,
    pub x: Rational,
    pub z: QuadIrrational,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub kind: CoverKind,
    /// Uniform grid step over `[0, r]` evaluated in addition to breakpoints.
    pub grid_step: Option<Rational>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            kind: CoverKind::PerVertex,
            grid_step: Some(Rational::new(1.into(), 100.into())),
        }
    }
}

/// Outcome of [`best_provable_bound`].
#[derive(Clone, Debug)]
pub struct BestBound {
    pub z: QuadIrrational,
    pub gamma: Rational,
    pub x: Rational,
    pub lp: LpResult,
    /// Points where the optimal cover value changes slope, ascending.
    pub breakpoints: Vec<Rational>,
    /// Every evaluated point, ascending in `γ`.
    pub points: Vec<SweepPoint>,
}

/// Strongest lower bound on `max_C |E(C)| / C(n,2)` obtainable from
/// [`z_lower_bound`] at `(γ, x*(γ))`, sweeping `γ` over the breakpoints of
/// the parametric cover LP and a uniform grid.
pub fn best_provable_bound(decomp: &ComponentDecomposition) -> Result<BestBound, BoundsError> {
    best_provable_bound_with(decomp, &SweepOptions::default())
}

pub fn best_provable_bound_with(
    decomp: &ComponentDecomposition,
    options: &SweepOptions,
) -> Result<BestBound, BoundsError> {
    let r = decomp.r();
    let top = rat_usize(r);
    let solve = |g: &Rational| solve_cover(decomp, g, options.kind);

    let low = solve(&Rational::zero())?;
    let high = solve(&top)?;
    let mut lines = vec![
        (Rational::zero(), low.dual_line(decomp)),
        (top.clone(), high.dual_line(decomp)),
    ];
    let mut breakpoints = Vec::new();
    let mut stack = vec![(0usize, 1usize)];
    while let Some((a, b)) = stack.pop() {
        let (ga, (sa, ia)) = lines[a].clone();
        let (gb, (sb, ib)) = lines[b].clone();
        if sa == sb {
            if ia != ib {
                return Err(BoundsError::Inconsistent("parallel supporting lines".into()));
            }
            continue;
        }
        // intersection of the two supporting lines
        let g = (&ib - &ia) / (&sa - &sb);
        if g <= ga || g >= gb {
            // kink sits at an endpoint
            let at = if g <= ga { ga } else { gb };
            if at > Rational::zero() && at < top {
                breakpoints.push(at);
            }
            continue;
        }
        let mid = solve(&g)?;
        let on_line = &sa * &g + &ia;
        if mid.optimum == on_line {
            breakpoints.push(g);
            continue;
        }
        lines.push((g, mid.dual_line(decomp)));
        let c = lines.len() - 1;
        stack.push((a, c));
        stack.push((c, b));
    }
    breakpoints.sort();
    breakpoints.dedup();

    let mut gammas = vec![Rational::zero(), top.clone()];
    gammas.extend(breakpoints.iter().cloned());
    if let Some(step) = &options.grid_step {
        if step.is_positive() {
            let mut g = step.clone();
            while g < top {
                gammas.push(g.clone());
                g += step;
            }
        }
    }
    gammas.sort();
    gammas.dedup();

    // x*(γ) is the upper envelope of the supporting lines found above.
    let envelope = |g: &Rational| {
        lines
            .iter()
            .map(|(_, (s, i))| s * g + i)
            .max()
            .expect("at least two lines")
    };

    let evaluated: Vec<Result<(SweepPoint, LpResult), BoundsError>> = gammas
        .par_iter()
        .map(|g| {
            let lp = solve(g)?;
            if lp.optimum != envelope(g) {
                return Err(BoundsError::Inconsistent(format!(
                    "LP optimum {} at gamma = {g} disagrees with the parametric envelope",
                    lp.optimum
                )));
            }
            let z = z_lower_bound(&BoundQuery::new(r, g.clone(), lp.optimum.clone())?)?;
            Ok((
                SweepPoint {
                    gamma: g.clone(),
                    x: lp.optimum.clone(),
                    z,
                },
                lp,
            ))
        })
        .collect();

    let mut points = Vec::with_capacity(evaluated.len());
    let mut best: Option<(SweepPoint, LpResult)> = None;
    for item in evaluated {
        let (point, lp) = item?;
        // ascending γ, so a strict improvement keeps the smallest γ on ties
        if best.as_ref().is_none_or(|(b, _)| point.z > b.z) {
            best = Some((point.clone(), lp));
        }
        points.push(point);
    }
    let (point, lp) = best.expect("sweep evaluates at least two points");
    Ok(BestBound {
        z: point.z,
        gamma: point.gamma,
        x: point.x,
        lp,
        breakpoints,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::EdgeColoring;
    use crate::components::decompose;
    use crate::constructions::gyarfas_coloring;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn closed(a: i64, b: i64) -> QuadIrrational {
        // 2 / (a + √b) = 2(a - √b)/(a² - b)
        let norm = q(a * a - b, 1);
        QuadIrrational::new(q(2 * a, 1) / &norm, q(-2, 1) / &norm, q(b, 1))
    }

    #[test]
    fn closed_form_values() {
        let z = |r, g, x| z_lower_bound(&BoundQuery::integers(r, g, x).unwrap()).unwrap();
        assert_eq!(z(3, 3, 6), QuadIrrational::from_rational(q(1, 6)));
        assert_eq!(z(4, 1, 1), closed(11, 117));
        assert_eq!(z(4, 3, 8), closed(17, 33));
        assert_eq!(z(4, 2, 5), closed(14, 96));
        assert_eq!(z(4, 2, 4), closed(12, 80));
        for r in 1..8 {
            assert_eq!(z(r, 0, 0), QuadIrrational::from_rational(q(1, (r * r) as i64)));
        }
    }

    #[test]
    fn undefined_and_invalid_queries() {
        let q0 = BoundQuery::integers(4, 4, 0).unwrap();
        assert_eq!(z_lower_bound(&q0), Err(BoundsError::Undefined));
        assert!(BoundQuery::integers(4, 5, 1).is_err());
        assert!(BoundQuery::integers(4, -1, 1).is_err());
        assert!(BoundQuery::integers(4, 1, -1).is_err());
    }

    #[test]
    fn main_inequality_examples() {
        let check = |r, g, x, z: Rational| {
            check_main_inequality(&BoundQuery::integers(r, g, x).unwrap(), &z).unwrap()
        };
        assert!(check(4, 4, 12, q(1, 12)));
        assert!(!check(4, 0, 0, q(1, 17)));
        assert!(check(2, 0, 0, q(1, 4)));
        assert!(!check(2, 0, 0, q(1, 5)));
    }

    #[test]
    fn threshold_examples() {
        let t = x_threshold(4, &q(4, 1), &q(1, 12)).unwrap();
        assert_eq!(t, QuadIrrational::from_rational(q(12, 1)));
        let t = x_threshold(4, &q(2, 1), &q(1, 12)).unwrap();
        assert!((t.to_f64() - (12.0 - 2.0 * 12f64.sqrt())).abs() < 1e-12);
        assert!((t.to_f64() - 5.0718).abs() < 1e-4);
        assert_eq!(
            x_threshold(3, &q(3, 1), &q(2, 7)).unwrap(),
            QuadIrrational::from_rational(q(7, 2))
        );
        assert!(x_threshold(3, &q(1, 1), &q(0, 1)).is_err());
    }

    #[test]
    fn gyarfas_weightings() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let all = evaluate_weighting(&d, &Weighting::uniform(12, q(1, 1))).unwrap();
        assert_eq!((all.x, all.gamma_total, all.gamma_min), (q(12, 1), q(4, 1), q(4, 1)));
        let quarter = evaluate_weighting(&d, &Weighting::uniform(12, q(1, 4))).unwrap();
        assert_eq!((quarter.x, quarter.gamma_total.clone()), (q(3, 1), q(1, 1)));
        assert_eq!(quarter.gamma_min, q(1, 1));
        let zero = evaluate_weighting(&d, &Weighting::uniform(12, q(0, 1))).unwrap();
        assert_eq!((zero.x, zero.gamma_total, zero.gamma_min), (q(0, 1), q(0, 1), q(0, 1)));

        let bad = Weighting::uniform(12, q(3, 2));
        assert!(matches!(
            evaluate_weighting(&d, &bad),
            Err(BoundsError::WeightOutOfRange { index: 0, .. })
        ));
        assert!(evaluate_weighting(&d, &Weighting::uniform(11, q(0, 1))).is_err());
    }

    #[test]
    fn rounding_integral_weighting_is_identity() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let w = Weighting::indicator(12, &[0, 1, 2]);
        // x = 3, γ = 1: 3 + 3/√z <= 1/z holds for z = 1/100 (3 + 30 <= 100)
        let rounded = round_weighting(&d, &w, &q(1, 100)).unwrap();
        assert_eq!(rounded.components, vec![0, 1, 2]);
    }

    #[test]
    fn rounding_fractional_gyarfas() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let w = Weighting::uniform(12, q(1, 4));
        let z = q(1, 100);
        let rounded = round_weighting(&d, &w, &z).unwrap();
        assert!(rounded.objective <= QuadIrrational::from_rational(z.recip()));
        assert!(rounded.objective <= rounded.input_objective);
        // x = 3, γ = 1 gives 3 + 3·10 = 33 <= 100
        assert_eq!(rounded.input_objective, QuadIrrational::from_rational(q(33, 1)));

        // z too large for the precondition: 3 + 3/√(1/12) > 12
        assert!(matches!(
            round_weighting(&d, &w, &q(1, 12)),
            Err(BoundsError::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn lp_gyarfas_values() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        for (g, x) in [(0, 0), (1, 3), (2, 6), (4, 12)] {
            let res = min_fractional_cover(&d, &q(g, 1)).unwrap();
            assert_eq!(res.optimum, q(x, 1), "gamma = {g}");
            assert_eq!(res.dual_objective(&d), res.optimum);
            res.verify(&d).unwrap();
        }
        assert!(min_fractional_cover(&d, &q(9, 2)).is_err());
    }

    #[test]
    fn aggregate_cover_is_a_knapsack() {
        // all components of Gyárfás K9 have 3 vertices: x* = γn/3 = 3γ as well
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let res = min_aggregate_cover(&d, &q(5, 2)).unwrap();
        assert_eq!(res.optimum, q(15, 2));
        res.verify(&d).unwrap();
    }

    #[test]
    fn best_bound_gyarfas() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let best = best_provable_bound(&d).unwrap();
        assert_eq!(best.z, QuadIrrational::from_rational(q(1, 12)));
        assert_eq!(best.gamma, q(4, 1));
        assert_eq!(best.x, q(12, 1));
        assert!(best.breakpoints.is_empty());
    }

    #[test]
    fn best_bound_is_sound_on_small_colorings() {
        let c = EdgeColoring::from_fn(6, 3, |u, v| (u + 2 * v) % 3).unwrap();
        let d = decompose(&c);
        let best = best_provable_bound(&d).unwrap();
        let actual = QuadIrrational::from_rational(d.max_edge_fraction().unwrap());
        assert!(best.z <= actual, "{} > {}", best.z, actual);
    }
}
