//! Dense two-phase simplex over free variables.
//!
//! Problems are stated as `min c·z` subject to `G z ≤ h`, `E z = f` with all
//! variables free. Free variables are split `z = z⁺ − z⁻`, inequalities get
//! slacks, and phase 1 minimizes the sum of artificial variables over every
//! row. Bland's rule is always on: the geometry downstream (point sets lying
//! on kernel facets) makes degenerate vertices routine, and problem sizes are
//! small enough that anti-cycling costs nothing.

use crate::geom::{PointSet, Vector};
use crate::{Error, Result};

/// Entries smaller than this (in absolute value) never serve as pivots.
pub const PIVOT_TOL: f64 = 1e-11;

/// Feasibility and optimality tolerance: phase-1 optima above this mean
/// infeasible, and returned points satisfy constraints to within it.
pub const FEAS_TOL: f64 = 1e-9;

/// `min objective·z` s.t. `ineq_lhs·z ≤ ineq_rhs`, `eq_lhs·z = eq_rhs`,
/// `z` free.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub ineq_lhs: Vec<Vec<f64>>,
    pub ineq_rhs: Vec<f64>,
    pub eq_lhs: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, point: Vec<f64> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural + slack + artificial columns; rhs is stored after
    data: Vec<f64>,
    cost: Vec<f64>, // reduced-cost row, length cols + 1
    basis: Vec<usize>,
    live: Vec<bool>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.cols + 1) + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let piv = self.data[r * w + c];
        let inv = 1.0 / piv;
        for j in 0..w {
            self.data[r * w + j] *= inv;
        }
        self.data[r * w + c] = 1.0;
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r || !self.live[i] {
                continue;
            }
            let f = self.data[i * w + c];
            if f != 0.0 {
                for j in 0..w {
                    self.data[i * w + j] -= f * pivot_row[j];
                }
                self.data[i * w + c] = 0.0;
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for j in 0..w {
                self.cost[j] -= f * pivot_row[j];
            }
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations until optimal or unbounded. `allowed` bounds
    /// the columns eligible to enter (phase 2 excludes artificials).
    fn run(&mut self, allowed: usize) -> Result<bool> {
        let cap = 200 * (self.rows + self.cols) + 2000;
        for _ in 0..cap {
            // Bland: the entering column is the lowest-index improving one.
            let entering = (0..allowed).find(|&j| self.cost[j] < -PIVOT_TOL);
            let Some(c) = entering else {
                return Ok(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if !self.live[i] {
                    continue;
                }
                let a = self.at(i, c);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                            if ratio < br - 1e-12 * (1.0 + br.abs())
                                || (tie && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = best else {
                return Ok(false);
            };
            self.pivot(r, c);
        }
        Err(Error::MalformedProgram(
            "simplex iteration cap exceeded".into(),
        ))
    }
}

fn validate(p: &LpProblem) -> Result<usize> {
    let n = p.objective.len();
    if p.ineq_lhs.len() != p.ineq_rhs.len() || p.eq_lhs.len() != p.eq_rhs.len() {
        return Err(Error::MalformedProgram(
            "constraint matrix and rhs lengths differ".into(),
        ));
    }
    for row in p.ineq_lhs.iter().chain(&p.eq_lhs) {
        if row.len() != n {
            return Err(Error::MalformedProgram(format!(
                "constraint row has {} entries, objective has {}",
                row.len(),
                n
            )));
        }
    }
    let finite = p
        .objective
        .iter()
        .chain(p.ineq_lhs.iter().flatten())
        .chain(p.eq_lhs.iter().flatten())
        .chain(&p.ineq_rhs)
        .chain(&p.eq_rhs)
        .all(|v| v.is_finite());
    if !finite {
        return Err(Error::MalformedProgram("non-finite coefficient".into()));
    }
    Ok(n)
}

/// Two-phase simplex. See [`PIVOT_TOL`] and [`FEAS_TOL`] for the numeric
/// contract; optimal outcomes are feasible within [`FEAS_TOL`].
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    let n = validate(p)?;
    let m1 = p.ineq_lhs.len();
    let m2 = p.eq_lhs.len();
    let m = m1 + m2;
    if m == 0 {
        // No constraints: optimal at 0 iff the objective is zero.
        return Ok(if p.objective.iter().all(|&c| c == 0.0) {
            LpOutcome::Optimal {
                value: 0.0,
                point: vec![0.0; n],
            }
        } else {
            LpOutcome::Unbounded
        });
    }
    let structural = 2 * n + m1;
    let cols = structural + m;
    let w = cols + 1;
    let mut t = Tableau {
        rows: m,
        cols,
        data: vec![0.0; m * w],
        cost: vec![0.0; w],
        basis: vec![0; m],
        live: vec![true; m],
    };
    for i in 0..m {
        let (row, rhs) = if i < m1 {
            (&p.ineq_lhs[i], p.ineq_rhs[i])
        } else {
            (&p.eq_lhs[i - m1], p.eq_rhs[i - m1])
        };
        let flip = if rhs < 0.0 { -1.0 } else { 1.0 };
        for (j, &a) in row.iter().enumerate() {
            t.data[i * w + j] = flip * a;
            t.data[i * w + n + j] = -flip * a;
        }
        if i < m1 {
            t.data[i * w + 2 * n + i] = flip;
        }
        t.data[i * w + structural + i] = 1.0;
        t.data[i * w + cols] = flip * rhs;
        t.basis[i] = structural + i;
    }
    // Phase-1 reduced costs with the all-artificial basis: c_j − Σᵢ T[i][j].
    for j in 0..w {
        let col_sum: f64 = (0..m).map(|i| t.at(i, j)).sum();
        let c = if (structural..cols).contains(&j) { 1.0 } else { 0.0 };
        t.cost[j] = c - col_sum;
    }
    t.run(cols)?;
    let phase1 = -t.cost[cols];
    if phase1 > FEAS_TOL {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive artificials out of the basis; rows that resist are redundant.
    for i in 0..m {
        if t.basis[i] < structural {
            continue;
        }
        let col = (0..structural).find(|&j| t.at(i, j).abs() > PIVOT_TOL);
        match col {
            Some(j) => t.pivot(i, j),
            None => t.live[i] = false,
        }
    }
    // Phase 2: real reduced costs over the surviving basis.
    let real_cost = |j: usize| -> f64 {
        if j < n {
            p.objective[j]
        } else if j < 2 * n {
            -p.objective[j - n]
        } else {
            0.0
        }
    };
    for j in 0..w {
        let mut basic: f64 = 0.0;
        for i in 0..m {
            if t.live[i] {
                basic += real_cost(t.basis[i]) * t.at(i, j);
            }
        }
        let c = if j < cols { real_cost(j) } else { 0.0 };
        t.cost[j] = c - basic;
    }
    if !t.run(structural)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut point = vec![0.0; n];
    for i in 0..m {
        if !t.live[i] {
            continue;
        }
        let b = t.basis[i];
        if b < n {
            point[b] += t.rhs(i);
        } else if b < 2 * n {
            point[b - n] -= t.rhs(i);
        }
    }
    let value = p
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .sum();
    Ok(LpOutcome::Optimal { value, point })
}

/// Convex-hull membership: true iff `p = Σ μᵢ aᵢ` for some `μ ≥ 0, Σμ = 1`.
///
/// Decided by an explicit phase-1 residual program: minimize `Σ(r⁺+r⁻)` over
/// `Σμᵢaᵢ + r⁺ − r⁻ = p`, membership iff the optimum is at most `tol`.
pub fn in_convex_hull(p: &Vector, a: &PointSet, tol: f64) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptyInput("convex hull of an empty set"));
    }
    if p.dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: a.dim,
            got: p.dim(),
        });
    }
    let l = a.len();
    let k = a.dim;
    let nv = l + 2 * k; // μ weights then residuals r⁺, r⁻
    let mut objective = vec![0.0; nv];
    for c in objective.iter_mut().skip(l) {
        *c = 1.0;
    }
    let mut ineq_lhs = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut row = vec![0.0; nv];
        row[i] = -1.0;
        ineq_lhs.push(row);
    }
    let mut eq_lhs = Vec::with_capacity(k + 1);
    let mut eq_rhs = Vec::with_capacity(k + 1);
    for c in 0..k {
        let mut row = vec![0.0; nv];
        for (i, pt) in a.points.iter().enumerate() {
            row[i] = pt.0[c];
        }
        row[l + c] = 1.0;
        row[l + k + c] = -1.0;
        eq_lhs.push(row);
        eq_rhs.push(p.0[c]);
    }
    let mut ones = vec![0.0; nv];
    for w in ones.iter_mut().take(l) {
        *w = 1.0;
    }
    eq_lhs.push(ones);
    eq_rhs.push(1.0);
    let prob = LpProblem {
        objective,
        ineq_lhs,
        ineq_rhs: vec![0.0; nv],
        eq_lhs,
        eq_rhs,
    };
    match solve(&prob)? {
        LpOutcome::Optimal { value, .. } => Ok(value <= tol),
        // The residual objective is bounded below by 0 and the program is
        // always feasible (μ = e₁, residuals absorb the gap).
        _ => Err(Error::MalformedProgram(
            "hull membership program must have an optimum".into(),
        )),
    }
}
