//! Dense two-phase tableau simplex with Bland anti-cycling and certificate
//! extraction (feasible point / Farkas multipliers / improving ray).

use crate::config::NumericsConfig;
use crate::geometry::Polyhedron;
use crate::scalar::{dot, Scalar};

use super::{LpOutcome, SolveError};

/// Standard-form program: `min c·z  s.t.  A z = b, z >= 0, b >= 0`,
/// built from a polyhedron by splitting free variables and adding slacks.
struct Standard<S: Scalar> {
    nvars: usize,
    ncols: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    cost: Vec<S>,
    /// Sign applied to each original row to make the RHS nonnegative.
    row_sign: Vec<S>,
    n_ineq: usize,
}

impl<S: Scalar> Standard<S> {
    /// Columns: `u_0..u_n | w_0..w_n | s_0..s_mi`, with `x = u - w`.
    fn build(poly: &Polyhedron<S>, objective: &[S]) -> Self {
        let n = poly.dim();
        let mi = poly.inequalities().len();
        let me = poly.equalities().len();
        let ncols = 2 * n + mi;
        let mut rows = Vec::with_capacity(mi + me);
        let mut rhs = Vec::with_capacity(mi + me);
        let mut row_sign = Vec::with_capacity(mi + me);
        for (k, (a, b)) in poly.inequalities().iter().enumerate() {
            let sign = if *b < S::zero() { -S::one() } else { S::one() };
            let mut row = vec![S::zero(); ncols];
            for i in 0..n {
                row[i] = sign * a[i];
                row[n + i] = -sign * a[i];
            }
            row[2 * n + k] = sign;
            rows.push(row);
            rhs.push(sign * *b);
            row_sign.push(sign);
        }
        for (e, d) in poly.equalities() {
            let sign = if *d < S::zero() { -S::one() } else { S::one() };
            let mut row = vec![S::zero(); ncols];
            for i in 0..n {
                row[i] = sign * e[i];
                row[n + i] = -sign * e[i];
            }
            rows.push(row);
            rhs.push(sign * *d);
            row_sign.push(sign);
        }
        let mut cost = vec![S::zero(); ncols];
        for i in 0..n {
            cost[i] = objective[i];
            cost[n + i] = -objective[i];
        }
        Standard { nvars: n, ncols, rows, rhs, cost, row_sign, n_ineq: mi }
    }
}

struct Tableau<S: Scalar> {
    /// `m x (total_cols + 1)` matrix, last column is the RHS.
    t: Vec<Vec<S>>,
    /// Phase-1 cost row, then phase-2 cost row, both reduced.
    cost1: Vec<S>,
    cost2: Vec<S>,
    basis: Vec<usize>,
    m: usize,
    struct_cols: usize,
    total_cols: usize,
    cfg: NumericsConfig<S>,
}

impl<S: Scalar> Tableau<S> {
    fn new(std: &Standard<S>, cfg: NumericsConfig<S>) -> Self {
        let m = std.rows.len();
        let struct_cols = std.ncols;
        let total_cols = struct_cols + m;
        let mut t = Vec::with_capacity(m);
        for (i, row) in std.rows.iter().enumerate() {
            let mut r = vec![S::zero(); total_cols + 1];
            r[..struct_cols].copy_from_slice(row);
            r[struct_cols + i] = S::one();
            r[total_cols] = std.rhs[i];
            t.push(r);
        }
        // Phase-1 cost: sum of artificials, reduced against the artificial basis.
        let mut cost1 = vec![S::zero(); total_cols + 1];
        for j in 0..struct_cols {
            let mut s = S::zero();
            for row in &t {
                s = s + row[j];
            }
            cost1[j] = -s;
        }
        let mut rhs_sum = S::zero();
        for row in &t {
            rhs_sum = rhs_sum + row[total_cols];
        }
        cost1[total_cols] = -rhs_sum;
        let mut cost2 = vec![S::zero(); total_cols + 1];
        cost2[..struct_cols].copy_from_slice(&std.cost);
        let basis = (0..m).map(|i| struct_cols + i).collect();
        Tableau { t, cost1, cost2, basis, m, struct_cols, total_cols, cfg }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v = *v / piv;
        }
        let src = self.t[row].clone();
        for i in 0..self.m {
            if i != row {
                let f = self.t[i][col];
                if f != S::zero() {
                    for (v, &s) in self.t[i].iter_mut().zip(&src) {
                        *v = *v - f * s;
                    }
                }
            }
        }
        for cost in [&mut self.cost1, &mut self.cost2] {
            let f = cost[col];
            if f != S::zero() {
                for (v, &s) in cost.iter_mut().zip(&src) {
                    *v = *v - f * s;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Entering column: Dantzig rule, or Bland once `bland` is set.
    fn entering(&self, phase1: bool, bland: bool) -> Option<usize> {
        let cost = if phase1 { &self.cost1 } else { &self.cost2 };
        let limit = if phase1 { self.total_cols } else { self.struct_cols };
        let tol = self.cfg.tol_lp;
        if bland {
            (0..limit).find(|&j| cost[j] < -tol)
        } else {
            let mut best: Option<(usize, S)> = None;
            for j in 0..limit {
                if cost[j] < -tol && best.map_or(true, |(_, bv)| cost[j] < bv) {
                    best = Some((j, cost[j]));
                }
            }
            best.map(|(j, _)| j)
        }
    }

    /// Leaving row by minimum ratio; ties resolved toward the smallest basis
    /// column index for anti-cycling.
    fn leaving(&self, col: usize) -> Option<usize> {
        let tol = self.cfg.tol_pivot;
        let mut best: Option<(usize, S)> = None;
        for i in 0..self.m {
            let a = self.t[i][col];
            if a > tol {
                let ratio = self.t[i][self.total_cols] / a;
                match best {
                    None => best = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - tol
                            || ((ratio - br).abs() <= tol && self.basis[i] < self.basis[bi])
                        {
                            best = Some((i, ratio));
                        }
                    }
                }
            }
        }
        best.map(|(i, _)| i)
    }

    /// Run one phase to optimality. Returns `Ok(None)` at optimum or
    /// `Ok(Some(col))` when the objective is unbounded along column `col`.
    fn run(&mut self, phase1: bool) -> Result<Option<usize>, SolveError> {
        let cap = self.cfg.max_lp_iter;
        let bland_after = cap / 2;
        for iter in 0..cap {
            let bland = iter >= bland_after;
            let Some(col) = self.entering(phase1, bland) else {
                return Ok(None);
            };
            let Some(row) = self.leaving(col) else {
                return Ok(Some(col));
            };
            self.pivot(row, col);
        }
        Err(SolveError::IterationLimit { what: "simplex", iterations: cap })
    }

    fn solution(&self) -> Vec<S> {
        let mut z = vec![S::zero(); self.total_cols];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.t[i][self.total_cols];
        }
        z
    }

    /// Dual multipliers of the phase-1 problem read from the reduced costs
    /// of the artificial columns.
    fn phase1_duals(&self) -> Vec<S> {
        (0..self.m)
            .map(|i| S::one() - self.cost1[self.struct_cols + i])
            .collect()
    }

    /// Pivot basic artificials out (or detect redundant rows) before phase 2.
    fn clear_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] >= self.struct_cols {
                let col = (0..self.struct_cols)
                    .find(|&j| self.t[i][j].abs() > self.cfg.tol_pivot);
                if let Some(j) = col {
                    self.pivot(i, j);
                }
                // Otherwise the row is redundant; the artificial stays basic
                // at level zero and never re-enters.
            }
        }
    }
}

/// Solve `min/max objective·x` over the polyhedron.
pub fn solve<S: Scalar>(
    poly: &Polyhedron<S>,
    objective: &[S],
    maximize: bool,
) -> Result<(LpOutcome<S>, usize), SolveError> {
    solve_with_duals(poly, objective, maximize).map(|(o, _)| (o, 0))
}

/// As [`solve`], additionally extracting `(lambda, mu)` multipliers with
/// `c + A'lambda + E'mu = 0` at the optimum of a minimization.
pub fn solve_with_duals<S: Scalar>(
    poly: &Polyhedron<S>,
    objective: &[S],
    maximize: bool,
) -> Result<(LpOutcome<S>, Option<(Vec<S>, Vec<S>)>), SolveError> {
    if objective.len() != poly.dim() {
        return Err(SolveError::Dimension { expected: poly.dim(), got: objective.len() });
    }
    let cfg = *poly.cfg();
    let obj: Vec<S> = if maximize {
        objective.iter().map(|&c| -c).collect()
    } else {
        objective.to_vec()
    };
    let std = Standard::build(poly, &obj);
    let mut tab = Tableau::new(&std, cfg);

    if tab.run(true)?.is_some() {
        return Err(SolveError::Internal("phase-1 objective unbounded".into()));
    }
    let phase1_value = -tab.cost1[tab.total_cols];
    if phase1_value > cfg.tol_lp * S::of(100.0) {
        let y = tab.phase1_duals();
        let mut ineq_mult = Vec::with_capacity(std.n_ineq);
        let mut eq_mult = Vec::new();
        for (i, &sign) in std.row_sign.iter().enumerate() {
            let mult = -sign * y[i];
            if i < std.n_ineq {
                ineq_mult.push(mult.max(S::zero()));
            } else {
                eq_mult.push(mult);
            }
        }
        return Ok((LpOutcome::Infeasible { ineq_mult, eq_mult }, None));
    }

    tab.clear_artificials();
    match tab.run(false)? {
        Some(col) => {
            // Improving ray: entering column direction mapped back to x.
            let mut zdir = vec![S::zero(); tab.total_cols];
            zdir[col] = S::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < tab.total_cols {
                    zdir[b] = -tab.t[i][col];
                }
            }
            let n = std.nvars;
            let ray: Vec<S> = (0..n).map(|k| zdir[k] - zdir[n + k]).collect();
            Ok((LpOutcome::Unbounded { ray }, None))
        }
        None => {
            let z = tab.solution();
            let n = std.nvars;
            let point: Vec<S> = (0..n).map(|k| z[k] - z[n + k]).collect();
            let raw = dot(objective, &point);
            let duals = if maximize {
                None
            } else {
                // Phase-2 duals from the artificial reduced costs.
                let mut lambda = Vec::with_capacity(std.n_ineq);
                let mut mu = Vec::new();
                for (i, &sign) in std.row_sign.iter().enumerate() {
                    let y = -tab.cost2[tab.struct_cols + i];
                    let mult = -sign * y;
                    if i < std.n_ineq {
                        lambda.push(mult.max(S::zero()));
                    } else {
                        mu.push(mult);
                    }
                }
                Some((lambda, mu))
            };
            Ok((LpOutcome::Optimal { value: raw, point }, duals))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NumericsConfig;

    fn poly(
        dim: usize,
        ineq: Vec<(Vec<f64>, f64)>,
        eq: Vec<(Vec<f64>, f64)>,
    ) -> Polyhedron<f64> {
        Polyhedron::new(dim, ineq, eq, NumericsConfig::default()).unwrap()
    }

    #[test]
    fn min_over_simplex() {
        // min x1 s.t. x >= 0, x1 + x2 = 1  ->  0 at (0,1)
        let p = poly(
            2,
            vec![(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0)],
            vec![(vec![1.0, 1.0], 1.0)],
        );
        let (out, _) = solve(&p, &[1.0, 0.0], false).unwrap();
        match out {
            LpOutcome::Optimal { value, point } => {
                assert!(value.abs() < 1e-9);
                assert!((point[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_farkas() {
        // x <= -1 and x >= 1
        let p = poly(1, vec![(vec![1.0], -1.0), (vec![-1.0], -1.0)], vec![]);
        let (out, _) = solve(&p, &[0.0], false).unwrap();
        match out {
            LpOutcome::Infeasible { ineq_mult, eq_mult } => {
                assert!(eq_mult.is_empty());
                assert!(ineq_mult.iter().all(|&u| u >= 0.0));
                // u^T A = 0 and u^T b < 0 certify emptiness.
                let combo = ineq_mult[0] * 1.0 + ineq_mult[1] * (-1.0);
                let rhs = ineq_mult[0] * (-1.0) + ineq_mult[1] * (-1.0);
                assert!(combo.abs() < 1e-8, "combo = {combo}");
                assert!(rhs < -1e-9, "rhs = {rhs}");
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        // max x1 + x2 over the nonnegative orthant
        let p = poly(2, vec![(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0)], vec![]);
        let (out, _) = solve(&p, &[1.0, 1.0], true).unwrap();
        match out {
            LpOutcome::Unbounded { ray } => {
                assert!(ray[0] >= -1e-9 && ray[1] >= -1e-9);
                assert!(ray[0] + ray[1] > 1e-9);
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Redundant constraints meeting at the same vertex.
        let p = poly(
            2,
            vec![
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, -1.0], 0.0),
                (vec![-1.0, -1.0], 0.0),
                (vec![1.0, 1.0], 1.0),
                (vec![1.0, 0.0], 1.0),
            ],
            vec![],
        );
        let (out, _) = solve(&p, &[-1.0, -2.0], false).unwrap();
        match out {
            LpOutcome::Optimal { value, .. } => assert!((value + 2.0).abs() < 1e-9),
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
