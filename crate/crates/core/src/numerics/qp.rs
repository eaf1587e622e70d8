//! Null-space active-set method for small convex quadratic programs.
//!
//! Minimizes `1/2 x'Qx + c'x` over a polyhedron. Q must be positive
//! semidefinite on the feasible directions; negative curvature encountered
//! during the reduced solves is reported, never silently absorbed. Unbounded
//! problems are detected through zero-curvature descent directions that no
//! constraint blocks.

use crate::config::NumericsConfig;
use crate::geometry::Polyhedron;
use crate::linalg;
use crate::scalar::{dot, norm, Scalar};

use super::{QpOutcome, SolveError};

struct Workspace<'a, S: Scalar> {
    q: &'a [Vec<S>],
    c: &'a [S],
    poly: &'a Polyhedron<S>,
    cfg: NumericsConfig<S>,
}

impl<'a, S: Scalar> Workspace<'a, S> {
    fn gradient(&self, x: &[S]) -> Vec<S> {
        let mut g = linalg::matvec(self.q, x);
        for (gi, &ci) in g.iter_mut().zip(self.c) {
            *gi = *gi + ci;
        }
        g
    }

    fn objective(&self, x: &[S]) -> S {
        let qx = linalg::matvec(self.q, x);
        S::of(0.5) * dot(x, &qx) + dot(self.c, x)
    }

    /// Active-set rows: all equalities plus the working inequalities.
    fn active_rows(&self, working: &[usize]) -> Vec<Vec<S>> {
        let mut rows: Vec<Vec<S>> = self.poly.equalities().iter().map(|(e, _)| e.clone()).collect();
        rows.extend(working.iter().map(|&i| self.poly.inequalities()[i].0.clone()));
        rows
    }

    /// Largest feasible step along `p` from `x` over inactive inequalities.
    /// Returns `(alpha, blocking_row)`, with `None` when nothing blocks.
    fn max_step(&self, x: &[S], p: &[S], working: &[usize]) -> (Option<S>, Option<usize>) {
        let tol = self.cfg.tol_pivot;
        let mut alpha: Option<S> = None;
        let mut block = None;
        for (i, (a, b)) in self.poly.inequalities().iter().enumerate() {
            if working.contains(&i) {
                continue;
            }
            let ap = dot(a, p);
            if ap > tol {
                let slack = (*b - dot(a, x)).max(S::zero());
                let step = slack / ap;
                if alpha.map_or(true, |al| step < al) {
                    alpha = Some(step);
                    block = Some(i);
                }
            }
        }
        (alpha, block)
    }
}

/// Solve `min 1/2 x'Qx + c'x` over `poly`.
pub fn solve<S: Scalar>(
    q: &[Vec<S>],
    c: &[S],
    poly: &Polyhedron<S>,
) -> Result<QpOutcome<S>, SolveError> {
    let n = poly.dim();
    if q.len() != n || q.iter().any(|r| r.len() != n) || c.len() != n {
        return Err(SolveError::Dimension { expected: n, got: q.len().max(c.len()) });
    }
    let cfg = *poly.cfg();
    // Symmetry guard: the algebra below assumes Q = Q'.
    for i in 0..n {
        for j in i + 1..n {
            if (q[i][j] - q[j][i]).abs() > S::of(1e-12).max(cfg.tol_pivot) {
                return Err(SolveError::NotSymmetric);
            }
        }
    }
    let ws = Workspace { q, c, poly, cfg };

    let Some(mut x) = super::feasible_point(poly)? else {
        return Ok(QpOutcome::Infeasible);
    };
    // Working set: start from inequalities active at the phase-1 point,
    // keeping the stacked rows linearly independent.
    let mut working: Vec<usize> = Vec::new();
    for (i, (a, b)) in poly.inequalities().iter().enumerate() {
        if (dot(a, &x) - *b).abs() <= cfg.tol_mem * S::one().max(norm(&x)) {
            let mut rows = ws.active_rows(&working);
            rows.push(a.clone());
            let rank_before = linalg::rank(&ws.active_rows(&working), n, cfg.tol_pivot);
            if linalg::rank(&rows, n, cfg.tol_pivot) > rank_before {
                working.push(i);
            }
        }
    }

    for _ in 0..cfg.max_qp_iter {
        let g = ws.gradient(&x);
        let rows = ws.active_rows(&working);
        let z = if rows.is_empty() {
            // Null space is all of R^n.
            (0..n)
                .map(|i| {
                    let mut e = vec![S::zero(); n];
                    e[i] = S::one();
                    e
                })
                .collect::<Vec<_>>()
        } else {
            linalg::kernel_basis(&rows, n, cfg.tol_pivot)
        };

        let mut step: Option<Vec<S>> = None;
        let mut ray: Option<Vec<S>> = None;
        if !z.is_empty() {
            let k = z.len();
            // Reduced system H u = -Z'g with H = Z'QZ.
            let qz: Vec<Vec<S>> = z.iter().map(|zi| linalg::matvec(q, zi)).collect();
            let mut h = vec![vec![S::zero(); k]; k];
            for i in 0..k {
                for j in 0..k {
                    h[i][j] = dot(&z[i], &qz[j]);
                }
            }
            let rhs: Vec<S> = z.iter().map(|zi| -dot(zi, &g)).collect();
            // Negative curvature on the reduced diagonal means the problem
            // is not convex over the feasible set.
            for i in 0..k {
                if h[i][i] < -cfg.tol_kkt {
                    return Err(SolveError::NotConvex);
                }
            }
            match linalg::solve(&h, &rhs, k, cfg.tol_pivot) {
                Some(u) => {
                    let mut p = vec![S::zero(); n];
                    for (ui, zi) in u.iter().zip(&z) {
                        for (pi, &zij) in p.iter_mut().zip(zi) {
                            *pi = *pi + *ui * zij;
                        }
                    }
                    let curert = {
                        let qp = linalg::matvec(q, &p);
                        dot(&p, &qp)
                    };
                    if curert < -cfg.tol_kkt {
                        return Err(SolveError::NotConvex);
                    }
                    step = Some(p);
                }
                None => {
                    // Inconsistent reduced system: a zero-curvature descent
                    // direction exists in ker(H).
                    let ker = linalg::kernel_basis(&h, k, cfg.tol_pivot.sqrt());
                    let w = ker.iter().find(|w| dot(&rhs, w).abs() > cfg.tol_kkt);
                    let Some(w) = w else {
                        return Err(SolveError::Internal(
                            "reduced system inconsistent without kernel witness".into(),
                        ));
                    };
                    let sgn = if dot(&rhs, w) > S::zero() { S::one() } else { -S::one() };
                    let mut d = vec![S::zero(); n];
                    for (wi, zi) in w.iter().zip(&z) {
                        for (di, &zij) in d.iter_mut().zip(zi) {
                            *di = *di + sgn * *wi * zij;
                        }
                    }
                    ray = Some(d);
                }
            }
        }

        if let Some(d) = ray {
            match ws.max_step(&x, &d, &working) {
                (Some(alpha), Some(block)) => {
                    for (xi, &di) in x.iter_mut().zip(&d) {
                        *xi = *xi + alpha * di;
                    }
                    working.push(block);
                    continue;
                }
                _ => return Ok(QpOutcome::Unbounded { ray: d }),
            }
        }

        let p = step.unwrap_or_else(|| vec![S::zero(); n]);
        if norm(&p) <= cfg.tol_kkt {
            // At the EQP optimum: examine multipliers of the working rows.
            let rows = ws.active_rows(&working);
            let neg_g: Vec<S> = g.iter().map(|&v| -v).collect();
            let lambda = if rows.is_empty() {
                Vec::new()
            } else {
                // Solve rows' (transposed) lambda = -g in least squares.
                let m = rows.len();
                let at: Vec<Vec<S>> = (0..n).map(|i| (0..m).map(|r| rows[r][i]).collect()).collect();
                linalg::least_squares(&at, &neg_g, m, cfg.tol_pivot)
            };
            let ne = poly.equalities().len();
            let mut worst: Option<(usize, S)> = None;
            for (wi, &idx) in working.iter().enumerate() {
                let l = lambda[ne + wi];
                if l < -cfg.tol_kkt && worst.map_or(true, |(_, wv)| l < wv) {
                    worst = Some((idx, l));
                }
            }
            match worst {
                Some((idx, _)) => {
                    working.retain(|&i| i != idx);
                    continue;
                }
                None => {
                    // KKT point: report the stationarity residual.
                    let mut resid = g.clone();
                    for (r, row) in rows.iter().enumerate() {
                        for (ri, &ai) in resid.iter_mut().zip(row) {
                            *ri = *ri + lambda[r] * ai;
                        }
                    }
                    let value = ws.objective(&x);
                    return Ok(QpOutcome::Optimal {
                        point: x,
                        value,
                        kkt_residual: norm(&resid),
                    });
                }
            }
        }

        match ws.max_step(&x, &p, &working) {
            (Some(alpha), Some(block)) if alpha < S::one() => {
                for (xi, &pi) in x.iter_mut().zip(&p) {
                    *xi = *xi + alpha * pi;
                }
                working.push(block);
            }
            _ => {
                for (xi, &pi) in x.iter_mut().zip(&p) {
                    *xi = *xi + pi;
                }
            }
        }
    }
    Err(SolveError::IterationLimit { what: "active-set", iterations: ws.cfg.max_qp_iter })
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

    fn eye(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    #[test]
    fn projection_onto_orthant() {
        // min 1/2 |x - (1,-1)|^2 over x >= 0  ->  (1, 0), value 1/2.
        let p = poly(2, vec![(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0)], vec![]);
        let out = solve(&eye(2), &[-1.0, 1.0], &p).unwrap();
        match out {
            QpOutcome::Optimal { point, value, kkt_residual } => {
                assert!((point[0] - 1.0).abs() < 1e-9);
                assert!(point[1].abs() < 1e-9);
                // 1/2 x'x - p'x at (1,0) = 1/2 - 1 = -1/2; plus 1/2|p|^2 = 1 gives 1/2.
                assert!((value + 0.5).abs() < 1e-9);
                assert!(kkt_residual < 1e-8);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_reported() {
        let p = poly(1, vec![(vec![1.0], -1.0), (vec![-1.0], -1.0)], vec![]);
        assert!(matches!(solve(&eye(1), &[0.0], &p).unwrap(), QpOutcome::Infeasible));
    }

    #[test]
    fn unbounded_linear_direction() {
        // Q singular along x2, objective decreases along it, nothing blocks.
        let q = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
        let p = poly(2, vec![(vec![-1.0, 0.0], 0.0)], vec![]);
        match solve(&q, &[0.0, 1.0], &p).unwrap() {
            QpOutcome::Unbounded { ray } => {
                assert!(ray[1] < 0.0);
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_constrained_projection() {
        // min 1/2|x|^2 s.t. x1 + x2 = 2  ->  (1,1).
        let p = poly(2, vec![], vec![(vec![1.0, 1.0], 2.0)]);
        match solve(&eye(2), &[0.0, 0.0], &p).unwrap() {
            QpOutcome::Optimal { point, .. } => {
                assert!((point[0] - 1.0).abs() < 1e-9);
                assert!((point[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn active_set_walks_around_box() {
        // min (x1-2)^2 + (x2-2)^2 over the unit box -> (1,1).
        let p = poly(
            2,
            vec![
                (vec![1.0, 0.0], 1.0),
                (vec![0.0, 1.0], 1.0),
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, -1.0], 0.0),
            ],
            vec![],
        );
        let q = vec![vec![2.0, 0.0], vec![0.0, 2.0]];
        match solve(&q, &[-4.0, -4.0], &p).unwrap() {
            QpOutcome::Optimal { point, .. } => {
                assert!((point[0] - 1.0).abs() < 1e-8);
                assert!((point[1] - 1.0).abs() < 1e-8);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn nonconvex_is_reported() {
        let q = vec![vec![-1.0, 0.0], vec![0.0, -1.0]];
        let p = poly(2, vec![(vec![1.0, 0.0], 1.0)], vec![]);
        assert!(matches!(solve(&q, &[0.0, 0.0], &p), Err(SolveError::NotConvex)));
    }
}
