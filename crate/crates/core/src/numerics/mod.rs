//! Self-contained small-scale LP and convex-QP kernels.

mod qp;
mod simplex;

use crate::geometry::Polyhedron;
use crate::scalar::Scalar;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SolveError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{what} hit the iteration cap ({iterations})")]
    IterationLimit { what: &'static str, iterations: usize },
    #[error("quadratic objective is not convex on the feasible directions")]
    NotConvex,
    #[error("quadratic matrix is not symmetric")]
    NotSymmetric,
    #[error("internal solver error: {0}")]
    Internal(String),
}

/// Optimization sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Linear program over a polyhedron.
#[derive(Clone, Debug)]
pub struct LinearProgram<S: Scalar> {
    pub objective: Vec<S>,
    pub constraints: Polyhedron<S>,
    pub sense: Sense,
}

/// Convex quadratic program: `min/max  1/2 x'Qx + c'x` over a polyhedron.
#[derive(Clone, Debug)]
pub struct QuadraticProgram<S: Scalar> {
    pub q: Vec<Vec<S>>,
    pub c: Vec<S>,
    pub constraints: Polyhedron<S>,
}

/// Certified outcome of a linear program. Exactly one of the three states is
/// reported: a feasible optimal point, Farkas multipliers proving emptiness,
/// or an improving recession ray.
#[derive(Clone, Debug)]
pub enum LpOutcome<S: Scalar> {
    Optimal { point: Vec<S>, value: S },
    Infeasible { ineq_mult: Vec<S>, eq_mult: Vec<S> },
    Unbounded { ray: Vec<S> },
}

/// Outcome of a quadratic program.
#[derive(Clone, Debug)]
pub enum QpOutcome<S: Scalar> {
    Optimal { point: Vec<S>, value: S, kkt_residual: S },
    Infeasible,
    Unbounded { ray: Vec<S> },
}

/// Solution wrapper carrying the dual multipliers when available.
#[derive(Clone, Debug)]
pub struct LpSolution<S: Scalar> {
    pub outcome: LpOutcome<S>,
    /// Multipliers `(lambda, mu)` with `c + A'lambda + E'mu = 0`,
    /// `lambda >= 0`, present at optimality of a minimization.
    pub duals: Option<(Vec<S>, Vec<S>)>,
}

/// Solve a linear program with certificates.
pub fn solve_lp<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpSolution<S>, SolveError> {
    let maximize = lp.sense == Sense::Maximize;
    let (outcome, duals) = simplex::solve_with_duals(&lp.constraints, &lp.objective, maximize)?;
    Ok(LpSolution { outcome, duals })
}

/// Solve a convex quadratic minimization.
pub fn solve_qp<S: Scalar>(qp: &QuadraticProgram<S>) -> Result<QpOutcome<S>, SolveError> {
    qp::solve(&qp.q, &qp.c, &qp.constraints)
}

/// Any feasible point of the polyhedron (`None` when empty).
pub fn feasible_point<S: Scalar>(poly: &Polyhedron<S>) -> Result<Option<Vec<S>>, SolveError> {
    let zero = vec![S::zero(); poly.dim()];
    match simplex::solve(poly, &zero, false)? {
        (LpOutcome::Optimal { point, .. }, _) => Ok(Some(point)),
        (LpOutcome::Infeasible { .. }, _) => Ok(None),
        (LpOutcome::Unbounded { .. }, _) => {
            Err(SolveError::Internal("feasibility LP reported unbounded".into()))
        }
    }
}

/// `max c·x` over the polyhedron.
pub fn maximize_linear<S: Scalar>(poly: &Polyhedron<S>, c: &[S]) -> Result<LpOutcome<S>, SolveError> {
    simplex::solve(poly, c, true).map(|(o, _)| o)
}

/// `min c·x` over the polyhedron.
pub fn minimize_linear<S: Scalar>(poly: &Polyhedron<S>, c: &[S]) -> Result<LpOutcome<S>, SolveError> {
    simplex::solve(poly, c, false).map(|(o, _)| o)
}

/// Euclidean projection of `p` onto the polyhedron via QP.
pub fn project_onto<S: Scalar>(poly: &Polyhedron<S>, p: &[S]) -> Result<QpOutcome<S>, SolveError> {
    let n = poly.dim();
    let eye: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row = vec![S::zero(); n];
            row[i] = S::one();
            row
        })
        .collect();
    let c: Vec<S> = p.iter().map(|&v| -v).collect();
    qp::solve(&eye, &c, poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NumericsConfig;
    use crate::scalar::dot;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(
        dim: usize,
        ineq: Vec<(Vec<f64>, f64)>,
        eq: Vec<(Vec<f64>, f64)>,
    ) -> Polyhedron<f64> {
        Polyhedron::new(dim, ineq, eq, NumericsConfig::default()).unwrap()
    }

    #[test]
    fn lp_duality_gap_on_random_solvable_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(2..=4);
            // Box plus random cuts keeps the instance bounded and feasible at 0.
            let mut ineq: Vec<(Vec<f64>, f64)> = Vec::new();
            for i in 0..n {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                ineq.push((e.clone(), 1.0 + rng.gen::<f64>()));
                let neg: Vec<f64> = e.iter().map(|v| -v).collect();
                ineq.push((neg, 1.0 + rng.gen::<f64>()));
            }
            for _ in 0..3 {
                let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                ineq.push((a, rng.gen_range(0.1..2.0)));
            }
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = poly(n, ineq.clone(), vec![]);
            // Duals refer to the rows as stored (normalized) by the polyhedron.
            let rows: Vec<(Vec<f64>, f64)> = p.inequalities().to_vec();
            let lp = LinearProgram { objective: c.clone(), constraints: p, sense: Sense::Minimize };
            let sol = solve_lp(&lp).unwrap();
            let LpOutcome::Optimal { point, value } = &sol.outcome else {
                panic!("instance should be solvable");
            };
            let (lambda, _mu) = sol.duals.expect("duals at optimality");
            // Dual feasibility and strong duality from the certificate.
            let mut grad = c.clone();
            for (l, (a, _)) in lambda.iter().zip(&rows) {
                assert!(*l >= -1e-8);
                for (g, &ai) in grad.iter_mut().zip(a) {
                    *g += l * ai;
                }
            }
            assert!(grad.iter().all(|g| g.abs() < 1e-7), "stationarity violated: {grad:?}");
            let dual_value: f64 = -lambda.iter().zip(&rows).map(|(l, (_, b))| l * b).sum::<f64>();
            assert!((value - dual_value).abs() <= 1e-8, "gap {} vs {}", value, dual_value);
            assert!((dot(&c, point) - value).abs() <= 1e-10);
        }
    }

    #[test]
    fn qp_matches_projected_gradient_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=4);
            // Random PD matrix Q = M'M + I, nonnegativity constraints.
            let m: Vec<Vec<f64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let mut q = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += m[k][i] * m[k][j];
                    }
                    q[i][j] = s + if i == j { 1.0 } else { 0.0 };
                }
            }
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let mut ineq = Vec::new();
            for i in 0..n {
                let mut e = vec![0.0; n];
                e[i] = -1.0;
                ineq.push((e, 0.0));
            }
            let p = poly(n, ineq, vec![]);
            let qp = QuadraticProgram { q: q.clone(), c: c.clone(), constraints: p };
            let QpOutcome::Optimal { point, value, kkt_residual } = solve_qp(&qp).unwrap() else {
                panic!("expected optimal");
            };
            assert!(kkt_residual < 1e-8);

            // Projected gradient with projection onto the orthant.
            let lip = 2.0 * q.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
            let step = 1.0 / lip;
            let mut x = vec![0.0; n];
            for _ in 0..200_000 {
                let mut g = c.clone();
                for i in 0..n {
                    for j in 0..n {
                        g[i] += q[i][j] * x[j];
                    }
                }
                for i in 0..n {
                    x[i] = (x[i] - step * g[i]).max(0.0);
                }
            }
            let mut ref_val = dot(&c, &x);
            for i in 0..n {
                for j in 0..n {
                    ref_val += 0.5 * x[i] * q[i][j] * x[j];
                }
            }
            assert!((value - ref_val).abs() < 1e-6, "qp {value} vs pg {ref_val}");
            for (a, b) in point.iter().zip(&x) {
                assert!((a - b).abs() < 1e-4);
            }
        }
    }
}
