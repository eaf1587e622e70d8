//! Independent brute-force references, implemented directly against the
//! definitions (finite-horizon trajectory systems, direction sampling,
//! radial grids) so a bug in the main path cannot hide in its own oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functions::{ConeFunction, FunctionError, Value};
use crate::geometry::{GeometryError, PolyCone, Polyhedron};
use crate::numerics::{self, QpOutcome, SolveError};
use crate::process::{ConvexProcess, ProcessError};
use crate::sampling::{self, SampleSpec};
use crate::scalar::{dot, norm, Scalar};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Process(#[from] ProcessError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error("solver failure: {0}")]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Invalid(String),
}

/// Stacked finite-horizon system: variables `(x_0, .., x_d)` with
/// `(x_k, x_,k+1_) ∈ graph(H)` for every step and an anchored `x_0`.
pub struct TrajectorySystem<S: Scalar> {
    pub horizon: usize,
    pub system: Polyhedron<S>,
    n: usize,
}

impl<S: Scalar> TrajectorySystem<S> {
    /// Build the system with `x_0` pinned to a point.
    pub fn anchored(
        process: &ConvexProcess<S>,
        x0: &[S],
        horizon: usize,
    ) -> Result<Self, OracleError> {
        if horizon == 0 {
            return Err(OracleError::Invalid("horizon must be at least 1".into()));
        }
        let n = process.state_dim();
        if x0.len() != n {
            return Err(OracleError::Invalid(format!(
                "anchor dimension {} does not match the process dimension {n}",
                x0.len()
            )));
        }
        let total = n * (horizon + 1);
        let h = process.graph().hrep()?;
        let mut ineq: Vec<(Vec<S>, S)> = Vec::new();
        let mut eqs: Vec<(Vec<S>, S)> = Vec::new();
        for k in 0..horizon {
            let place = |row: &Vec<S>| -> Vec<S> {
                let mut out = vec![S::zero(); total];
                for i in 0..2 * n {
                    out[k * n + i] = row[i];
                }
                out
            };
            ineq.extend(h.inequalities.iter().map(|r| (place(r), S::zero())));
            eqs.extend(h.equalities.iter().map(|r| (place(r), S::zero())));
        }
        for (i, &v) in x0.iter().enumerate() {
            let mut row = vec![S::zero(); total];
            row[i] = S::one();
            eqs.push((row, v));
        }
        let system = Polyhedron::new(total, ineq, eqs, *process.graph().cfg())?;
        Ok(TrajectorySystem { horizon, system, n })
    }

    /// Split a stacked solution vector into the trajectory points.
    pub fn unstack(&self, z: &[S]) -> Vec<Vec<S>> {
        (0..=self.horizon).map(|k| z[k * self.n..(k + 1) * self.n].to_vec()).collect()
    }
}

/// Does a `d`-step trajectory from `x0` exist?
pub fn feasible_depth<S: Scalar>(
    process: &ConvexProcess<S>,
    x0: &[S],
    depth: usize,
) -> Result<bool, OracleError> {
    let system = TrajectorySystem::anchored(process, x0, depth)?;
    Ok(!system.system.is_empty()?)
}

/// Verdict of the sampled stabilizability check: a finite horizon can
/// certify "yes" but never refute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizableVerdict {
    YesCertified,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct StabilizableSample<S: Scalar> {
    pub verdict: StabilizableVerdict,
    pub trajectory: Option<Vec<Vec<S>>>,
    /// Geometric envelope constant observed a posteriori (`|x_k| <= M rho^k |x0|`).
    pub envelope_constant: Option<S>,
}

/// Minimize `|x_d|^2` over the trajectory system and certify decay when the
/// terminal norm dips below `epsilon |x0|` with a bounded geometric
/// envelope on the way.
pub fn stabilizable_sample<S: Scalar>(
    process: &ConvexProcess<S>,
    x0: &[S],
    depth: usize,
    epsilon: S,
) -> Result<StabilizableSample<S>, OracleError> {
    if epsilon <= S::zero() {
        return Err(OracleError::Invalid("epsilon must be positive".into()));
    }
    let system = TrajectorySystem::anchored(process, x0, depth)?;
    let total = process.state_dim() * (depth + 1);
    let n = process.state_dim();
    let mut q = vec![vec![S::zero(); total]; total];
    for i in 0..n {
        let idx = depth * n + i;
        q[idx][idx] = S::of(2.0);
    }
    let qp = numerics::QuadraticProgram {
        q,
        c: vec![S::zero(); total],
        constraints: system.system.clone(),
    };
    let point = match numerics::solve_qp(&qp)? {
        QpOutcome::Optimal { point, .. } => point,
        QpOutcome::Infeasible => {
            return Ok(StabilizableSample {
                verdict: StabilizableVerdict::Unknown,
                trajectory: None,
                envelope_constant: None,
            })
        }
        QpOutcome::Unbounded { .. } => {
            return Err(OracleError::Invalid(
                "norm-minimization reported unbounded".into(),
            ))
        }
    };
    let trajectory = system.unstack(&point);
    let x0_norm = norm(x0);
    if x0_norm <= S::of(1e-300) {
        // The zero trajectory certifies the origin.
        return Ok(StabilizableSample {
            verdict: StabilizableVerdict::YesCertified,
            trajectory: Some(trajectory),
            envelope_constant: Some(S::one()),
        });
    }
    let terminal = norm(&trajectory[depth]);
    if terminal > epsilon * x0_norm {
        return Ok(StabilizableSample {
            verdict: StabilizableVerdict::Unknown,
            trajectory: Some(trajectory),
            envelope_constant: None,
        });
    }
    // A-posteriori geometric envelope |x_k| <= M rho^k |x0| with
    // rho = epsilon^(1/d); certify when M stays moderate.
    let rho = epsilon.powf(S::one() / S::of(depth as f64));
    let mut m = S::zero();
    for (k, x) in trajectory.iter().enumerate() {
        let bound = rho.powi(k as i32) * x0_norm;
        let ratio = norm(x) / bound;
        m = m.max(ratio);
    }
    let verdict = if m <= S::of(1e3) {
        StabilizableVerdict::YesCertified
    } else {
        StabilizableVerdict::Unknown
    };
    Ok(StabilizableSample { verdict, trajectory: Some(trajectory), envelope_constant: Some(m) })
}

/// Report of the direction-sampled polar inclusion test.
#[derive(Clone, Debug)]
pub struct PolarSampleReport {
    pub checked: usize,
    pub violations_forward: usize,
    pub violations_backward: usize,
}

impl PolarSampleReport {
    pub fn holds(&self) -> bool {
        self.violations_forward == 0 && self.violations_backward == 0
    }
}

/// Check both inclusions between the computed polar and the defining
/// inequalities on `k` random unit directions.
pub fn polar_sampled<S: Scalar>(
    cone: &PolyCone<S>,
    computed_polar: &PolyCone<S>,
    k: usize,
    seed: u64,
) -> Result<PolarSampleReport, OracleError> {
    let n = cone.dim();
    let dirs = cone.spanning_directions()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = cone.cfg().tol_geom;
    let mut violations_forward = 0usize;
    let mut violations_backward = 0usize;
    for _ in 0..k {
        let y: Vec<S> = (0..n).map(|_| S::of(rng.gen_range(-1.0..1.0))).collect();
        let y = match crate::scalar::unit(&y, cone.cfg().tol_pivot) {
            Some(u) => u,
            None => continue,
        };
        let in_defining = dirs.iter().all(|g| dot(g, &y) <= tol);
        let in_computed = computed_polar.contains(&y)?;
        // Membership by definition must match membership in the computed cone.
        if in_defining && !in_computed {
            violations_forward += 1;
        }
        if in_computed && !in_defining {
            violations_backward += 1;
        }
    }
    Ok(PolarSampleReport { checked: k, violations_forward, violations_backward })
}

/// Lower bound for `sup_x { y·x - f(x) }` over a radial grid on the
/// cross-section of the function's domain cone, with the radius cap taken
/// from the observed degree-2 growth.
pub fn conjugate_grid<S: Scalar>(
    f: &ConeFunction<S>,
    y: &[S],
    spec: &SampleSpec,
) -> Result<S, OracleError> {
    let cone = match f {
        ConeFunction::QuadOnCone { cone, .. } => cone.clone(),
        ConeFunction::ScaledDistSq { domain, cone, .. } => match domain {
            Some(d) => d.clone(),
            None => PolyCone::full_space(cone.dim()),
        },
        ConeFunction::Conjugate { .. } => {
            return Err(OracleError::Invalid(
                "grid conjugation of a lazy conjugate is not supported".into(),
            ))
        }
    };
    let dirs = if cone.is_full_space()? {
        // Random unit directions cover the sphere.
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let n = cone.dim();
        (0..spec.count.max(100))
            .filter_map(|_| {
                let v: Vec<S> = (0..n).map(|_| S::of(rng.gen_range(-1.0..1.0))).collect();
                crate::scalar::unit(&v, cone.cfg().tol_pivot)
            })
            .collect::<Vec<_>>()
    } else {
        sampling::cross_section(&cone, spec)?
    };
    let mut best = S::zero(); // x = 0 always contributes y·0 - f(0) = 0
    // Radius cap from the smallest observed curvature: the maximizer of
    // r·s - r^2 a sits at r = s/(2a).
    let mut min_curv = S::infinity();
    let mut values = Vec::with_capacity(dirs.len());
    for d in &dirs {
        let v = match f.evaluate(d)? {
            Value::Finite(v) => v,
            Value::Infinite => {
                values.push(None);
                continue;
            }
        };
        values.push(Some(v));
        if v > S::of(1e-12) {
            min_curv = min_curv.min(v);
        }
    }
    let y_norm = norm(y);
    let r_max = if min_curv.is_finite() && min_curv > S::zero() {
        (y_norm / min_curv).max(S::one())
    } else {
        S::of(1e3).max(y_norm * S::of(1e3))
    };
    let radial_steps = 64usize;
    for (d, fv) in dirs.iter().zip(&values) {
        let Some(fd) = *fv else { continue };
        let slope = dot(y, d);
        for step in 1..=radial_steps {
            let r = r_max * S::of(step as f64 / radial_steps as f64);
            let candidate = r * slope - r * r * fd;
            if candidate > best {
                best = candidate;
            }
        }
    }
    Ok(best)
}
