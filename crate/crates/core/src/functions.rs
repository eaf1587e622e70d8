//! Candidate functions: closed, positive-semidefinite, positively
//! homogeneous of degree 2. Three concrete shapes cover the toolkit:
//! a quadratic form restricted to a cone, a scaled squared distance to a
//! cone (optionally restricted), and a lazily evaluated convex conjugate.
//!
//! Conventions: `QuadOnCone` stores `Q` such that the value is `x'Qx`
//! (the classical `|x|^2/2` is `Q = I/2`); conjugates of `aI`-quadratics
//! and of distance functions are returned in closed form, everything else
//! evaluates pointwise through a QP with an LP recession pre-check.

use crate::geometry::{GeometryError, PolarSign, PolyCone, Polyhedron};
use crate::linalg;
use crate::numerics::{self, QpOutcome, SolveError};
use crate::report::{VerificationReport, VerifyVerdict, Witness};
use crate::sampling::{self, SampleSpec};
use crate::scalar::{dot, Scalar};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum FunctionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("solver failure during evaluation: {0}")]
    Solve(#[from] SolveError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("operation needs a convex function: {0}")]
    NotConvex(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Extended-real value of a candidate function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Value<S> {
    pub fn finite(self) -> Option<S> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Value::Finite(_))
    }
}

/// A member (candidate member) of the degree-2 homogeneous class.
#[derive(Clone, Debug)]
pub enum ConeFunction<S: Scalar> {
    /// `x'Qx + δ(x | cone)`.
    QuadOnCone { q: Vec<Vec<S>>, cone: PolyCone<S> },
    /// `alpha · dist(x, cone)^2 + δ(x | domain)`; `domain = None` is all of
    /// space (the shape produced by conjugating an `aI`-quadratic).
    ScaledDistSq { alpha: S, cone: PolyCone<S>, domain: Option<PolyCone<S>> },
    /// `y ↦ sup_x { y·x − inner(x) }`, evaluated pointwise.
    Conjugate { inner: Box<ConeFunction<S>> },
}

impl<S: Scalar> ConeFunction<S> {
    /// `x'Qx` on the whole space.
    pub fn quadratic(q: Vec<Vec<S>>) -> Self {
        let n = q.len();
        ConeFunction::QuadOnCone { q, cone: PolyCone::full_space(n) }
    }

    /// The classical `|x|^2 / 2`.
    pub fn half_norm_squared(n: usize) -> Self {
        let mut q = vec![vec![S::zero(); n]; n];
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = S::of(0.5);
        }
        Self::quadratic(q)
    }

    /// Indicator of a cone, as the zero quadratic on it.
    pub fn indicator(cone: PolyCone<S>) -> Self {
        let n = cone.dim();
        ConeFunction::QuadOnCone { q: vec![vec![S::zero(); n]; n], cone }
    }

    /// `alpha · dist(x, cone)^2`.
    pub fn scaled_dist_sq(alpha: S, cone: PolyCone<S>) -> Self {
        ConeFunction::ScaledDistSq { alpha, cone, domain: None }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeFunction::QuadOnCone { q, .. } => q.len(),
            ConeFunction::ScaledDistSq { cone, .. } => cone.dim(),
            ConeFunction::Conjugate { inner } => inner.dim(),
        }
    }

    /// Effective-domain membership (finite value there).
    pub fn dom_contains(&self, x: &[S]) -> Result<bool, FunctionError> {
        match self {
            ConeFunction::QuadOnCone { cone, .. } => Ok(cone.contains(x)?),
            ConeFunction::ScaledDistSq { domain, .. } => match domain {
                Some(d) => Ok(d.contains(x)?),
                None => Ok(true),
            },
            ConeFunction::Conjugate { .. } => Ok(self.evaluate(x)?.is_finite()),
        }
    }

    /// Evaluate at a point; infeasibilities surface as `Infinite`, solver
    /// trouble as an error (never silently zero).
    pub fn evaluate(&self, x: &[S]) -> Result<Value<S>, FunctionError> {
        if x.len() != self.dim() {
            return Err(FunctionError::Dimension { expected: self.dim(), got: x.len() });
        }
        match self {
            ConeFunction::QuadOnCone { q, cone } => {
                if !cone.contains(x)? {
                    return Ok(Value::Infinite);
                }
                let qx = linalg::matvec(q, x);
                Ok(Value::Finite(dot(x, &qx)))
            }
            ConeFunction::ScaledDistSq { alpha, cone, domain } => {
                if let Some(d) = domain {
                    if !d.contains(x)? {
                        return Ok(Value::Infinite);
                    }
                }
                let d2 = dist_sq_to_cone(cone, x)?;
                Ok(Value::Finite(*alpha * d2))
            }
            ConeFunction::Conjugate { inner } => conjugate_value(inner, x),
        }
    }

    /// `f|_C = f + δ(· | C)`.
    pub fn restrict(&self, c: &PolyCone<S>) -> Result<ConeFunction<S>, FunctionError> {
        if c.dim() != self.dim() {
            return Err(FunctionError::Dimension { expected: self.dim(), got: c.dim() });
        }
        match self {
            ConeFunction::QuadOnCone { q, cone } => Ok(ConeFunction::QuadOnCone {
                q: q.clone(),
                cone: cone.intersect(c)?,
            }),
            ConeFunction::ScaledDistSq { alpha, cone, domain } => {
                let domain = match domain {
                    Some(d) => d.intersect(c)?,
                    None => c.clone(),
                };
                Ok(ConeFunction::ScaledDistSq {
                    alpha: *alpha,
                    cone: cone.clone(),
                    domain: Some(domain),
                })
            }
            ConeFunction::Conjugate { .. } => Err(FunctionError::Unsupported(
                "restriction of a lazy conjugate is not representable; conjugate first".into(),
            )),
        }
    }

    /// Convex conjugate. Closed forms for `aI`-quadratics on cones (squared
    /// distance to the negative polar, scaled by `1/(4a)`), for indicators
    /// (indicator of the polar), and for unrestricted distance functions;
    /// a lazy pointwise-QP wrapper otherwise.
    pub fn conjugate(&self) -> Result<ConeFunction<S>, FunctionError> {
        match self {
            ConeFunction::QuadOnCone { q, cone } => {
                if let Some(alpha) = scalar_multiple_of_identity(q, S::of(1e-12)) {
                    let polar = cone.polar(PolarSign::Negative);
                    if alpha <= S::of(1e-12) {
                        // Indicator conjugates to the polar indicator.
                        return Ok(ConeFunction::indicator(polar));
                    }
                    return Ok(ConeFunction::ScaledDistSq {
                        alpha: S::one() / (S::of(4.0) * alpha),
                        cone: polar,
                        domain: None,
                    });
                }
                Ok(ConeFunction::Conjugate { inner: Box::new(self.clone()) })
            }
            ConeFunction::ScaledDistSq { alpha, cone, domain } => match domain {
                None => {
                    // (a·dist(·,C)^2)* = |y|^2/(4a) + δ(y | C^-).
                    let n = cone.dim();
                    let mut q = vec![vec![S::zero(); n]; n];
                    let f = S::one() / (S::of(4.0) * *alpha);
                    for (i, row) in q.iter_mut().enumerate() {
                        row[i] = f;
                    }
                    Ok(ConeFunction::QuadOnCone { q, cone: cone.polar(PolarSign::Negative) })
                }
                Some(_) => Ok(ConeFunction::Conjugate { inner: Box::new(self.clone()) }),
            },
            ConeFunction::Conjugate { inner } => {
                if inner.is_convex()? {
                    // Biconjugation is the identity for closed convex members.
                    Ok((**inner).clone())
                } else {
                    Err(FunctionError::NotConvex(
                        "biconjugate of a nonconvex quadratic has no evaluatable form here".into(),
                    ))
                }
            }
        }
    }

    /// Convexity check: PSD of the quadratic on the span of its cone; the
    /// other shapes are convex by construction.
    pub fn is_convex(&self) -> Result<bool, FunctionError> {
        match self {
            ConeFunction::QuadOnCone { q, cone } => {
                let span = cone.span()?;
                let basis = span.lineality_basis()?.to_vec();
                if basis.is_empty() {
                    return Ok(true);
                }
                let k = basis.len();
                let qb: Vec<Vec<S>> = basis.iter().map(|b| linalg::matvec(q, b)).collect();
                let mut reduced = vec![vec![S::zero(); k]; k];
                for i in 0..k {
                    for j in 0..k {
                        reduced[i][j] = dot(&basis[i], &qb[j]);
                    }
                }
                Ok(linalg::is_psd(&reduced, S::of(1e-9)))
            }
            _ => Ok(true),
        }
    }

    /// Scale the function by `c > 0`.
    pub fn scale(&self, c: S) -> ConeFunction<S> {
        match self {
            ConeFunction::QuadOnCone { q, cone } => ConeFunction::QuadOnCone {
                q: q.iter().map(|r| r.iter().map(|&v| c * v).collect()).collect(),
                cone: cone.clone(),
            },
            ConeFunction::ScaledDistSq { alpha, cone, domain } => ConeFunction::ScaledDistSq {
                alpha: c * *alpha,
                cone: cone.clone(),
                domain: domain.clone(),
            },
            ConeFunction::Conjugate { inner } => {
                // (c f)*(y) = c f*(y/c); keep it lazy by scaling the inner.
                ConeFunction::Conjugate { inner: Box::new(inner.scale(S::one() / c)) }
            }
        }
    }
}

/// Squared distance of `x` to a cone, with closed forms for the easy cones.
fn dist_sq_to_cone<S: Scalar>(cone: &PolyCone<S>, x: &[S]) -> Result<S, FunctionError> {
    if cone.is_full_space()? {
        return Ok(S::zero());
    }
    if cone.is_trivial()? {
        return Ok(dot(x, x));
    }
    if cone.is_subspace()? {
        let basis = cone.lineality_basis()?;
        let proj = linalg::project_onto_span(x, basis);
        let d: Vec<S> = x.iter().zip(&proj).map(|(&a, &b)| a - b).collect();
        return Ok(dot(&d, &d));
    }
    let p = cone.project_point(x)?;
    let d: Vec<S> = x.iter().zip(&p).map(|(&a, &b)| a - b).collect();
    Ok(dot(&d, &d))
}

/// Is `Q = alpha I`? Returns the multiple when so.
fn scalar_multiple_of_identity<S: Scalar>(q: &[Vec<S>], tol: S) -> Option<S> {
    let n = q.len();
    if n == 0 {
        return Some(S::zero());
    }
    let alpha = q[0][0];
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { alpha } else { S::zero() };
            if (q[i][j] - want).abs() > tol {
                return None;
            }
        }
    }
    Some(alpha)
}

/// `sup_x { y·x − inner(x) }` with recession pre-checks.
fn conjugate_value<S: Scalar>(inner: &ConeFunction<S>, y: &[S]) -> Result<Value<S>, FunctionError> {
    match inner {
        ConeFunction::QuadOnCone { q, cone } => {
            let n = q.len();
            // Directions of zero curvature within the cone: d ∈ C with
            // (span basis)'Q d = 0; positive slope along one of them means
            // the supremum is infinite.
            let span = cone.span()?;
            let basis = span.lineality_basis()?.to_vec();
            let mut eq_rows: Vec<Vec<S>> = Vec::new();
            for b in &basis {
                let qb = linalg::matvec(q, b);
                eq_rows.push(qb);
            }
            let h = cone.hrep()?;
            let mut ineq: Vec<(Vec<S>, S)> =
                h.inequalities.iter().map(|a| (a.clone(), S::zero())).collect();
            let mut eqs: Vec<(Vec<S>, S)> =
                h.equalities.iter().map(|e| (e.clone(), S::zero())).collect();
            eqs.extend(eq_rows.into_iter().map(|r| (r, S::zero())));
            // Slope-1 normalization picks out rays with positive slope.
            ineq.push((y.iter().map(|&v| -v).collect(), -S::one()));
            let recession = Polyhedron::new(n, ineq, eqs, *cone.cfg())?;
            if !recession.is_empty()? {
                return Ok(Value::Infinite);
            }
            // max y·x − x'Qx over C  ==  −min x'(2Q/2)x − y·x.
            let q2: Vec<Vec<S>> =
                q.iter().map(|r| r.iter().map(|&v| S::of(2.0) * v).collect()).collect();
            let c: Vec<S> = y.iter().map(|&v| -v).collect();
            let qp = numerics::QuadraticProgram {
                q: q2,
                c,
                constraints: cone.to_polyhedron()?,
            };
            match numerics::solve_qp(&qp)? {
                QpOutcome::Optimal { value, .. } => Ok(Value::Finite(-value)),
                QpOutcome::Unbounded { .. } => Ok(Value::Infinite),
                QpOutcome::Infeasible => Err(FunctionError::Unsupported(
                    "conjugate evaluation over an empty cone".into(),
                )),
            }
        }
        ConeFunction::ScaledDistSq { alpha, cone, domain } => {
            // sup over x (in the domain) of y·x − a·|x − z|^2, z ∈ C.
            let n = cone.dim();
            // Recession: directions with x-dir = z-dir ∈ C ∩ rec(domain) and
            // positive slope give an infinite value.
            let mut ineq: Vec<(Vec<S>, S)> = Vec::new();
            let mut eqs: Vec<(Vec<S>, S)> = Vec::new();
            let ch = cone.hrep()?;
            ineq.extend(ch.inequalities.iter().map(|a| (a.clone(), S::zero())));
            eqs.extend(ch.equalities.iter().map(|e| (e.clone(), S::zero())));
            if let Some(d) = domain {
                let dh = d.hrep()?;
                ineq.extend(dh.inequalities.iter().map(|a| (a.clone(), S::zero())));
                eqs.extend(dh.equalities.iter().map(|e| (e.clone(), S::zero())));
            }
            ineq.push((y.iter().map(|&v| -v).collect(), -S::one()));
            let recession = Polyhedron::new(n, ineq, eqs, *cone.cfg())?;
            if !recession.is_empty()? {
                return Ok(Value::Infinite);
            }
            // Variables (x, z): minimize a|x−z|^2 − y·x, x ∈ domain, z ∈ C.
            let two_a = S::of(2.0) * *alpha;
            let mut qmat = vec![vec![S::zero(); 2 * n]; 2 * n];
            for i in 0..n {
                qmat[i][i] = two_a;
                qmat[n + i][n + i] = two_a;
                qmat[i][n + i] = -two_a;
                qmat[n + i][i] = -two_a;
            }
            let mut c = vec![S::zero(); 2 * n];
            for i in 0..n {
                c[i] = -y[i];
            }
            let mut constraints = cone.cylinder_into(2 * n, &(n..2 * n).collect::<Vec<_>>())?;
            if let Some(d) = domain {
                let dom_lift = d.cylinder_into(2 * n, &(0..n).collect::<Vec<_>>())?;
                constraints = constraints.intersect(&dom_lift)?;
            }
            let qp = numerics::QuadraticProgram {
                q: qmat,
                c,
                constraints: constraints.to_polyhedron()?,
            };
            match numerics::solve_qp(&qp)? {
                QpOutcome::Optimal { value, .. } => Ok(Value::Finite(-value)),
                QpOutcome::Unbounded { .. } => Ok(Value::Infinite),
                QpOutcome::Infeasible => Err(FunctionError::Unsupported(
                    "conjugate evaluation over an empty domain".into(),
                )),
            }
        }
        ConeFunction::Conjugate { .. } => Err(FunctionError::Unsupported(
            "nested lazy conjugates are not evaluatable; collapse with conjugate() first".into(),
        )),
    }
}

/// Coercivity constants of `f` over a cone's unit cross-section.
#[derive(Clone, Debug)]
pub struct PosDefBounds<S: Scalar> {
    pub alpha: S,
    pub beta: S,
    pub certified_by: Certification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    Sampled { points: usize },
}

/// Outcome of a positive-definiteness check.
#[derive(Clone, Debug)]
pub enum PosDefOutcome<S: Scalar> {
    Bounds(PosDefBounds<S>),
    /// A unit vector in the cone where the function vanishes, goes
    /// nonpositive, or is infinite.
    Refuted { witness: Vec<S>, value: Option<S> },
    /// The sampled minimum sits in the dead zone around zero.
    Inconclusive { min_observed: S },
}

impl<S: Scalar> PosDefOutcome<S> {
    pub fn bounds(&self) -> Option<&PosDefBounds<S>> {
        match self {
            PosDefOutcome::Bounds(b) => Some(b),
            _ => None,
        }
    }
}

/// `alpha |x|^2 <= f(x) <= beta |x|^2` on the cone, by extreme-ray
/// evaluation plus grid sampling of the unit cross-section.
pub fn posdef_bounds<S: Scalar>(
    f: &ConeFunction<S>,
    cone: &PolyCone<S>,
    spec: &SampleSpec,
) -> Result<PosDefOutcome<S>, FunctionError> {
    if cone.dim() != f.dim() {
        return Err(FunctionError::Dimension { expected: f.dim(), got: cone.dim() });
    }
    if cone.is_trivial()? {
        // Vacuous bounds on {0}.
        return Ok(PosDefOutcome::Bounds(PosDefBounds {
            alpha: S::one(),
            beta: S::one(),
            certified_by: Certification::Exact,
        }));
    }
    let samples = sampling::cross_section(cone, spec)?;
    let mut min_v = S::infinity();
    let mut max_v = S::zero();
    let mut argmin: Vec<S> = Vec::new();
    for x in &samples {
        match f.evaluate(x)? {
            Value::Infinite => {
                return Ok(PosDefOutcome::Refuted { witness: x.clone(), value: None })
            }
            Value::Finite(v) => {
                if v < min_v {
                    min_v = v;
                    argmin = x.clone();
                }
                if v > max_v {
                    max_v = v;
                }
            }
        }
    }
    let zero_tol = S::of(1e-8);
    if min_v <= zero_tol {
        return Ok(PosDefOutcome::Refuted { witness: argmin, value: Some(min_v) });
    }
    let dead_zone = S::of(1e-6);
    if min_v <= dead_zone {
        return Ok(PosDefOutcome::Inconclusive { min_observed: min_v });
    }
    // A single-ray cross-section is evaluated exactly.
    let certified_by = if samples.len() == 1 {
        Certification::Exact
    } else {
        Certification::Sampled { points: samples.len() }
    };
    Ok(PosDefOutcome::Bounds(PosDefBounds { alpha: min_v, beta: max_v, certified_by }))
}

/// Conjugate-transfer check: if `f` is positive definite on `C` and
/// `C^- ∩ D = {0}`, then `(f|_C)*` must be positive definite on `D`.
pub fn check_theorem1_transfer<S: Scalar>(
    f: &ConeFunction<S>,
    c: &PolyCone<S>,
    d: &PolyCone<S>,
    spec: &SampleSpec,
) -> Result<VerificationReport<S>, FunctionError> {
    let mut report = VerificationReport::new("conjugate-posdef-transfer", VerifyVerdict::Inconclusive);
    // Hypothesis 1: the polar of C meets cl(D) only at the origin (exact).
    let meet = c.polar(PolarSign::Negative).intersect(d)?;
    let hyp1 = meet.is_trivial()?;
    report.sub_reports.push(VerificationReport::new(
        "hypothesis: C^- ∩ cl(D) = {0}",
        if hyp1 { VerifyVerdict::HoldsSampled } else { VerifyVerdict::Fails },
    ));
    // Hypothesis 2: f positive definite with respect to C (sampled).
    let base = posdef_bounds(f, c, spec)?;
    let hyp2 = matches!(base, PosDefOutcome::Bounds(_));
    report.sub_reports.push(VerificationReport::new(
        "hypothesis: f positive definite on C",
        if hyp2 { VerifyVerdict::HoldsSampled } else { VerifyVerdict::Fails },
    ));
    if !hyp1 || !hyp2 {
        report.verdict = VerifyVerdict::HypothesisNotMet;
        return Ok(report);
    }
    let w = f.restrict(c)?.conjugate()?;
    match posdef_bounds(&w, d, spec)? {
        PosDefOutcome::Bounds(b) => {
            report.verdict = VerifyVerdict::HoldsSampled;
            report.gamma_margin = None;
            report.checked_points = match b.certified_by {
                Certification::Sampled { points } => points,
                Certification::Exact => 1,
            };
            report.notes.push(format!(
                "transfer bounds: alpha = {}, beta = {}",
                b.alpha, b.beta
            ));
        }
        PosDefOutcome::Refuted { witness, value } => {
            report.verdict = VerifyVerdict::Fails;
            report.witness = Some(Witness {
                state: witness,
                successor: None,
                ray: None,
                detail: match value {
                    Some(v) => format!("conjugate value {v} is not positive"),
                    None => "conjugate is infinite on D".into(),
                },
            });
        }
        PosDefOutcome::Inconclusive { min_observed } => {
            report.verdict = VerifyVerdict::Inconclusive;
            report.notes.push(format!("sampled minimum {min_observed} within the dead zone"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthant2() -> PolyCone<f64> {
        PolyCone::from_hrep(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]], vec![]).unwrap()
    }

    #[test]
    fn quadratic_evaluation_and_domain() {
        let f = ConeFunction::half_norm_squared(2);
        assert_eq!(f.evaluate(&[3.0, 4.0]).unwrap(), Value::Finite(12.5));
        let g = ConeFunction::QuadOnCone {
            q: vec![vec![0.5, 0.0], vec![0.0, 0.5]],
            cone: orthant2(),
        };
        assert_eq!(g.evaluate(&[1.0, 1.0]).unwrap(), Value::Finite(1.0));
        assert_eq!(g.evaluate(&[-1.0, 1.0]).unwrap(), Value::Infinite);
    }

    #[test]
    fn dist_sq_examples() {
        let h = ConeFunction::scaled_dist_sq(0.5, orthant2());
        // On the cone the distance vanishes.
        assert_eq!(h.evaluate(&[1.0, 2.0]).unwrap(), Value::Finite(0.0));
        // dist((-1,1), RxR+) = 1 in the first coordinate.
        let v = h.evaluate(&[-1.0, 1.0]).unwrap().finite().unwrap();
        assert!((v - 0.5).abs() < 1e-9);
    }

    #[test]
    fn homogeneity_of_all_variants() {
        let fs: Vec<ConeFunction<f64>> = vec![
            ConeFunction::QuadOnCone {
                q: vec![vec![1.0, 0.25], vec![0.25, 2.0]],
                cone: orthant2(),
            },
            ConeFunction::scaled_dist_sq(0.75, orthant2()),
            ConeFunction::QuadOnCone {
                q: vec![vec![1.0, 0.25], vec![0.25, 2.0]],
                cone: orthant2(),
            }
            .conjugate()
            .unwrap(),
        ];
        let x = [0.8, 0.3];
        for f in &fs {
            let base = f.evaluate(&x).unwrap().finite().unwrap();
            for lambda in [0.0, 0.5, 2.0, 10.0] {
                let xs = [x[0] * lambda, x[1] * lambda];
                let v = f.evaluate(&xs).unwrap().finite().unwrap();
                let expected = lambda * lambda * base;
                let scale = expected.abs().max(1.0);
                assert!(
                    (v - expected).abs() / scale < 1e-10,
                    "lambda {lambda}: {v} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn conjugate_closed_forms() {
        // (|x|^2/2)* = |y|^2/2.
        let f: ConeFunction<f64> = ConeFunction::half_norm_squared(2);
        let fs = f.conjugate().unwrap();
        let v = fs.evaluate(&[3.0, 4.0]).unwrap().finite().unwrap();
        assert!((v - 12.5).abs() < 1e-9);
        // Indicator conjugates to the polar indicator.
        let g = ConeFunction::indicator(orthant2());
        let gs = g.conjugate().unwrap();
        assert_eq!(gs.evaluate(&[-1.0, -2.0]).unwrap(), Value::Finite(0.0));
        assert_eq!(gs.evaluate(&[1.0, 0.5]).unwrap(), Value::Infinite);
        // Distance function: h* = |y|^2/2 + δ(y | C^-).
        let h = ConeFunction::scaled_dist_sq(0.5, orthant2());
        let hs = h.conjugate().unwrap();
        let v = hs.evaluate(&[-3.0, -4.0]).unwrap().finite().unwrap();
        assert!((v - 12.5).abs() < 1e-9);
        assert_eq!(hs.evaluate(&[1.0, -1.0]).unwrap(), Value::Infinite);
    }

    #[test]
    fn conjugate_of_quadratic_on_cone_matches_moreau_form() {
        // (a|x|^2 restricted to C)* = dist(y, C^-)^2 / (4a).
        let a = 0.5f64;
        let f = ConeFunction::QuadOnCone {
            q: vec![vec![a, 0.0], vec![0.0, a]],
            cone: orthant2(),
        };
        let fs = f.conjugate().unwrap();
        for y in [[1.0, -1.0], [2.0, 0.5], [-1.0, -2.0], [0.3, 0.9]] {
            let expect = {
                let proj = orthant2().project_point(&y).unwrap();
                let d2: f64 = (0..2).map(|i| (y[i] - proj[i]).powi(2)).sum();
                // dist to C^- equals |projection onto C| by Moreau.
                let pc: f64 = (0..2).map(|i| proj[i] * proj[i]).sum();
                assert!((d2 + pc - (y[0] * y[0] + y[1] * y[1])).abs() < 1e-8);
                pc / (4.0 * a)
            };
            let got = fs.evaluate(&y).unwrap().finite().unwrap();
            assert!((got - expect).abs() < 1e-8, "y {y:?}: {got} vs {expect}");
        }
    }

    #[test]
    fn lazy_conjugate_evaluates_against_direct_sup() {
        // General PSD quadratic on the orthant: compare the QP-backed value
        // with a dense direction sweep.
        let q = vec![vec![2.0, 0.5], vec![0.5, 1.0]];
        let f = ConeFunction::QuadOnCone { q: q.clone(), cone: orthant2() };
        let fs = f.conjugate().unwrap();
        for y in [[1.0, 1.0], [-0.5, 2.0], [0.7, -0.2]] {
            let got = fs.evaluate(&y).unwrap().finite().unwrap();
            let mut sup: f64 = 0.0;
            let steps = 400;
            for k in 0..=steps {
                let t = std::f64::consts::FRAC_PI_2 * k as f64 / steps as f64;
                let d = [t.cos(), t.sin()];
                let fd = d[0] * (q[0][0] * d[0] + q[0][1] * d[1])
                    + d[1] * (q[1][0] * d[0] + q[1][1] * d[1]);
                let slope = y[0] * d[0] + y[1] * d[1];
                if slope > 0.0 && fd > 1e-12 {
                    sup = sup.max(slope * slope / (4.0 * fd));
                }
            }
            assert!((got - sup).abs() < 1e-4, "y {y:?}: {got} vs {sup}");
        }
    }

    #[test]
    fn lazy_conjugate_detects_infinite_directions() {
        // Indicator-like zero curvature along e1 with positive slope.
        let q = vec![vec![0.0, 0.0], vec![0.0, 1.0]];
        let f = ConeFunction::QuadOnCone { q, cone: orthant2() };
        let fs = f.conjugate().unwrap();
        assert_eq!(fs.evaluate(&[1.0, 0.0]).unwrap(), Value::Infinite);
        assert!(fs.evaluate(&[-1.0, 0.0]).unwrap().is_finite());
    }

    #[test]
    fn biconjugation_on_convex_members() {
        let q = vec![vec![2.0, 0.5], vec![0.5, 1.0]];
        let f = ConeFunction::QuadOnCone { q, cone: orthant2() };
        let ff = f.conjugate().unwrap().conjugate().unwrap();
        for x in [[1.0, 0.5], [0.2, 2.0], [0.0, 0.0]] {
            let a = f.evaluate(&x).unwrap().finite().unwrap();
            let b = ff.evaluate(&x).unwrap().finite().unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn restriction_composes() {
        let f = ConeFunction::half_norm_squared(2);
        let c = orthant2();
        let d = PolyCone::from_hrep(2, vec![vec![1.0, -1.0]], vec![]).unwrap();
        let once = f.restrict(&c.intersect(&d).unwrap()).unwrap();
        let twice = f.restrict(&c).unwrap().restrict(&d).unwrap();
        for x in [[1.0, 2.0], [2.0, 1.0], [-1.0, 1.0]] {
            assert_eq!(once.evaluate(&x).unwrap(), twice.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn posdef_bounds_on_half_norm() {
        let f = ConeFunction::half_norm_squared(2);
        let out = posdef_bounds(&f, &orthant2(), &SampleSpec::default()).unwrap();
        let b = out.bounds().expect("positive definite");
        assert!((b.alpha - 0.5).abs() < 1e-9);
        assert!((b.beta - 0.5).abs() < 1e-9);
    }

    #[test]
    fn posdef_bounds_diagonal_on_wedge() {
        // f = x1^2 on cone{(1,0),(1,1)}: alpha = 1/2 at (1,1)/sqrt2, beta = 1.
        let f: ConeFunction<f64> = ConeFunction::quadratic(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let wedge = PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let spec = SampleSpec { count: 2000, seed: 1, mesh_levels: 64 };
        let out = posdef_bounds(&f, &wedge, &spec).unwrap();
        let b = out.bounds().expect("positive definite");
        assert!((b.alpha - 0.5).abs() < 1e-3, "alpha {}", b.alpha);
        assert!((b.beta - 1.0).abs() < 1e-9, "beta {}", b.beta);
    }

    #[test]
    fn posdef_refutation_on_boundary_zero() {
        // f = x1 x2 on the orthant vanishes at e1.
        let f = ConeFunction::quadratic(vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        let out = posdef_bounds(&f, &orthant2(), &SampleSpec::default()).unwrap();
        match out {
            PosDefOutcome::Refuted { value: Some(v), .. } => assert!(v.abs() < 1e-9),
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn theorem1_transfer_cases() {
        let f = ConeFunction::half_norm_squared(2);
        // C = D = R^n: the transfer is the classical self-duality.
        let full = PolyCone::full_space(2);
        let r = check_theorem1_transfer(&f, &full, &full, &SampleSpec::default()).unwrap();
        assert_eq!(r.verdict, VerifyVerdict::HoldsSampled);
        // C = orthant, D touching the polar: hypothesis fails.
        let c = orthant2();
        let bad_d = c.polar(PolarSign::Negative);
        let r = check_theorem1_transfer(&f, &c, &bad_d, &SampleSpec::default()).unwrap();
        assert_eq!(r.verdict, VerifyVerdict::HypothesisNotMet);
        // C = orthant, D = cone{(1,0),(1,-1)} keeps clear of C^-.
        let d = PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![1.0, -1.0]]).unwrap();
        let r = check_theorem1_transfer(&f, &c, &d, &SampleSpec::default()).unwrap();
        assert_eq!(r.verdict, VerifyVerdict::HoldsSampled);
    }

    #[test]
    fn order_reversal_under_conjugation() {
        // f1 >= f2 pointwise implies f1* <= f2* pointwise.
        let f1 = ConeFunction::quadratic(vec![vec![2.0, 0.0], vec![0.0, 2.0]]);
        let f2 = ConeFunction::half_norm_squared(2);
        let c1 = f1.conjugate().unwrap();
        let c2 = f2.conjugate().unwrap();
        for y in [[1.0, 0.0], [0.5, -0.5], [2.0, 3.0]] {
            let a = c1.evaluate(&y).unwrap().finite().unwrap();
            let b = c2.evaluate(&y).unwrap().finite().unwrap();
            assert!(a <= b + 1e-9);
        }
    }
}
