//! Convex processes as graph cones: images, inverses, powers, duals,
//! associated linear processes, feasible and reachable sets, and the
//! structural condition checks they feed.

use crate::geometry::{GeometryError, PolarSign, PolyCone, Polyhedron};
use crate::report::Verdict;
use crate::scalar::{dot, Scalar};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ProcessError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("inner consistency violated: {0}")]
    Internal(String),
}

/// A set-valued map `H` whose graph is a polyhedral convex cone in
/// `R^n x R^n`, coordinates ordered `(x, y)` with `y ∈ H(x)`.
#[derive(Clone, Debug)]
pub struct ConvexProcess<S: Scalar> {
    n: usize,
    graph: PolyCone<S>,
}

/// A convex process whose graph is a subspace.
#[derive(Clone, Debug)]
pub struct LinearProcess<S: Scalar>(ConvexProcess<S>);

/// Result of the feasible-set iteration `D_k = dom H^k`.
#[derive(Clone, Debug)]
pub struct FeasibleSet<S: Scalar> {
    /// The fixed point when converged, otherwise the last iterate: always an
    /// outer approximation of the true feasible set.
    pub cone: PolyCone<S>,
    pub converged: bool,
    /// Number of refinement steps performed.
    pub iterations: usize,
}

/// Tri-state transversality verdicts for the positive and negative dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transversality {
    pub pos: Verdict,
    pub neg: Verdict,
}

impl<S: Scalar> ConvexProcess<S> {
    pub fn new(n: usize, graph: PolyCone<S>) -> Result<Self, ProcessError> {
        if graph.dim() != 2 * n {
            return Err(ProcessError::Dimension { expected: 2 * n, got: graph.dim() });
        }
        Ok(ConvexProcess { n, graph })
    }

    /// `H(x) = A x + K` for `x` in the state cone, empty otherwise.
    pub fn from_affine_map(
        a: &[Vec<S>],
        input_cone: &PolyCone<S>,
        state_constraint: Option<&PolyCone<S>>,
    ) -> Result<Self, ProcessError> {
        let n = a.len();
        if a.iter().any(|row| row.len() != n) || input_cone.dim() != n {
            return Err(ProcessError::Dimension { expected: n, got: input_cone.dim() });
        }
        let mut inequalities: Vec<Vec<S>> = Vec::new();
        let mut equalities: Vec<Vec<S>> = Vec::new();
        // y - A x ∈ K, written on (x, y).
        let k_rep = input_cone.hrep()?;
        let lift = |row: &Vec<S>| -> Vec<S> {
            let mut out = vec![S::zero(); 2 * n];
            for j in 0..n {
                // row·(y - A x) = row·y - (row A)·x
                out[n + j] = row[j];
                for i in 0..n {
                    out[i] = out[i] - row[j] * a[j][i];
                }
            }
            out
        };
        inequalities.extend(k_rep.inequalities.iter().map(&lift));
        equalities.extend(k_rep.equalities.iter().map(&lift));
        if let Some(state) = state_constraint {
            if state.dim() != n {
                return Err(ProcessError::Dimension { expected: n, got: state.dim() });
            }
            let s_rep = state.hrep()?;
            let lift_x = |row: &Vec<S>| -> Vec<S> {
                let mut out = row.clone();
                out.extend(std::iter::repeat(S::zero()).take(n));
                out
            };
            inequalities.extend(s_rep.inequalities.iter().map(&lift_x));
            equalities.extend(s_rep.equalities.iter().map(&lift_x));
        }
        let graph = PolyCone::from_parts(
            2 * n,
            None,
            Some(crate::geometry::HRep { inequalities, equalities }),
            *input_cone.cfg(),
        )?;
        Ok(ConvexProcess { n, graph })
    }

    /// Single-valued linear map `x ↦ A x`.
    pub fn strict_linear(a: &[Vec<S>]) -> Result<Self, ProcessError> {
        let n = a.len();
        Self::from_affine_map(a, &PolyCone::zero(n), None)
    }

    pub fn state_dim(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &PolyCone<S> {
        &self.graph
    }

    /// Graph slice `H(x)` as a polyhedron in the `y` coordinates.
    pub fn image_of_point(&self, x: &[S]) -> Result<Polyhedron<S>, ProcessError> {
        if x.len() != self.n {
            return Err(ProcessError::Dimension { expected: self.n, got: x.len() });
        }
        let h = self.graph.hrep()?;
        let n = self.n;
        let slice = |rows: &[Vec<S>]| -> Vec<(Vec<S>, S)> {
            rows.iter()
                .map(|row| {
                    let a_y: Vec<S> = row[n..].to_vec();
                    let b = -dot(&row[..n], x);
                    (a_y, b)
                })
                .collect()
        };
        Ok(Polyhedron::new(n, slice(&h.inequalities), slice(&h.equalities), *self.graph.cfg())?)
    }

    /// `H(S) = {y : exists x ∈ S with y ∈ H(x)}`, exact polyhedral.
    pub fn image_of_cone(&self, s: &PolyCone<S>) -> Result<PolyCone<S>, ProcessError> {
        if s.dim() != self.n {
            return Err(ProcessError::Dimension { expected: self.n, got: s.dim() });
        }
        let n = self.n;
        let positions: Vec<usize> = (0..n).collect();
        let lifted = s.cylinder_into(2 * n, &positions)?;
        let restricted = self.graph.intersect(&lifted)?;
        let keep: Vec<usize> = (n..2 * n).collect();
        Ok(restricted.project_coords(&keep)?)
    }

    /// Preimage `H^{-1}(S)`.
    pub fn preimage_of_cone(&self, s: &PolyCone<S>) -> Result<PolyCone<S>, ProcessError> {
        self.inverse().image_of_cone(s)
    }

    /// `dom H`: projection of the graph onto the `x` coordinates.
    pub fn domain(&self) -> Result<PolyCone<S>, ProcessError> {
        let keep: Vec<usize> = (0..self.n).collect();
        Ok(self.graph.project_coords(&keep)?)
    }

    /// `im H`: projection of the graph onto the `y` coordinates.
    pub fn image(&self) -> Result<PolyCone<S>, ProcessError> {
        let keep: Vec<usize> = (self.n..2 * self.n).collect();
        Ok(self.graph.project_coords(&keep)?)
    }

    /// Is `dom H = R^n`?
    pub fn is_strict(&self) -> Result<bool, ProcessError> {
        Ok(self.domain()?.is_full_space()?)
    }

    /// `H(0)` as a cone.
    pub fn image_of_origin(&self) -> Result<PolyCone<S>, ProcessError> {
        let zero = vec![S::zero(); self.n];
        Ok(self.image_of_point(&zero)?.to_cone()?)
    }

    /// The inverse process: the graph with coordinates swapped.
    pub fn inverse(&self) -> ConvexProcess<S> {
        let n = self.n;
        let mut rows = vec![vec![S::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            rows[i][n + i] = S::one();
            rows[n + i][i] = S::one();
        }
        let graph = self.graph.apply_orthogonal(&rows).expect("swap is square");
        ConvexProcess { n, graph }
    }

    /// Relational composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ConvexProcess<S>) -> Result<ConvexProcess<S>, ProcessError> {
        if other.n != self.n {
            return Err(ProcessError::Dimension { expected: self.n, got: other.n });
        }
        let n = self.n;
        // Coordinates (x, y, z): (x, y) ∈ graph(other), (y, z) ∈ graph(self).
        let first = other.graph.cylinder_into(3 * n, &(0..2 * n).collect::<Vec<_>>())?;
        let second = self.graph.cylinder_into(3 * n, &(n..3 * n).collect::<Vec<_>>())?;
        let combined = first.intersect(&second)?;
        let keep: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
        let graph = combined.project_coords(&keep)?.dd_convert()?;
        Ok(ConvexProcess { n, graph })
    }

    /// `H^q` by repeated composition with DD minimization after each step.
    pub fn power(&self, q: usize) -> Result<ConvexProcess<S>, ProcessError> {
        if q == 0 {
            return Err(ProcessError::Internal("power requires q >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..q {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Dual process: `H^+` (adjoint) or `H^-`, via the polar of the graph
    /// and an orthogonal coordinate swap.
    pub fn dual(&self, sign: PolarSign) -> ConvexProcess<S> {
        let n = self.n;
        let polar = self.graph.polar(PolarSign::Negative);
        // graph(H^+) = {(q,p) : (p,-q) ∈ polar};
        // graph(H^-) = {(q,p) : (-p,q) ∈ polar}.
        let mut rows = vec![vec![S::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            match sign {
                PolarSign::Positive => {
                    // (a, b) ↦ (-b, a)
                    rows[i][n + i] = -S::one();
                    rows[n + i][i] = S::one();
                }
                PolarSign::Negative => {
                    // (a, b) ↦ (b, -a)
                    rows[i][n + i] = S::one();
                    rows[n + i][i] = -S::one();
                }
            }
        }
        let graph = polar.apply_orthogonal(&rows).expect("swap is square");
        ConvexProcess { n, graph }
    }

    /// `L_-`: the largest linear process with graph inside `graph(H)`.
    pub fn minimal_linear(&self) -> Result<LinearProcess<S>, ProcessError> {
        let graph = self.graph.lineality()?;
        Ok(LinearProcess(ConvexProcess { n: self.n, graph }))
    }

    /// `L_+`: the smallest linear process with graph containing `graph(H)`.
    pub fn maximal_linear(&self) -> Result<LinearProcess<S>, ProcessError> {
        let graph = self.graph.span()?;
        Ok(LinearProcess(ConvexProcess { n: self.n, graph }))
    }

    /// Graph equality of processes.
    pub fn equals(&self, other: &ConvexProcess<S>) -> Result<bool, ProcessError> {
        Ok(self.graph.equals(&other.graph)?)
    }

    /// Iterate `D_{k+1} = {x : H(x) ∩ D_k ≠ ∅}` from `D_1 = dom H` until a
    /// fixed point or `max_iter` refinements (default `4n`).
    ///
    /// The chain is decreasing; a violation of monotonicity is an internal
    /// error. Under `dom H + R_- = R^n` the fixed point must arrive within
    /// `n` steps, and that too is enforced.
    pub fn feasible_set(&self, max_iter: Option<usize>) -> Result<FeasibleSet<S>, ProcessError> {
        let n = self.n;
        let cap = max_iter.unwrap_or(4 * n).max(1);
        let mut current = self.domain()?.dd_convert()?;
        let mut iterations = 0usize;
        let mut converged = false;
        let positions: Vec<usize> = (n..2 * n).collect();
        let keep: Vec<usize> = (0..n).collect();
        while iterations < cap {
            let lifted = current.cylinder_into(2 * n, &positions)?;
            let restricted = self.graph.intersect(&lifted)?;
            let next = restricted.project_coords(&keep)?.dd_convert()?;
            iterations += 1;
            if !next.subset_of(&current)? {
                return Err(ProcessError::Internal(
                    "feasible-set iteration is not monotonically decreasing".into(),
                ));
            }
            if current.subset_of(&next)? {
                converged = true;
                break;
            }
            current = next;
        }
        if (!converged || iterations > n) && self.check_domain_condition()? {
            return Err(ProcessError::Internal(format!(
                "domain condition holds but the feasibility iteration took {iterations} steps \
                 (converged: {converged}) for n = {n}"
            )));
        }
        Ok(FeasibleSet { cone: current, converged, iterations })
    }

    /// `dom H + R_- = R^n`?
    pub fn check_domain_condition(&self) -> Result<bool, ProcessError> {
        let dom = self.domain()?;
        let r_minus = self.minimal_linear()?.reachable()?;
        Ok(dom.sum(&r_minus)?.is_full_space()?)
    }

    /// `F(H)^- ∩ cl F(H^+) = {0}` and the same for `H^-`.
    ///
    /// A trivial intersection is certified even when the dual's feasibility
    /// iteration has not converged, because the iterate always encloses the
    /// true feasible set. A nontrivial intersection is only conclusive when
    /// the dual iteration converged.
    pub fn check_transversality(
        &self,
        max_iter: Option<usize>,
    ) -> Result<Transversality, ProcessError> {
        let feas = self.feasible_set(max_iter)?;
        if !feas.converged {
            return Ok(Transversality { pos: Verdict::Inconclusive, neg: Verdict::Inconclusive });
        }
        let polar = feas.cone.polar(PolarSign::Negative);
        let mut verdicts = [Verdict::Inconclusive; 2];
        for (slot, sign) in [(0usize, PolarSign::Positive), (1, PolarSign::Negative)] {
            let dual_feas = self.dual(sign).feasible_set(max_iter)?;
            let meet = polar.intersect(&dual_feas.cone)?;
            verdicts[slot] = if meet.is_trivial()? {
                Verdict::Holds
            } else if dual_feas.converged {
                Verdict::Fails
            } else {
                Verdict::Inconclusive
            };
        }
        Ok(Transversality { pos: verdicts[0], neg: verdicts[1] })
    }

    /// Necessary condition for a strong Lyapunov function:
    /// `F(H) ∩ H(0) = {0}`.
    pub fn check_necessary_condition(
        &self,
        max_iter: Option<usize>,
    ) -> Result<Verdict, ProcessError> {
        let feas = self.feasible_set(max_iter)?;
        let h0 = self.image_of_origin()?;
        let meet = feas.cone.intersect(&h0)?;
        if meet.is_trivial()? {
            // The outer approximation suffices for the trivial verdict.
            return Ok(Verdict::Holds);
        }
        if feas.converged {
            Ok(Verdict::Fails)
        } else {
            Ok(Verdict::Inconclusive)
        }
    }
}

impl<S: Scalar> LinearProcess<S> {
    /// Wrap a process after checking its graph is a subspace.
    pub fn try_from_process(p: ConvexProcess<S>) -> Result<Self, ProcessError> {
        if !p.graph.is_subspace()? {
            return Err(ProcessError::Internal("graph is not a subspace".into()));
        }
        Ok(LinearProcess(p))
    }

    pub fn as_process(&self) -> &ConvexProcess<S> {
        &self.0
    }

    pub fn state_dim(&self) -> usize {
        self.0.n
    }

    /// `L^⊥`: the (coinciding) positive/negative dual of a linear process.
    pub fn ortho_dual(&self) -> LinearProcess<S> {
        LinearProcess(self.0.dual(PolarSign::Positive))
    }

    /// `R(L) = L^n(0)`, exact after `n` compositions.
    pub fn reachable(&self) -> Result<PolyCone<S>, ProcessError> {
        let n = self.0.n;
        let mut set = PolyCone::zero(n);
        for _ in 0..n {
            set = self.0.image_of_cone(&set)?;
        }
        Ok(set)
    }

    /// `F(L) = L^{-n}(R^n)`, exact after `n` compositions.
    pub fn feasible(&self) -> Result<PolyCone<S>, ProcessError> {
        let n = self.0.n;
        let inv = self.0.inverse();
        let mut set = PolyCone::full_space(n);
        for _ in 0..n {
            set = inv.image_of_cone(&set)?;
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolyCone;

    type P = ConvexProcess<f64>;

    /// H(x) = [0 0; 0 1/2]x + R x {0} on {x : x1 - 2 x2 >= 0, x2 >= 0}.
    fn example2() -> P {
        let a = vec![vec![0.0, 0.0], vec![0.0, 0.5]];
        let input = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        let state =
            PolyCone::from_hrep(2, vec![vec![-1.0, 2.0], vec![0.0, -1.0]], vec![]).unwrap();
        P::from_affine_map(&a, &input, Some(&state)).unwrap()
    }

    /// H(x) = -x/2 + {0} x R_- on {x : x2 >= 0}.
    fn example3() -> P {
        let a = vec![vec![-0.5, 0.0], vec![0.0, -0.5]];
        let input = PolyCone::from_generators(2, vec![vec![0.0, -1.0]]).unwrap();
        let state = PolyCone::from_hrep(2, vec![vec![0.0, -1.0]], vec![]).unwrap();
        P::from_affine_map(&a, &input, Some(&state)).unwrap()
    }

    fn half_identity() -> P {
        P::strict_linear(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap()
    }

    #[test]
    fn slices_match_the_fixture_dynamics() {
        let h3 = example3();
        // H((0,1)) = {(0,t) : t <= -1/2}
        let s = h3.image_of_point(&[0.0, 1.0]).unwrap();
        assert!(s.contains(&[0.0, -0.5]).unwrap());
        assert!(s.contains(&[0.0, -3.0]).unwrap());
        assert!(!s.contains(&[0.0, -0.4]).unwrap());
        assert!(!s.contains(&[0.1, -1.0]).unwrap());
        // x outside the domain has an empty slice.
        let out = h3.image_of_point(&[0.0, -1.0]).unwrap();
        assert!(out.is_empty().unwrap());

        let h2 = example2();
        // H((2,1)) = {(t, 1/2) : t ∈ R}
        let s = h2.image_of_point(&[2.0, 1.0]).unwrap();
        assert!(s.contains(&[7.0, 0.5]).unwrap());
        assert!(s.contains(&[-7.0, 0.5]).unwrap());
        assert!(!s.contains(&[0.0, 0.4]).unwrap());
    }

    #[test]
    fn domain_of_example2() {
        let dom = example2().domain().unwrap();
        let expected =
            PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![2.0, 1.0]]).unwrap();
        assert!(dom.equals(&expected).unwrap());
    }

    #[test]
    fn inverse_is_an_involution() {
        let h = example2();
        assert!(h.inverse().inverse().equals(&h).unwrap());
    }

    #[test]
    fn power_of_contraction_reaches_zero_only() {
        let l = P::strict_linear(&[vec![0.5, 0.0], vec![0.0, 1.0 / 3.0]]).unwrap();
        let p2 = l.power(2).unwrap();
        let img = p2.image_of_point(&[4.0, 9.0]).unwrap();
        assert!(img.contains(&[1.0, 1.0]).unwrap());
        assert!(!img.contains(&[1.0, 1.1]).unwrap());
        // R(L) for the strict single-valued map: L^n(0) = {0}.
        let lin = LinearProcess::try_from_process(l).unwrap();
        assert!(lin.reachable().unwrap().is_trivial().unwrap());
    }

    #[test]
    fn dual_of_strict_linear_is_the_adjoint() {
        let a = vec![vec![1.0, 2.0], vec![0.0, -1.0]];
        let h = P::strict_linear(&a).unwrap();
        let hp = h.dual(PolarSign::Positive);
        // H^+(q) = {A' q}.
        for q in [[1.0, 0.0], [0.3, -0.7], [2.0, 5.0]] {
            let expect =
                [a[0][0] * q[0] + a[1][0] * q[1], a[0][1] * q[0] + a[1][1] * q[1]];
            let s = hp.image_of_point(&q).unwrap();
            assert!(s.contains(&expect).unwrap());
            assert!(!s.contains(&[expect[0] + 0.1, expect[1]]).unwrap());
        }
    }

    #[test]
    fn dual_of_example3_matches_hand_computation() {
        let h = example3();
        let hp = h.dual(PolarSign::Positive);
        // dom H^+ = {q : q2 <= 0}; H^+(q) = {(-q1/2, p2) : p2 <= -q2/2}.
        let dom = hp.domain().unwrap();
        let expected = PolyCone::from_hrep(2, vec![vec![0.0, 1.0]], vec![]).unwrap();
        assert!(dom.equals(&expected).unwrap());
        let s = hp.image_of_point(&[2.0, -2.0]).unwrap();
        assert!(s.contains(&[-1.0, 1.0]).unwrap());
        assert!(s.contains(&[-1.0, 0.0]).unwrap());
        assert!(!s.contains(&[-1.0, 1.1]).unwrap());
        assert!(!s.contains(&[-0.9, 0.0]).unwrap());
    }

    #[test]
    fn dual_involution_and_sign_symmetry() {
        for h in [example2(), example3(), half_identity()] {
            let hp = h.dual(PolarSign::Positive);
            assert!(hp.dual(PolarSign::Negative).equals(&h).unwrap());
            // H^+(q) = -H^-(-q) on a sample of points.
            let hm = h.dual(PolarSign::Negative);
            for q in [[1.0, 0.0], [0.0, -1.0], [-0.5, 0.25], [0.4, 0.8]] {
                let plus = hp.image_of_point(&q).unwrap();
                let minus = hm.image_of_point(&[-q[0], -q[1]]).unwrap();
                match (plus.any_point().unwrap(), minus.any_point().unwrap()) {
                    (Some(p), Some(_)) => {
                        assert!(minus.contains(&[-p[0], -p[1]]).unwrap());
                    }
                    (None, None) => {}
                    (a, b) => panic!("emptiness mismatch at {q:?}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn minimal_linear_of_example2() {
        // lin(graph) = span{(0,0,1,0)}: dom L_- = {0}, L_-(0) = R x {0}.
        let lm = example2().minimal_linear().unwrap();
        let expected = PolyCone::subspace(4, vec![vec![0.0, 0.0, 1.0, 0.0]]).unwrap();
        assert!(lm.as_process().graph().equals(&expected).unwrap());
        let r = lm.reachable().unwrap();
        let x_axis = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        assert!(r.equals(&x_axis).unwrap());
    }

    #[test]
    fn linear_identities_for_identity_map() {
        let ident = P::strict_linear(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let l = LinearProcess::try_from_process(ident).unwrap();
        assert!(l.reachable().unwrap().is_trivial().unwrap());
        assert!(l.feasible().unwrap().is_full_space().unwrap());
    }

    #[test]
    fn feasible_set_of_example3_is_the_x_axis() {
        let f = example3().feasible_set(None).unwrap();
        assert!(f.converged);
        let x_axis = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        assert!(f.cone.equals(&x_axis).unwrap());
    }

    #[test]
    fn feasible_set_of_example2_is_the_domain() {
        let h = example2();
        let f = h.feasible_set(None).unwrap();
        assert!(f.converged);
        assert!(f.cone.equals(&h.domain().unwrap()).unwrap());
    }

    #[test]
    fn feasible_set_of_strict_linear_is_everything() {
        let f = half_identity().feasible_set(None).unwrap();
        assert!(f.converged);
        assert!(f.cone.is_full_space().unwrap());
    }

    #[test]
    fn domain_condition_on_fixtures() {
        assert!(half_identity().check_domain_condition().unwrap());
        assert!(!example2().check_domain_condition().unwrap());
        assert!(!example3().check_domain_condition().unwrap());
    }

    #[test]
    fn transversality_on_fixtures() {
        // Strict linear: F(H)^- = {0}, both verdicts hold.
        let t = half_identity().check_transversality(None).unwrap();
        assert_eq!(t.pos, Verdict::Holds);
        assert_eq!(t.neg, Verdict::Holds);
        // Example 3: F(H)^- = {y : y1 = 0} meets F(H^+) = {q : q2 <= 0}
        // in the ray {(0, t) : t <= 0}.
        let t = example3().check_transversality(None).unwrap();
        assert_eq!(t.pos, Verdict::Fails);
    }

    #[test]
    fn necessary_condition_on_fixtures() {
        // Example 3: H(0) = {0} x R_-, F(H) the x-axis, intersection {0}.
        assert_eq!(example3().check_necessary_condition(None).unwrap(), Verdict::Holds);
        // Single-valued linear: H(0) = {0}.
        assert_eq!(half_identity().check_necessary_condition(None).unwrap(), Verdict::Holds);
        // H(x) = R^n for all x: H(0) ⊇ F(H) = R^n.
        let all = ConvexProcess::from_affine_map(
            &[vec![0.0, 0.0], vec![0.0, 0.0]],
            &PolyCone::full_space(2),
            None,
        )
        .unwrap();
        assert_eq!(all.check_necessary_condition(None).unwrap(), Verdict::Fails);
    }

    #[test]
    fn image_of_domain_for_example2() {
        let h = example2();
        let dom = h.domain().unwrap();
        let img = h.image_of_cone(&dom).unwrap();
        let expected = PolyCone::from_hrep(2, vec![vec![0.0, -1.0]], vec![]).unwrap();
        assert!(img.equals(&expected).unwrap());
    }

    #[test]
    fn origin_identity_via_dual_domain() {
        // H(0) = (dom H^+)^+ for closed processes.
        for h in [example2(), example3(), half_identity()] {
            let h0 = h.image_of_origin().unwrap();
            let dom_plus = h.dual(PolarSign::Positive).domain().unwrap();
            assert!(h0.equals(&dom_plus.polar(PolarSign::Positive)).unwrap());
        }
    }

    #[test]
    fn lemma1_shift_identity() {
        // H(x + y) = H(x) + L(y) for x ∈ dom H, y ∈ dom L with L = L_-.
        let strict = ConvexProcess::from_affine_map(
            &[vec![0.5, 0.1], vec![0.0, 0.25]],
            &PolyCone::from_generators(2, vec![vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap(),
            None,
        )
        .unwrap();
        let sl = strict.minimal_linear().unwrap();
        let x = [0.7, -0.3];
        let dom_l = sl.as_process().domain().unwrap();
        let y = dom_l.rel_interior_point().unwrap();
        let lhs = strict.image_of_point(&[x[0] + y[0], x[1] + y[1]]).unwrap();
        let hx = strict.image_of_point(&x).unwrap();
        let ly = sl.as_process().image_of_point(&y).unwrap();
        let rhs = hx.minkowski_sum(&ly).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }
}
