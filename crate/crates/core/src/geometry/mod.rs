//! Polyhedral convex cones and polyhedra: dual representations, polars,
//! lineality, spans, sums, intersections, coordinate projections.

mod dd;
mod polyhedron;

pub use polyhedron::Polyhedron;

use std::sync::OnceLock;

use crate::config::NumericsConfig;
use crate::linalg;
use crate::scalar::{dot, norm, unit, Scalar};

/// Generator representation: pointed rays plus a lineality basis.
///
/// The cone is `cone(rays) + span(lineality)`.
#[derive(Clone, Debug, Default)]
pub struct VRep<S: Scalar> {
    pub rays: Vec<Vec<S>>,
    pub lineality: Vec<Vec<S>>,
}

/// Inequality representation: `{x : a·x <= 0 for all a, e·x = 0 for all e}`.
#[derive(Clone, Debug, Default)]
pub struct HRep<S: Scalar> {
    pub inequalities: Vec<Vec<S>>,
    pub equalities: Vec<Vec<S>>,
}

/// Canonical (minimal, normalized, deterministic) pair of representations.
#[derive(Clone, Debug)]
pub struct CanonRep<S: Scalar> {
    pub v: VRep<S>,
    pub h: HRep<S>,
}

/// Which polar cone to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarSign {
    /// `{y : x·y <= 0 for all x in C}`
    Negative,
    /// `{y : x·y >= 0 for all x in C}`
    Positive,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("double description exceeded the ray cap: {count} > {cap}")]
    DdCapExceeded { count: usize, cap: usize },
    #[error("generator and inequality representations disagree")]
    InconsistentReps,
    #[error("cone has no representation")]
    NoRepresentation,
    #[error("solver failure: {0}")]
    SolverFailure(String),
}

/// A polyhedral convex cone with dual (generator and inequality)
/// representation and lazy double-description conversion.
///
/// Values are immutable after construction; conversion fills a private cell,
/// so sharing across threads is safe and all queries are pure.
#[derive(Debug)]
pub struct PolyCone<S: Scalar> {
    dim: usize,
    cfg: NumericsConfig<S>,
    raw_v: Option<VRep<S>>,
    raw_h: Option<HRep<S>>,
    canon: OnceLock<Result<CanonRep<S>, GeometryError>>,
}

impl<S: Scalar> Clone for PolyCone<S> {
    fn clone(&self) -> Self {
        PolyCone {
            dim: self.dim,
            cfg: self.cfg,
            raw_v: self.raw_v.clone(),
            raw_h: self.raw_h.clone(),
            canon: self.canon.clone(),
        }
    }
}

fn normalize_rows<S: Scalar>(dim: usize, rows: Vec<Vec<S>>, tol: S) -> Result<Vec<Vec<S>>, GeometryError> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: r.len() });
        }
        if let Some(u) = unit(&r, tol) {
            out.push(u);
        }
    }
    Ok(out)
}

impl<S: Scalar> PolyCone<S> {
    /// Cone generated by `rays` (an empty list is the origin `{0}`).
    pub fn from_generators(dim: usize, rays: Vec<Vec<S>>) -> Result<Self, GeometryError> {
        Self::from_parts(dim, Some(VRep { rays, lineality: Vec::new() }), None, NumericsConfig::default())
    }

    /// Cone `{x : a·x <= 0, e·x = 0}` (no rows is all of space).
    pub fn from_hrep(dim: usize, inequalities: Vec<Vec<S>>, equalities: Vec<Vec<S>>) -> Result<Self, GeometryError> {
        Self::from_parts(dim, None, Some(HRep { inequalities, equalities }), NumericsConfig::default())
    }

    /// General constructor; at least one representation must be present.
    pub fn from_parts(
        dim: usize,
        v: Option<VRep<S>>,
        h: Option<HRep<S>>,
        cfg: NumericsConfig<S>,
    ) -> Result<Self, GeometryError> {
        if v.is_none() && h.is_none() {
            return Err(GeometryError::NoRepresentation);
        }
        let raw_v = match v {
            Some(v) => Some(VRep {
                rays: normalize_rows(dim, v.rays, cfg.tol_pivot)?,
                lineality: normalize_rows(dim, v.lineality, cfg.tol_pivot)?,
            }),
            None => None,
        };
        let raw_h = match h {
            Some(h) => Some(HRep {
                inequalities: normalize_rows(dim, h.inequalities, cfg.tol_pivot)?,
                equalities: normalize_rows(dim, h.equalities, cfg.tol_pivot)?,
            }),
            None => None,
        };
        Ok(PolyCone { dim, cfg, raw_v, raw_h, canon: OnceLock::new() })
    }

    /// All of `R^n`.
    pub fn full_space(dim: usize) -> Self {
        Self::from_hrep(dim, Vec::new(), Vec::new()).expect("full space is well formed")
    }

    /// The origin `{0}`.
    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, Vec::new()).expect("zero cone is well formed")
    }

    /// Single-ray cone through `ray`.
    pub fn ray(ray: Vec<S>) -> Result<Self, GeometryError> {
        let dim = ray.len();
        Self::from_generators(dim, vec![ray])
    }

    /// Subspace spanned by `basis`.
    pub fn subspace(dim: usize, basis: Vec<Vec<S>>) -> Result<Self, GeometryError> {
        Self::from_parts(
            dim,
            Some(VRep { rays: Vec::new(), lineality: basis }),
            None,
            NumericsConfig::default(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cfg(&self) -> &NumericsConfig<S> {
        &self.cfg
    }

    pub fn with_cfg(mut self, cfg: NumericsConfig<S>) -> Self {
        self.cfg = cfg;
        self.canon = OnceLock::new();
        self
    }

    /// Canonical representations, materializing both via double description
    /// on first use. Cross-checks mutual consistency when both raw
    /// representations were supplied.
    pub fn canon(&self) -> Result<&CanonRep<S>, GeometryError> {
        self.canon
            .get_or_init(|| self.compute_canon())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn compute_canon(&self) -> Result<CanonRep<S>, GeometryError> {
        let canon = match (&self.raw_h, &self.raw_v) {
            (Some(h), _) => {
                let v = dd::hrep_to_vrep(self.dim, h, &self.cfg)?;
                let h = dd::vrep_to_hrep(self.dim, &v, &self.cfg)?;
                // Re-run to drop redundant rows discovered through the polar.
                let v = dd::hrep_to_vrep(self.dim, &h, &self.cfg)?;
                CanonRep { v, h }
            }
            (None, Some(v)) => {
                let h = dd::vrep_to_hrep(self.dim, v, &self.cfg)?;
                let v = dd::hrep_to_vrep(self.dim, &h, &self.cfg)?;
                CanonRep { v, h }
            }
            (None, None) => return Err(GeometryError::NoRepresentation),
        };
        if let (Some(h), Some(v)) = (&self.raw_h, &self.raw_v) {
            // Cross-consistency: supplied generators must satisfy supplied rows.
            for g in v.rays.iter().chain(&v.lineality) {
                let ok_ineq = h.inequalities.iter().all(|a| dot(a, g) <= self.cfg.tol_mem);
                let ok_eq = h.equalities.iter().all(|e| dot(e, g).abs() <= self.cfg.tol_mem);
                if !(ok_ineq && ok_eq) {
                    return Err(GeometryError::InconsistentReps);
                }
            }
        }
        Ok(canon)
    }

    /// Materialize both representations (the explicit conversion operation).
    pub fn dd_convert(&self) -> Result<PolyCone<S>, GeometryError> {
        let canon = self.canon()?;
        Ok(PolyCone {
            dim: self.dim,
            cfg: self.cfg,
            raw_v: Some(canon.v.clone()),
            raw_h: Some(canon.h.clone()),
            canon: self.canon.clone(),
        })
    }

    /// Minimal generators of the pointed part.
    pub fn generators(&self) -> Result<&[Vec<S>], GeometryError> {
        Ok(&self.canon()?.v.rays)
    }

    /// Orthonormal basis of the lineality space.
    pub fn lineality_basis(&self) -> Result<&[Vec<S>], GeometryError> {
        Ok(&self.canon()?.v.lineality)
    }

    /// Generators plus `±lineality` basis vectors: a finite set whose conic
    /// hull is the cone.
    pub fn spanning_directions(&self) -> Result<Vec<Vec<S>>, GeometryError> {
        let canon = self.canon()?;
        let mut dirs = canon.v.rays.clone();
        for l in &canon.v.lineality {
            dirs.push(l.clone());
            dirs.push(l.iter().map(|&x| -x).collect());
        }
        Ok(dirs)
    }

    /// The H-representation rows currently available without conversion
    /// (raw if supplied, canonical otherwise).
    pub fn hrep(&self) -> Result<HRep<S>, GeometryError> {
        if let Some(h) = &self.raw_h {
            return Ok(h.clone());
        }
        Ok(self.canon()?.h.clone())
    }

    /// A generating set available without conversion (raw if supplied).
    pub fn vrep(&self) -> Result<VRep<S>, GeometryError> {
        if let Some(v) = &self.raw_v {
            return Ok(v.clone());
        }
        Ok(self.canon()?.v.clone())
    }

    pub fn has_raw_vrep(&self) -> bool {
        self.raw_v.is_some()
    }

    pub fn has_raw_hrep(&self) -> bool {
        self.raw_h.is_some()
    }

    /// Membership via H-representation sign checks at the membership
    /// tolerance, scaled by the norm of the point.
    pub fn contains(&self, x: &[S]) -> Result<bool, GeometryError> {
        if x.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let h = match &self.raw_h {
            Some(h) => h.clone(),
            None => self.canon()?.h.clone(),
        };
        let tol = self.cfg.tol_mem * S::one().max(norm(x));
        let ok = h.inequalities.iter().all(|a| dot(a, x) <= tol)
            && h.equalities.iter().all(|e| dot(e, x).abs() <= tol);
        Ok(ok)
    }

    /// Relative-interior membership: inside the span, strictly inside every
    /// non-implicit facet.
    pub fn rel_interior_contains(&self, x: &[S]) -> Result<bool, GeometryError> {
        if x.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let canon = self.canon()?;
        let scale = S::one().max(norm(x));
        let tol = self.cfg.tol_mem * scale;
        let in_span = canon.h.equalities.iter().all(|e| dot(e, x).abs() <= tol);
        if !in_span {
            return Ok(false);
        }
        // Canonical facet rows are never implicit equalities, so strictness
        // against each of them is exactly relative-interior membership.
        Ok(canon.h.inequalities.iter().all(|a| dot(a, x) < -tol))
    }

    /// `{0}`?
    pub fn is_trivial(&self) -> Result<bool, GeometryError> {
        let canon = self.canon()?;
        Ok(canon.v.rays.is_empty() && canon.v.lineality.is_empty())
    }

    /// All of space?
    pub fn is_full_space(&self) -> Result<bool, GeometryError> {
        let canon = self.canon()?;
        Ok(canon.h.inequalities.is_empty() && canon.h.equalities.is_empty())
    }

    /// Is the cone a subspace (no pointed part)?
    pub fn is_subspace(&self) -> Result<bool, GeometryError> {
        Ok(self.canon()?.v.rays.is_empty())
    }

    /// Set equality via mutual membership of spanning directions.
    pub fn equals(&self, other: &PolyCone<S>) -> Result<bool, GeometryError> {
        Ok(self.subset_of(other)? && other.subset_of(self)?)
    }

    /// Inclusion: every spanning direction of `self` belongs to `other`.
    pub fn subset_of(&self, other: &PolyCone<S>) -> Result<bool, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        for g in self.spanning_directions()? {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Negative or positive polar cone.
    ///
    /// Polarity swaps representations: the polar of `{x : Ax <= 0, Ex = 0}`
    /// is generated by the rows of `A` and `±E`, and the polar of
    /// `cone(R) + span(L)` is `{y : R y <= 0, L y = 0}`. Both directions are
    /// exact, no conversion required.
    pub fn polar(&self, sign: PolarSign) -> PolyCone<S> {
        let flip = |rows: &Vec<Vec<S>>| -> Vec<Vec<S>> {
            match sign {
                PolarSign::Negative => rows.clone(),
                PolarSign::Positive => rows.iter().map(|r| r.iter().map(|&x| -x).collect()).collect(),
            }
        };
        let raw_v = self.raw_h.as_ref().map(|h| VRep {
            rays: flip(&h.inequalities),
            lineality: h.equalities.clone(),
        });
        let raw_h = self.raw_v.as_ref().map(|v| HRep {
            inequalities: flip(&v.rays),
            equalities: v.lineality.clone(),
        });
        PolyCone { dim: self.dim, cfg: self.cfg, raw_v, raw_h, canon: OnceLock::new() }
    }

    /// Pointwise negation `-C`.
    pub fn negate(&self) -> PolyCone<S> {
        let neg = |rows: &Vec<Vec<S>>| rows.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
        let raw_v = self.raw_v.as_ref().map(|v| VRep { rays: neg(&v.rays), lineality: v.lineality.clone() });
        let raw_h = self.raw_h.as_ref().map(|h| HRep { inequalities: neg(&h.inequalities), equalities: h.equalities.clone() });
        PolyCone { dim: self.dim, cfg: self.cfg, raw_v, raw_h, canon: OnceLock::new() }
    }

    /// The largest subspace contained in the cone.
    pub fn lineality(&self) -> Result<PolyCone<S>, GeometryError> {
        let canon = self.canon()?;
        PolyCone::subspace(self.dim, canon.v.lineality.clone())
    }

    /// The smallest subspace containing the cone (`C - C`).
    pub fn span(&self) -> Result<PolyCone<S>, GeometryError> {
        let canon = self.canon()?;
        let mut vectors = canon.v.rays.clone();
        vectors.extend(canon.v.lineality.iter().cloned());
        let basis = linalg::orthonormalize(&vectors, self.cfg.tol_pivot);
        PolyCone::subspace(self.dim, basis)
    }

    /// Minkowski sum: generators are concatenated, exactly.
    pub fn sum(&self, other: &PolyCone<S>) -> Result<PolyCone<S>, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let a = self.vrep()?;
        let b = other.vrep()?;
        let mut rays = a.rays;
        rays.extend(b.rays);
        let mut lineality = a.lineality;
        lineality.extend(b.lineality);
        PolyCone::from_parts(self.dim, Some(VRep { rays, lineality }), None, self.cfg)
    }

    /// Intersection: H-representations are concatenated, exactly.
    pub fn intersect(&self, other: &PolyCone<S>) -> Result<PolyCone<S>, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let a = self.hrep()?;
        let b = other.hrep()?;
        let mut inequalities = a.inequalities;
        inequalities.extend(b.inequalities);
        let mut equalities = a.equalities;
        equalities.extend(b.equalities);
        PolyCone::from_parts(self.dim, None, Some(HRep { inequalities, equalities }), self.cfg)
    }

    /// Orthogonal projection of the cone onto the coordinates in `keep`
    /// (in the given order). Uses generator projection when a generator
    /// representation is at hand with fewer rows, Fourier-Motzkin
    /// elimination on the inequality representation otherwise.
    pub fn project_coords(&self, keep: &[usize]) -> Result<PolyCone<S>, GeometryError> {
        for &k in keep {
            if k >= self.dim {
                return Err(GeometryError::DimensionMismatch { expected: self.dim, got: k });
            }
        }
        let v_rows = self.raw_v.as_ref().map(|v| v.rays.len() + v.lineality.len());
        let h_rows = self.raw_h.as_ref().map(|h| h.inequalities.len() + h.equalities.len());
        let use_v = match (v_rows, h_rows) {
            (Some(v), Some(h)) => v <= h,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => return Err(GeometryError::NoRepresentation),
        };
        if use_v {
            let v = self.vrep()?;
            let take = |rows: &[Vec<S>]| -> Vec<Vec<S>> {
                rows.iter().map(|r| keep.iter().map(|&k| r[k]).collect()).collect()
            };
            PolyCone::from_parts(
                keep.len(),
                Some(VRep { rays: take(&v.rays), lineality: take(&v.lineality) }),
                None,
                self.cfg,
            )
        } else {
            let h = self.hrep()?;
            let poly = Polyhedron::new(
                self.dim,
                h.inequalities.into_iter().map(|a| (a, S::zero())).collect(),
                h.equalities.into_iter().map(|e| (e, S::zero())).collect(),
                self.cfg,
            )?;
            let projected = poly.eliminate_all_but(keep)?;
            projected.to_cone()
        }
    }

    /// The same cone embedded in a larger space, placing coordinate `i` of
    /// the cone at position `positions[i]` and leaving other coordinates
    /// free.
    pub fn cylinder_into(&self, ambient: usize, positions: &[usize]) -> Result<PolyCone<S>, GeometryError> {
        if positions.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: positions.len() });
        }
        let h = self.hrep()?;
        let lift = |rows: &[Vec<S>]| -> Vec<Vec<S>> {
            rows.iter()
                .map(|r| {
                    let mut row = vec![S::zero(); ambient];
                    for (i, &p) in positions.iter().enumerate() {
                        row[p] = r[i];
                    }
                    row
                })
                .collect()
        };
        PolyCone::from_parts(
            ambient,
            None,
            Some(HRep { inequalities: lift(&h.inequalities), equalities: lift(&h.equalities) }),
            self.cfg,
        )
    }

    /// Apply an orthogonal linear map given by its rows to both
    /// representations (used for the coordinate swaps of dual processes).
    pub fn apply_orthogonal(&self, rows: &[Vec<S>]) -> Result<PolyCone<S>, GeometryError> {
        if rows.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: rows.len() });
        }
        let map = |vs: &Vec<Vec<S>>| -> Vec<Vec<S>> { vs.iter().map(|v| linalg::matvec(rows, v)).collect() };
        let raw_v = self.raw_v.as_ref().map(|v| VRep { rays: map(&v.rays), lineality: map(&v.lineality) });
        let raw_h = self.raw_h.as_ref().map(|h| HRep { inequalities: map(&h.inequalities), equalities: map(&h.equalities) });
        Ok(PolyCone { dim: self.dim, cfg: self.cfg, raw_v, raw_h, canon: OnceLock::new() })
    }

    /// View as a polyhedron with zero right-hand sides.
    pub fn to_polyhedron(&self) -> Result<Polyhedron<S>, GeometryError> {
        let h = self.hrep()?;
        Polyhedron::new(
            self.dim,
            h.inequalities.into_iter().map(|a| (a, S::zero())).collect(),
            h.equalities.into_iter().map(|e| (e, S::zero())).collect(),
            self.cfg,
        )
    }

    /// Euclidean projection of `p` onto the cone, via QP.
    ///
    /// Together with the projection onto the negative polar this realizes
    /// the Moreau decomposition `p = Π_C(p) + Π_{C^-}(p)` with orthogonal
    /// parts.
    pub fn project_point(&self, p: &[S]) -> Result<Vec<S>, GeometryError> {
        if p.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        let poly = self.to_polyhedron()?;
        match crate::numerics::project_onto(&poly, p) {
            Ok(crate::numerics::QpOutcome::Optimal { point, .. }) => Ok(point),
            Ok(other) => Err(GeometryError::SolverFailure(format!(
                "projection QP did not reach optimality: {other:?}"
            ))),
            Err(e) => Err(GeometryError::SolverFailure(e.to_string())),
        }
    }

    /// A point in the relative interior: the average of the spanning
    /// directions, or `0` for the trivial cone.
    pub fn rel_interior_point(&self) -> Result<Vec<S>, GeometryError> {
        let canon = self.canon()?;
        let mut p = vec![S::zero(); self.dim];
        let mut count = 0usize;
        for g in &canon.v.rays {
            for (pi, &gi) in p.iter_mut().zip(g) {
                *pi = *pi + gi;
            }
            count += 1;
        }
        if count == 0 {
            return Ok(p);
        }
        let f = S::of(1.0 / count as f64);
        for pi in p.iter_mut() {
            *pi = *pi * f;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthant2() -> PolyCone<f64> {
        PolyCone::from_hrep(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]], vec![]).unwrap()
    }

    #[test]
    fn orthant_membership() {
        let c = orthant2();
        assert!(c.contains(&[1.0, 1.0]).unwrap());
        assert!(c.contains(&[0.0, 0.0]).unwrap());
        assert!(!c.contains(&[-1.0, 0.5]).unwrap());
        assert!(!c.rel_interior_contains(&[1.0, 0.0]).unwrap());
        assert!(c.rel_interior_contains(&[1.0, 2.0]).unwrap());
    }

    #[test]
    fn dd_convert_round_trip_equals_original() {
        let c = PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![2.0, 1.0]]).unwrap();
        let converted = c.dd_convert().unwrap();
        assert!(c.equals(&converted).unwrap());
        // Domain cone of a half-plane-constrained map: facets -x2 <= 0 and
        // -x1 + 2 x2 <= 0.
        let h = converted.hrep().unwrap();
        assert_eq!(h.inequalities.len(), 2);
        for row in &h.inequalities {
            assert!(dot(row, &[1.0, 0.0]) <= 1e-9);
            assert!(dot(row, &[2.0, 1.0]) <= 1e-9);
        }
        assert!(converted.contains(&[1.0, 0.4]).unwrap());
        assert!(!converted.contains(&[1.0, 0.6]).unwrap());
    }

    #[test]
    fn full_space_and_zero() {
        let full = PolyCone::<f64>::full_space(3);
        assert!(full.is_full_space().unwrap());
        assert_eq!(full.lineality_basis().unwrap().len(), 3);
        let zero = PolyCone::<f64>::zero(3);
        assert!(zero.is_trivial().unwrap());
        assert!(zero.contains(&[0.0, 0.0, 0.0]).unwrap());
        assert!(!zero.contains(&[1e-3, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn polar_of_orthant() {
        let c = orthant2();
        let p = c.polar(PolarSign::Negative);
        assert!(p.contains(&[-1.0, -1.0]).unwrap());
        assert!(!p.contains(&[1.0, 0.0]).unwrap());
        // (R^n)^- = {0}
        let full = PolyCone::<f64>::full_space(2);
        assert!(full.polar(PolarSign::Negative).is_trivial().unwrap());
    }

    #[test]
    fn polar_example_cone() {
        // cone{(1,0),(2,1)}: negative polar is {y: y1 <= 0, 2 y1 + y2 <= 0}.
        let c = PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![2.0, 1.0]]).unwrap();
        let p = c.polar(PolarSign::Negative);
        assert!(p.contains(&[-1.0, 1.0]).unwrap());
        assert!(p.contains(&[-1.0, 2.0]).unwrap());
        assert!(!p.contains(&[-1.0, 3.0]).unwrap());
        assert!(!p.contains(&[0.5, -2.0]).unwrap());
    }

    #[test]
    fn lineality_and_span() {
        let c = orthant2();
        assert!(c.lineality().unwrap().is_trivial().unwrap());
        assert!(c.span().unwrap().is_full_space().unwrap());
        let v = PolyCone::subspace(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!(v.lineality().unwrap().equals(&v).unwrap());
        assert!(v.span().unwrap().equals(&v).unwrap());
    }

    #[test]
    fn sum_and_intersect() {
        // R x {0} + {0} x R+ = upper half-plane.
        let a = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        let b = PolyCone::from_generators(2, vec![vec![0.0, 1.0]]).unwrap();
        let s = a.sum(&b).unwrap();
        let upper = PolyCone::from_hrep(2, vec![vec![0.0, -1.0]], vec![]).unwrap();
        assert!(s.equals(&upper).unwrap());

        let c = orthant2();
        let i = c.intersect(&c.polar(PolarSign::Negative)).unwrap();
        assert!(i.is_trivial().unwrap());
    }

    #[test]
    fn sum_example_domain_plus_axis() {
        // dom cone{(1,0),(2,1)} + R x {0} = {x : x2 >= 0}.
        let dom = PolyCone::from_generators(2, vec![vec![1.0, 0.0], vec![2.0, 1.0]]).unwrap();
        let axis = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        let s = dom.sum(&axis).unwrap();
        let half = PolyCone::from_hrep(2, vec![vec![0.0, -1.0]], vec![]).unwrap();
        assert!(s.equals(&half).unwrap());
    }

    #[test]
    fn projection_both_routes_agree() {
        // Graph-like cone in R^3, project to first two coordinates.
        let c = PolyCone::from_hrep(
            3,
            vec![vec![-1.0, 0.0, 1.0], vec![0.0, -1.0, -1.0], vec![0.0, 0.0, -1.0]],
            vec![],
        )
        .unwrap();
        let via_h = c.project_coords(&[0, 1]).unwrap();
        let via_v = c.dd_convert().unwrap().project_coords(&[0, 1]).unwrap();
        assert!(via_h.equals(&via_v).unwrap());
    }

    #[test]
    fn into_larger_space_and_back() {
        let c = orthant2();
        let lifted = c.cylinder_into(4, &[1, 3]).unwrap();
        assert!(lifted.contains(&[5.0, 1.0, -2.0, 1.0]).unwrap());
        assert!(!lifted.contains(&[5.0, -1.0, -2.0, 1.0]).unwrap());
        let back = lifted.project_coords(&[1, 3]).unwrap();
        assert!(back.equals(&c).unwrap());
    }

    #[test]
    fn projection_examples() {
        let c = orthant2();
        let p: Vec<f64> = c.project_point(&[1.0, -1.0]).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-9 && p[1].abs() < 1e-9);
        let axis = PolyCone::subspace(2, vec![vec![1.0, 0.0]]).unwrap();
        let p: Vec<f64> = axis.project_point(&[3.0, 4.0]).unwrap();
        assert!((p[0] - 3.0).abs() < 1e-9 && p[1].abs() < 1e-9);
    }

    #[test]
    fn moreau_decomposition_on_random_draws() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=n + 1);
            let rays: Vec<Vec<f64>> =
                (0..k).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let c = PolyCone::from_generators(n, rays).unwrap();
            let point: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let onto = c.project_point(&point).unwrap();
            let polar = c.polar(PolarSign::Negative);
            let onto_polar = polar.project_point(&point).unwrap();
            let mut resid = 0.0f64;
            let mut cross = 0.0f64;
            for i in 0..n {
                resid += (point[i] - onto[i] - onto_polar[i]).powi(2);
                cross += onto[i] * onto_polar[i];
            }
            assert!(resid.sqrt() <= 1e-8, "residual {}", resid.sqrt());
            assert!(cross.abs() <= 1e-8, "orthogonality {}", cross);
        }
    }

    #[test]
    fn works_in_f32() {
        let c: PolyCone<f32> =
            PolyCone::from_hrep(2, vec![vec![-1.0f32, 0.0], vec![0.0, -1.0]], vec![]).unwrap();
        assert_eq!(c.generators().unwrap().len(), 2);
        assert!(c.contains(&[1.0, 1.0]).unwrap());
    }

    #[test]
    fn inconsistent_reps_detected() {
        let bad = PolyCone::from_parts(
            2,
            Some(VRep { rays: vec![vec![1.0, 1.0]], lineality: vec![] }),
            Some(HRep { inequalities: vec![vec![0.0, 1.0]], equalities: vec![] }),
            NumericsConfig::default(),
        )
        .unwrap();
        assert_eq!(bad.canon().unwrap_err(), GeometryError::InconsistentReps);
    }
}
