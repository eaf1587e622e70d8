//! Double description: convert a homogeneous H-representation into a minimal
//! generator representation (pointed rays plus an explicit lineality basis).
//!
//! The algorithm maintains `cone = span(lineality) + cone(rays)` and inserts
//! constraint rows one at a time. While the new row cuts the lineality space,
//! a pivot step shrinks the lineality by one and emits a single ray; once the
//! lineality is clear of the row, the classical ray-splitting step with an
//! algebraic adjacency test (rank of the tight rows) keeps the ray set
//! minimal. Converting the other way is polar duality: the generators of the
//! polar cone are exactly the facet normals of the original.

use crate::config::NumericsConfig;
use crate::linalg;
use crate::scalar::{dot, unit, Scalar};

use super::{GeometryError, HRep, VRep};

/// Outcome of a double-description run.
#[derive(Clone, Debug)]
pub struct DdOutput<S: Scalar> {
    pub rays: Vec<Vec<S>>,
    pub lineality: Vec<Vec<S>>,
}

struct DdState<S: Scalar> {
    dim: usize,
    lineality: Vec<Vec<S>>,
    rays: Vec<Vec<S>>,
    /// All constraint rows inserted so far; used for tightness bookkeeping.
    processed: Vec<Vec<S>>,
    cfg: NumericsConfig<S>,
}

impl<S: Scalar> DdState<S> {
    fn new(dim: usize, cfg: NumericsConfig<S>) -> Self {
        let mut lineality = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            lineality.push(e);
        }
        DdState { dim, lineality, rays: Vec::new(), processed: Vec::new(), cfg }
    }

    /// Index of the lineality vector with the largest |row · l|, if any
    /// exceeds the pivot threshold.
    fn lineality_pivot(&self, row: &[S]) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for (i, l) in self.lineality.iter().enumerate() {
            let v = dot(row, l).abs();
            if v > self.cfg.tol_pivot && best.map_or(true, |(_, bv)| v > bv) {
                best = Some((i, v));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Shrink the lineality space along `row` and emit the pivot direction as
    /// a ray on the feasible side (skipped for equality rows).
    fn pivot_step(&mut self, row: &[S], keep_ray: bool, pivot_idx: usize) {
        let pivot = self.lineality.swap_remove(pivot_idx);
        let dp = dot(row, &pivot);
        let tol = self.cfg.tol_pivot;
        for l in self.lineality.iter_mut() {
            let f = dot(row, l) / dp;
            for (li, &pi) in l.iter_mut().zip(&pivot) {
                *li = *li - f * pi;
            }
            if let Some(u) = unit(l, tol) {
                *l = u;
            }
        }
        for r in self.rays.iter_mut() {
            let f = dot(row, r) / dp;
            for (ri, &pi) in r.iter_mut().zip(&pivot) {
                *ri = *ri - f * pi;
            }
            if let Some(u) = unit(r, tol) {
                *r = u;
            }
        }
        if keep_ray {
            let ray = if dp > S::zero() {
                pivot.iter().map(|&v| -v).collect()
            } else {
                pivot
            };
            if let Some(u) = unit(&ray, tol) {
                self.rays.push(u);
            }
        }
    }

    /// Rays `a` and `b` are adjacent iff the face generated by the rows tight
    /// at both has dimension `lineality + 2`.
    fn adjacent(&self, a: &[S], b: &[S]) -> bool {
        let quotient_dim = self.dim - self.lineality.len();
        let target = match quotient_dim.checked_sub(2) {
            Some(t) => t,
            None => return true,
        };
        let tol = self.cfg.tol_mem;
        let tight: Vec<Vec<S>> = self
            .processed
            .iter()
            .filter(|row| dot(row, a).abs() <= tol && dot(row, b).abs() <= tol)
            .cloned()
            .collect();
        if tight.len() < target {
            return false;
        }
        linalg::rank(&tight, self.dim, self.cfg.tol_pivot) == target
    }

    /// Classical ray-splitting step for a row orthogonal to the lineality.
    fn split_step(&mut self, row: &[S]) -> Result<(), GeometryError> {
        let tol = self.cfg.tol_mem;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for r in self.rays.drain(..) {
            let v = dot(row, &r);
            if v > tol {
                pos.push(r);
            } else if v < -tol {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        if pos.is_empty() {
            // Row does not cut the current cone.
            self.rays = zero;
            self.rays.extend(neg);
            return Ok(());
        }
        let mut new_rays = zero;
        new_rays.extend(neg.iter().cloned());
        for p in &pos {
            for n in &neg {
                if !self.adjacent(p, n) {
                    continue;
                }
                let vp = dot(row, p);
                let vn = dot(row, n);
                // Nonnegative combination lying on the hyperplane row·x = 0.
                let combo: Vec<S> = p
                    .iter()
                    .zip(n)
                    .map(|(&pi, &ni)| vp * ni - vn * pi)
                    .collect();
                if let Some(u) = unit(&combo, self.cfg.tol_pivot) {
                    new_rays.push(u);
                }
                if new_rays.len() > self.cfg.max_dd_rows {
                    return Err(GeometryError::DdCapExceeded {
                        count: new_rays.len(),
                        cap: self.cfg.max_dd_rows,
                    });
                }
            }
        }
        self.rays = dedup_rays(new_rays, self.cfg.tol_geom);
        Ok(())
    }

    fn insert_inequality(&mut self, row: &[S]) -> Result<(), GeometryError> {
        if let Some(idx) = self.lineality_pivot(row) {
            self.pivot_step(row, true, idx);
        } else {
            self.split_step(row)?;
        }
        self.processed.push(row.to_vec());
        Ok(())
    }

    fn insert_equality(&mut self, row: &[S]) -> Result<(), GeometryError> {
        if let Some(idx) = self.lineality_pivot(row) {
            self.pivot_step(row, false, idx);
            self.processed.push(row.to_vec());
        } else {
            // Row is orthogonal to the lineality: realize the equality as a
            // pair of inequalities acting on the rays.
            let negated: Vec<S> = row.iter().map(|&v| -v).collect();
            self.insert_inequality(row)?;
            self.insert_inequality(&negated)?;
        }
        Ok(())
    }

    fn finish(self) -> DdOutput<S> {
        let lineality = linalg::orthonormalize(&self.lineality, self.cfg.tol_pivot);
        let mut rays = Vec::new();
        for r in &self.rays {
            // Remove the lineality component so the pointed part is canonical.
            let proj = linalg::project_onto_span(r, &lineality);
            let perp: Vec<S> = r.iter().zip(&proj).map(|(&a, &b)| a - b).collect();
            if let Some(u) = unit(&perp, self.cfg.tol_geom) {
                rays.push(u);
            }
        }
        let mut rays = dedup_rays(rays, self.cfg.tol_geom);
        sort_vectors(&mut rays);
        DdOutput { rays, lineality }
    }
}

/// Deduplicate unit rays that agree within `tol`.
fn dedup_rays<S: Scalar>(rays: Vec<Vec<S>>, tol: S) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::with_capacity(rays.len());
    for r in rays {
        let dup = out.iter().any(|q| {
            q.iter()
                .zip(&r)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<S>()
                .sqrt()
                <= tol
        });
        if !dup {
            out.push(r);
        }
    }
    out
}

/// Deterministic lexicographic order for canonical generator lists.
pub fn sort_vectors<S: Scalar>(vectors: &mut [Vec<S>]) {
    vectors.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            match x.partial_cmp(y) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
}

/// Generators of the cone `{x : ineqs·x <= 0, eqs·x = 0}`.
///
/// Rows must be unit-normalized by the caller.
pub fn hrep_to_vrep<S: Scalar>(
    dim: usize,
    hrep: &HRep<S>,
    cfg: &NumericsConfig<S>,
) -> Result<VRep<S>, GeometryError> {
    let mut state = DdState::new(dim, *cfg);
    for row in &hrep.equalities {
        state.insert_equality(row)?;
    }
    for row in &hrep.inequalities {
        state.insert_inequality(row)?;
    }
    let out = state.finish();
    Ok(VRep { rays: out.rays, lineality: out.lineality })
}

/// Minimal H-representation of `cone(rays) + span(lineality)` via the polar:
/// the extreme rays of the polar are the facet normals, its lineality spans
/// the orthogonal complement of the cone's span.
pub fn vrep_to_hrep<S: Scalar>(
    dim: usize,
    vrep: &VRep<S>,
    cfg: &NumericsConfig<S>,
) -> Result<HRep<S>, GeometryError> {
    let polar_h = HRep { inequalities: vrep.rays.clone(), equalities: vrep.lineality.clone() };
    let polar_v = hrep_to_vrep(dim, &polar_h, cfg)?;
    Ok(HRep { inequalities: polar_v.rays, equalities: polar_v.lineality })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> NumericsConfig<f64> {
        NumericsConfig::default()
    }

    fn hrep(ineqs: Vec<Vec<f64>>, eqs: Vec<Vec<f64>>) -> HRep<f64> {
        HRep { inequalities: ineqs, equalities: eqs }
    }

    #[test]
    fn orthant_from_hrep() {
        // {x : -x1 <= 0, -x2 <= 0}
        let h = hrep(vec![vec![-1.0, 0.0], vec![0.0, -1.0]], vec![]);
        let v = hrep_to_vrep(2, &h, &cfg()).unwrap();
        assert!(v.lineality.is_empty());
        assert_eq!(v.rays.len(), 2);
        let mut rays = v.rays.clone();
        sort_vectors(&mut rays);
        assert!((rays[0][1] - 1.0).abs() < 1e-12 && rays[0][0].abs() < 1e-12);
        assert!((rays[1][0] - 1.0).abs() < 1e-12 && rays[1][1].abs() < 1e-12);
    }

    #[test]
    fn full_space_has_full_lineality() {
        let h = hrep(vec![], vec![]);
        let v = hrep_to_vrep(3, &h, &cfg()).unwrap();
        assert!(v.rays.is_empty());
        assert_eq!(v.lineality.len(), 3);
    }

    #[test]
    fn halfspace_pivot() {
        // {x : x2 <= 0} in R^2: lineality e1, single ray -e2.
        let h = hrep(vec![vec![0.0, 1.0]], vec![]);
        let v = hrep_to_vrep(2, &h, &cfg()).unwrap();
        assert_eq!(v.lineality.len(), 1);
        assert_eq!(v.rays.len(), 1);
        assert!((v.rays[0][1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_row_is_ignored() {
        // x1 <= 0 twice plus a dominated row.
        let h = hrep(
            vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![2.0f64.sqrt().recip(), 2.0f64.sqrt().recip()]],
            vec![],
        );
        let v = hrep_to_vrep(2, &h, &cfg()).unwrap();
        // {x1 <= 0, x1 + x2 <= 0}: rays (0,-1)?? its cone is
        // {x : x1 <= 0, x1+x2 <= 0} with rays (0,-1) and (-1,1)/sqrt2.
        assert_eq!(v.rays.len(), 2);
        assert!(v.lineality.is_empty());
    }

    #[test]
    fn equality_rows_give_subspace() {
        // {x in R^3 : x1 = 0} is a plane.
        let h = hrep(vec![], vec![vec![1.0, 0.0, 0.0]]);
        let v = hrep_to_vrep(3, &h, &cfg()).unwrap();
        assert!(v.rays.is_empty());
        assert_eq!(v.lineality.len(), 2);
    }

    #[test]
    fn vrep_round_trip_orthant() {
        let v = VRep { rays: vec![vec![1.0, 0.0], vec![0.0, 1.0]], lineality: vec![] };
        let h = vrep_to_hrep(2, &v, &cfg()).unwrap();
        assert_eq!(h.inequalities.len(), 2);
        assert!(h.equalities.is_empty());
        // Each facet normal must be nonpositive on both rays.
        for row in &h.inequalities {
            for ray in &v.rays {
                assert!(dot(row, ray) <= 1e-9);
            }
        }
    }

    #[test]
    fn simplicial_3d_cone() {
        // Cone over the triangle e1, e2, e3 rotated: three facets.
        let v = VRep {
            rays: vec![vec![1.0, 0.0, 0.2], vec![0.0, 1.0, 0.2], vec![-0.3, -0.3, 1.0]],
            lineality: vec![],
        };
        let h = vrep_to_hrep(3, &v, &cfg()).unwrap();
        assert_eq!(h.inequalities.len(), 3);
        let back = hrep_to_vrep(3, &h, &cfg()).unwrap();
        assert_eq!(back.rays.len(), 3);
    }
}
