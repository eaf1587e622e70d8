//! Affine-inequality sets: slices of process graphs, stacked trajectory
//! systems, and the carrier for LP/QP constraints.

use std::sync::OnceLock;

use crate::config::NumericsConfig;
use crate::linalg;
use crate::numerics;
use crate::scalar::{dot, norm, Scalar};

use super::{GeometryError, HRep, PolyCone};

/// `{x : a·x <= b (inequalities), e·x = d (equalities)}`.
#[derive(Debug)]
pub struct Polyhedron<S: Scalar> {
    dim: usize,
    inequalities: Vec<(Vec<S>, S)>,
    equalities: Vec<(Vec<S>, S)>,
    cfg: NumericsConfig<S>,
    empty: OnceLock<Result<bool, GeometryError>>,
}

impl<S: Scalar> Clone for Polyhedron<S> {
    fn clone(&self) -> Self {
        Polyhedron {
            dim: self.dim,
            inequalities: self.inequalities.clone(),
            equalities: self.equalities.clone(),
            cfg: self.cfg,
            empty: self.empty.clone(),
        }
    }
}

impl<S: Scalar> Polyhedron<S> {
    pub fn new(
        dim: usize,
        inequalities: Vec<(Vec<S>, S)>,
        equalities: Vec<(Vec<S>, S)>,
        cfg: NumericsConfig<S>,
    ) -> Result<Self, GeometryError> {
        let mut ineq = Vec::with_capacity(inequalities.len());
        for (a, b) in inequalities {
            if a.len() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, got: a.len() });
            }
            match normalize_row(a, b, false, cfg.tol_pivot) {
                RowKind::Normal(a, b) => ineq.push((a, b)),
                RowKind::Trivial => {}
                RowKind::Infeasible(a, b) => ineq.push((a, b)),
            }
        }
        let mut eq = Vec::with_capacity(equalities.len());
        for (a, b) in equalities {
            if a.len() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, got: a.len() });
            }
            match normalize_row(a, b, true, cfg.tol_pivot) {
                RowKind::Normal(a, b) => eq.push((a, b)),
                RowKind::Trivial => {}
                RowKind::Infeasible(a, b) => eq.push((a, b)),
            }
        }
        Ok(Polyhedron { dim, inequalities: ineq, equalities: eq, cfg, empty: OnceLock::new() })
    }

    pub fn full_space(dim: usize, cfg: NumericsConfig<S>) -> Self {
        Polyhedron { dim, inequalities: Vec::new(), equalities: Vec::new(), cfg, empty: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cfg(&self) -> &NumericsConfig<S> {
        &self.cfg
    }

    pub fn inequalities(&self) -> &[(Vec<S>, S)] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[(Vec<S>, S)] {
        &self.equalities
    }

    pub fn contains(&self, x: &[S]) -> Result<bool, GeometryError> {
        if x.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let tol = self.cfg.tol_mem * S::one().max(norm(x));
        Ok(self.inequalities.iter().all(|(a, b)| dot(a, x) <= *b + tol)
            && self.equalities.iter().all(|(e, d)| (dot(e, x) - *d).abs() <= tol))
    }

    /// Emptiness via an LP feasibility check; the verdict is cached so that
    /// repeated membership-adjacent queries stay consistent.
    pub fn is_empty(&self) -> Result<bool, GeometryError> {
        self.empty
            .get_or_init(|| {
                numerics::feasible_point(self)
                    .map(|opt| opt.is_none())
                    .map_err(|e| GeometryError::SolverFailure(e.to_string()))
            })
            .clone()
    }

    /// Any feasible point, if one exists.
    pub fn any_point(&self) -> Result<Option<Vec<S>>, GeometryError> {
        numerics::feasible_point(self).map_err(|e| GeometryError::SolverFailure(e.to_string()))
    }

    /// Intersection with another polyhedron in the same space.
    pub fn intersect(&self, other: &Polyhedron<S>) -> Result<Polyhedron<S>, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut ineq = self.inequalities.clone();
        ineq.extend(other.inequalities.iter().cloned());
        let mut eq = self.equalities.clone();
        eq.extend(other.equalities.iter().cloned());
        Polyhedron::new(self.dim, ineq, eq, self.cfg)
    }

    /// Add the constraint rows of a cone (zero right-hand sides).
    pub fn intersect_cone(&self, cone: &PolyCone<S>) -> Result<Polyhedron<S>, GeometryError> {
        self.intersect(&cone.to_polyhedron()?)
    }

    /// Shift by a fixed vector: `{x + t : x in self}`.
    pub fn translate(&self, t: &[S]) -> Result<Polyhedron<S>, GeometryError> {
        if t.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: t.len() });
        }
        let ineq = self.inequalities.iter().map(|(a, b)| (a.clone(), *b + dot(a, t))).collect();
        let eq = self.equalities.iter().map(|(e, d)| (e.clone(), *d + dot(e, t))).collect();
        Polyhedron::new(self.dim, ineq, eq, self.cfg)
    }

    /// Round-trip to a cone; requires all right-hand sides to vanish.
    pub fn to_cone(&self) -> Result<PolyCone<S>, GeometryError> {
        let tol = self.cfg.tol_mem;
        for (_, b) in self.inequalities.iter().chain(&self.equalities) {
            if b.abs() > tol {
                return Err(GeometryError::InconsistentReps);
            }
        }
        PolyCone::from_parts(
            self.dim,
            None,
            Some(HRep {
                inequalities: self.inequalities.iter().map(|(a, _)| a.clone()).collect(),
                equalities: self.equalities.iter().map(|(e, _)| e.clone()).collect(),
            }),
            self.cfg,
        )
    }

    /// Recession cone `{d : A d <= 0, E d = 0}`.
    pub fn recession_cone(&self) -> Result<PolyCone<S>, GeometryError> {
        PolyCone::from_parts(
            self.dim,
            None,
            Some(HRep {
                inequalities: self.inequalities.iter().map(|(a, _)| a.clone()).collect(),
                equalities: self.equalities.iter().map(|(e, _)| e.clone()).collect(),
            }),
            self.cfg,
        )
    }

    /// Fourier-Motzkin elimination of every coordinate not in `keep`,
    /// returning the projection onto `keep` (in order). Equalities are used
    /// as substitution pivots before inequality combination.
    pub fn eliminate_all_but(&self, keep: &[usize]) -> Result<Polyhedron<S>, GeometryError> {
        let mut drop: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        let mut ineq = self.inequalities.clone();
        let mut eq = self.equalities.clone();
        let tol = self.cfg.tol_pivot;
        while let Some(col) = drop.pop() {
            // Prefer an equality pivot: substitute and drop the row.
            if let Some(pos) = eq.iter().position(|(e, _)| e[col].abs() > tol) {
                let (pe, pb) = eq.swap_remove(pos);
                let pc = pe[col];
                let subst = |(a, b): &mut (Vec<S>, S)| {
                    let f = a[col] / pc;
                    if f.abs() > S::zero() {
                        for (ai, &pi) in a.iter_mut().zip(&pe) {
                            *ai = *ai - f * pi;
                        }
                        a[col] = S::zero();
                        *b = *b - f * pb;
                    }
                };
                ineq.iter_mut().for_each(subst);
                eq.iter_mut().for_each(subst);
                continue;
            }
            // Discard equalities orthogonal to the column and combine
            // inequalities of opposite sign.
            let mut keep_rows = Vec::new();
            let mut pos_rows = Vec::new();
            let mut neg_rows = Vec::new();
            for (a, b) in ineq.drain(..) {
                if a[col] > tol {
                    pos_rows.push((a, b));
                } else if a[col] < -tol {
                    neg_rows.push((a, b));
                } else {
                    keep_rows.push((a, b));
                }
            }
            for (ap, bp) in &pos_rows {
                for (an, bn) in &neg_rows {
                    let cp = ap[col];
                    let cn = an[col];
                    let mut a: Vec<S> =
                        ap.iter().zip(an).map(|(&x, &y)| cp * y - cn * x).collect();
                    a[col] = S::zero();
                    let b = cp * *bn - cn * *bp;
                    keep_rows.push((a, b));
                    if keep_rows.len() > self.cfg.max_dd_rows {
                        return Err(GeometryError::DdCapExceeded {
                            count: keep_rows.len(),
                            cap: self.cfg.max_dd_rows,
                        });
                    }
                }
            }
            ineq = dedup_rows(keep_rows, self.cfg.tol_geom, self.cfg.tol_pivot);
        }
        let take = |rows: Vec<(Vec<S>, S)>| -> Vec<(Vec<S>, S)> {
            rows.into_iter()
                .map(|(a, b)| (keep.iter().map(|&k| a[k]).collect(), b))
                .collect()
        };
        Polyhedron::new(keep.len(), take(ineq), take(eq), self.cfg)
    }

    /// Minkowski sum via a lifted system and elimination.
    pub fn minkowski_sum(&self, other: &Polyhedron<S>) -> Result<Polyhedron<S>, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let n = self.dim;
        // Coordinates (z, v): z - v in self, v in other.
        let mut ineq = Vec::new();
        let mut eq = Vec::new();
        for (a, b) in &self.inequalities {
            let mut row = a.clone();
            row.extend(a.iter().map(|&x| -x));
            ineq.push((row, *b));
        }
        for (e, d) in &self.equalities {
            let mut row = e.clone();
            row.extend(e.iter().map(|&x| -x));
            eq.push((row, *d));
        }
        for (a, b) in &other.inequalities {
            let mut row = vec![S::zero(); n];
            row.extend(a.iter().cloned());
            ineq.push((row, *b));
        }
        for (e, d) in &other.equalities {
            let mut row = vec![S::zero(); n];
            row.extend(e.iter().cloned());
            eq.push((row, *d));
        }
        let lifted = Polyhedron::new(2 * n, ineq, eq, self.cfg)?;
        let keep: Vec<usize> = (0..n).collect();
        lifted.eliminate_all_but(&keep)
    }

    /// Inclusion test by maximizing each constraint of `other` over `self`.
    pub fn subset_of(&self, other: &Polyhedron<S>) -> Result<bool, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.is_empty()? {
            return Ok(true);
        }
        let tol = self.cfg.tol_geom;
        for (a, b) in &other.inequalities {
            match self.support(a)? {
                Some(v) if v <= *b + tol => {}
                _ => return Ok(false),
            }
        }
        for (e, d) in &other.equalities {
            let up = self.support(e)?;
            let neg: Vec<S> = e.iter().map(|&x| -x).collect();
            let lo = self.support(&neg)?;
            match (up, lo) {
                (Some(u), Some(l)) if (u - *d).abs() <= tol && (-l - *d).abs() <= tol => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Same point set?
    pub fn equals(&self, other: &Polyhedron<S>) -> Result<bool, GeometryError> {
        if self.is_empty()? && other.is_empty()? {
            return Ok(true);
        }
        Ok(self.subset_of(other)? && other.subset_of(self)?)
    }

    /// `sup {c·x : x in self}`; `None` when unbounded, error when empty.
    pub fn support(&self, c: &[S]) -> Result<Option<S>, GeometryError> {
        match numerics::maximize_linear(self, c) {
            Ok(numerics::LpOutcome::Optimal { value, .. }) => Ok(Some(value)),
            Ok(numerics::LpOutcome::Unbounded { .. }) => Ok(None),
            Ok(numerics::LpOutcome::Infeasible { .. }) => {
                Err(GeometryError::SolverFailure("support of empty polyhedron".into()))
            }
            Err(e) => Err(GeometryError::SolverFailure(e.to_string())),
        }
    }

    /// All vertices by basis enumeration; empty when the polyhedron has a
    /// nontrivial lineality space (no extreme points then).
    pub fn vertices(&self) -> Result<Vec<Vec<S>>, GeometryError> {
        let n = self.dim;
        let mut rows: Vec<(Vec<S>, S)> = self.equalities.clone();
        rows.extend(self.inequalities.iter().cloned());
        let m = rows.len();
        if m < n {
            return Ok(Vec::new());
        }
        let mut vertices: Vec<Vec<S>> = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let a: Vec<Vec<S>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<S> = idx.iter().map(|&i| rows[i].1).collect();
            if linalg::rank(&a, n, self.cfg.tol_pivot) == n {
                if let Some(x) = linalg::solve(&a, &b, n, self.cfg.tol_pivot) {
                    if self.contains(&x)? {
                        let dup = vertices.iter().any(|v| {
                            v.iter()
                                .zip(&x)
                                .map(|(&p, &q)| (p - q) * (p - q))
                                .sum::<S>()
                                .sqrt()
                                <= self.cfg.tol_geom * S::one().max(norm(&x))
                        });
                        if !dup {
                            vertices.push(x);
                        }
                    }
                }
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
        Ok(vertices)
    }
}

enum RowKind<S> {
    Normal(Vec<S>, S),
    Trivial,
    Infeasible(Vec<S>, S),
}

fn normalize_row<S: Scalar>(a: Vec<S>, b: S, is_eq: bool, tol: S) -> RowKind<S> {
    let n = norm(&a);
    if n <= tol {
        let satisfied = if is_eq { b.abs() <= tol } else { b >= -tol };
        if satisfied {
            RowKind::Trivial
        } else {
            // A zero-normal row with an unsatisfiable bound marks the whole
            // set empty; keep it visible.
            RowKind::Infeasible(a, b)
        }
    } else {
        RowKind::Normal(a.iter().map(|&x| x / n).collect(), b / n)
    }
}

fn dedup_rows<S: Scalar>(rows: Vec<(Vec<S>, S)>, tol: S, tol_pivot: S) -> Vec<(Vec<S>, S)> {
    let mut out: Vec<(Vec<S>, S)> = Vec::with_capacity(rows.len());
    for (a, b) in rows {
        let (a, b) = match normalize_row(a, b, false, tol_pivot) {
            RowKind::Normal(a, b) => (a, b),
            RowKind::Trivial => continue,
            RowKind::Infeasible(a, b) => (a, b),
        };
        let mut dominated = false;
        for (qa, qb) in out.iter_mut() {
            let close = qa
                .iter()
                .zip(&a)
                .map(|(&x, &y)| (x - y) * (x - y))
                .sum::<S>()
                .sqrt()
                <= tol;
            if close {
                // Same direction: keep the tighter bound.
                if b < *qb {
                    *qb = b;
                }
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push((a, b));
        }
    }
    out
}

/// Advance `idx` to the next k-combination of `{0, .., m-1}`.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
