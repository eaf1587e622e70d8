//! Shared tolerance and iteration-cap settings.

use crate::scalar::Scalar;

/// Numeric tolerances and caps used by the geometry and solver kernels.
///
/// One record configures everything; the defaults match the documented
/// contract (membership at 1e-9, geometric identities at 1e-8).
#[derive(Clone, Copy, Debug)]
pub struct NumericsConfig<S: Scalar> {
    /// Membership tolerance for H-representation sign checks.
    pub tol_mem: S,
    /// Tolerance for geometric identities (Moreau residuals, polar round trips).
    pub tol_geom: S,
    /// Optimality tolerance for LP reduced costs.
    pub tol_lp: S,
    /// KKT residual tolerance for QP solutions.
    pub tol_kkt: S,
    /// Pivot threshold below which a value counts as zero in elimination.
    pub tol_pivot: S,
    /// Cap on rays/rows produced during double-description conversion.
    pub max_dd_rows: usize,
    /// Cap on simplex pivots before the cycling guard reports failure.
    pub max_lp_iter: usize,
    /// Cap on active-set QP iterations.
    pub max_qp_iter: usize,
}

impl<S: Scalar> Default for NumericsConfig<S> {
    fn default() -> Self {
        NumericsConfig {
            tol_mem: S::of(1e-9),
            tol_geom: S::of(1e-8),
            tol_lp: S::of(1e-9),
            tol_kkt: S::of(1e-8),
            tol_pivot: S::of(1e-11),
            max_dd_rows: 20_000,
            max_lp_iter: 20_000,
            max_qp_iter: 2_000,
        }
    }
}

impl<S: Scalar> NumericsConfig<S> {
    pub fn with_tol_mem(mut self, tol: S) -> Self {
        self.tol_mem = tol;
        self
    }

    pub fn with_tol_geom(mut self, tol: S) -> Self {
        self.tol_geom = tol;
        self
    }
}
