//! Generic scalar abstraction for all cone and solver arithmetic.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable throughout the toolkit.
///
/// Everything downstream (cones, solvers, conjugates) is generic over this
/// trait; `f64` is the default via the crate-root type aliases, `f32` works
/// for quick experiments at reduced precision.
pub trait Scalar:
    Float + FromPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Convert an `f64` constant (tolerances, literals) into `Self`.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant must convert")
    }

    /// Lossy conversion back to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
}

/// Euclidean inner product.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Euclidean norm.
pub fn norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

/// `a + t * b`, elementwise.
pub fn axpy<S: Scalar>(a: &[S], t: S, b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x + t * y).collect()
}

/// Elementwise difference `a - b`.
pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Scale a vector by `t`.
pub fn scale<S: Scalar>(a: &[S], t: S) -> Vec<S> {
    a.iter().map(|&x| x * t).collect()
}

/// Normalize to unit length; returns `None` for (near-)zero vectors.
pub fn unit<S: Scalar>(a: &[S], tol: S) -> Option<Vec<S>> {
    let n = norm(a);
    if n <= tol {
        None
    } else {
        Some(a.iter().map(|&x| x / n).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_norm() {
        let a = vec![3.0f64, 4.0];
        assert_eq!(dot(&a, &a), 25.0);
        assert_eq!(norm(&a), 5.0);
    }

    #[test]
    fn works_for_f32() {
        let a = vec![1.0f32, 2.0];
        let b = vec![2.0f32, -1.0];
        assert_eq!(dot(&a, &b), 0.0);
        assert_eq!(<f32 as Scalar>::of(0.5), 0.5f32);
    }
}
