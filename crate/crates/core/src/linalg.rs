//! Small dense linear algebra: elimination, rank, kernels, least squares.
//!
//! Instances here are tiny (a few dozen rows at most), so everything is a
//! straightforward Gaussian elimination with partial pivoting on `Vec` rows.

use crate::scalar::{dot, Scalar};

/// Reduce `rows` to reduced row echelon form in place.
///
/// Returns the pivot column index of each nonzero row, in order. Rows may be
/// longer than `ncols`; trailing entries are treated as augmented columns and
/// carried along but never pivoted on.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>], ncols: usize, tol: S) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r >= m {
            break;
        }
        // Partial pivoting: largest magnitude in column c at or below row r.
        let mut best = r;
        for i in r + 1..m {
            if rows[i][c].abs() > rows[best][c].abs() {
                best = i;
            }
        }
        if rows[best][c].abs() <= tol {
            continue;
        }
        rows.swap(r, best);
        let piv = rows[r][c];
        for v in rows[r].iter_mut() {
            *v = *v / piv;
        }
        for i in 0..m {
            if i != r {
                let f = rows[i][c];
                if f.abs() > S::zero() {
                    let src = rows[r].clone();
                    for (v, &s) in rows[i].iter_mut().zip(&src) {
                        *v = *v - f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the row set over the first `ncols` columns.
pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize, tol: S) -> usize {
    let mut work: Vec<Vec<S>> = rows.iter().map(|r| r[..ncols].to_vec()).collect();
    rref(&mut work, ncols, tol).len()
}

/// Basis of the null space `{x : R x = 0}` of the stacked rows.
pub fn kernel_basis<S: Scalar>(rows: &[Vec<S>], ncols: usize, tol: S) -> Vec<Vec<S>> {
    let mut work: Vec<Vec<S>> = rows.iter().map(|r| r[..ncols].to_vec()).collect();
    let pivots = rref(&mut work, ncols, tol);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![S::zero(); ncols];
        x[free] = S::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -work[i][free];
        }
        basis.push(x);
    }
    basis
}

/// Particular solution of `A x = b` (any shape), or `None` if inconsistent.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S], ncols: usize, tol: S) -> Option<Vec<S>> {
    let mut work: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row[..ncols].to_vec();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut work, ncols, tol);
    // Inconsistent iff a zero row has nonzero augmented entry.
    for (i, row) in work.iter().enumerate() {
        if i >= pivots.len() && row[ncols].abs() > tol {
            return None;
        }
    }
    let mut x = vec![S::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = work[i][ncols];
    }
    Some(x)
}

/// Minimum-residual solution of `A x = b` via the normal equations.
///
/// `A` has `m` rows of length `ncols`. Adequate for the small multiplier
/// systems that arise in the active-set solver.
pub fn least_squares<S: Scalar>(a: &[Vec<S>], b: &[S], ncols: usize, tol: S) -> Vec<S> {
    let mut ata = vec![vec![S::zero(); ncols]; ncols];
    let mut atb = vec![S::zero(); ncols];
    for (row, &bi) in a.iter().zip(b) {
        for i in 0..ncols {
            atb[i] = atb[i] + row[i] * bi;
            for j in 0..ncols {
                ata[i][j] = ata[i][j] + row[i] * row[j];
            }
        }
    }
    solve(&ata, &atb, ncols, tol).unwrap_or_else(|| vec![S::zero(); ncols])
}

/// Gram-Schmidt orthonormalization; near-dependent vectors are dropped.
pub fn orthonormalize<S: Scalar>(vectors: &[Vec<S>], tol: S) -> Vec<Vec<S>> {
    let mut basis: Vec<Vec<S>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            for (wi, &bi) in w.iter_mut().zip(b) {
                *wi = *wi - c * bi;
            }
        }
        let n = dot(&w, &w).sqrt();
        if n > tol {
            for wi in w.iter_mut() {
                *wi = *wi / n;
            }
            basis.push(w);
        }
    }
    basis
}

/// Orthogonal projection of `x` onto the span of an orthonormal `basis`.
pub fn project_onto_span<S: Scalar>(x: &[S], basis: &[Vec<S>]) -> Vec<S> {
    let mut p = vec![S::zero(); x.len()];
    for b in basis {
        let c = dot(x, b);
        for (pi, &bi) in p.iter_mut().zip(b) {
            *pi = *pi + c * bi;
        }
    }
    p
}

/// Matrix-vector product for a row-list matrix.
pub fn matvec<S: Scalar>(rows: &[Vec<S>], x: &[S]) -> Vec<S> {
    rows.iter().map(|r| dot(r, x)).collect()
}

/// Positive-semidefiniteness of a symmetric matrix via pivoted Gaussian
/// steps: every pivot must stay nonnegative and a vanishing pivot forces a
/// vanishing row.
pub fn is_psd<S: Scalar>(m: &[Vec<S>], tol: S) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m.to_vec();
    for k in 0..n {
        // Symmetric pivoting: bring the largest remaining diagonal to front.
        let mut best = k;
        for i in k + 1..n {
            if a[i][i] > a[best][best] {
                best = i;
            }
        }
        if best != k {
            a.swap(k, best);
            for row in a.iter_mut() {
                row.swap(k, best);
            }
        }
        let d = a[k][k];
        if d < -tol {
            return false;
        }
        if d <= tol {
            // Zero pivot: the remaining row must vanish or the matrix is
            // indefinite.
            for j in k + 1..n {
                if a[k][j].abs() > tol.sqrt() {
                    return false;
                }
            }
            continue;
        }
        for i in k + 1..n {
            let f = a[i][k] / d;
            for j in k..n {
                let akj = a[k][j];
                a[i][j] = a[i][j] - f * akj;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(rank(&rows, 3, TOL), 2);
        let ker = kernel_basis(&rows, 3, TOL);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            assert!(dot(r, &ker[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn solve_square_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(&a, &[5.0, 10.0], 2, TOL).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        assert!(solve(&a, &[1.0, 3.0], 2, TOL).is_none());
        assert!(solve(&a, &[1.0, 2.0], 2, TOL).is_some());
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let x = least_squares(&a, &[1.0, 2.0, 3.0], 2, TOL);
        assert!((x[0] - 1.0).abs() < 1e-9);
        assert!((x[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn psd_detection() {
        assert!(is_psd(&[vec![2.0, 1.0], vec![1.0, 2.0]], 1e-10));
        assert!(is_psd(&[vec![1.0, 1.0], vec![1.0, 1.0]], 1e-10)); // singular PSD
        assert!(!is_psd(&[vec![1.0, 2.0], vec![2.0, 1.0]], 1e-10)); // indefinite
        assert!(!is_psd(&[vec![0.0, 1.0], vec![1.0, 0.0]], 1e-10)); // saddle
        assert!(is_psd(&[vec![0.0, 0.0], vec![0.0, 0.0]], 1e-10));
    }

    #[test]
    fn orthonormal_basis_drops_dependent() {
        let vs: Vec<Vec<f64>> = vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.0]];
        let b = orthonormalize(&vs, 1e-9);
        assert_eq!(b.len(), 2);
        assert!(dot(&b[0], &b[1]).abs() < 1e-12);
    }
}
