//! Direct dense complex linear solve by LU factorization with partial
//! pivoting.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Pivot threshold relative to the largest entry of the matrix.
const PIVOT_TOL: f64 = 1e-14;

/// Solve `a x = b` for a square nonsingular `a`.
pub fn linear_solve(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::Contract(format!(
            "right-hand side has length {}, expected {n}",
            b.len()
        )));
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::Singular("zero matrix".to_string()));
    }

    let mut lu = a.clone();
    let mut x: Vec<Complex64> = b.to_vec();
    let mut max_pivot: f64 = 0.0;
    let mut min_pivot = f64::INFINITY;

    for k in 0..n {
        // partial pivoting on column k
        let mut pivot_row = k;
        let mut pivot_mag = lu[(k, k)].norm();
        for i in (k + 1)..n {
            let mag = lu[(i, k)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag < PIVOT_TOL * scale {
            return Err(Error::Singular(format!(
                "pivot {pivot_mag:.3e} below {:.3e} at column {k} \
                 (condition estimate >= {:.3e})",
                PIVOT_TOL * scale,
                scale / pivot_mag.max(f64::MIN_POSITIVE)
            )));
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            x.swap(k, pivot_row);
        }
        max_pivot = max_pivot.max(pivot_mag);
        min_pivot = min_pivot.min(pivot_mag);

        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in (k + 1)..n {
                let sub = factor * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
            let sub = factor * x[k];
            x[i] -= sub;
        }
    }
    let _ = max_pivot / min_pivot; // crude growth ratio, reported on failure only

    // back substitution
    for k in (0..n).rev() {
        for j in (k + 1)..n {
            let sub = lu[(k, j)] * x[j];
            x[k] -= sub;
        }
        x[k] /= lu[(k, k)];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_system_returns_rhs() {
        let a = ComplexMatrix::identity(4);
        let b = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -4.0)];
        let x = linear_solve(&a, &b).unwrap();
        for (xi, bi) in x.iter().zip(b.iter()) {
            assert!((xi - bi).norm() < 1e-15);
        }
    }

    #[test]
    fn diagonal_system_divides_componentwise() {
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 0)] = c(2.0, 0.0);
        a[(1, 1)] = c(0.0, 4.0);
        a[(2, 2)] = c(-1.0, 1.0);
        let b = vec![c(2.0, 2.0), c(4.0, 0.0), c(1.0, 0.0)];
        let x = linear_solve(&a, &b).unwrap();
        for i in 0..3 {
            assert!((x[i] - b[i] / a[(i, i)]).norm() < 1e-15);
        }
    }

    #[test]
    fn random_nine_by_nine_residual() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..100 {
            let mut a = ComplexMatrix::zeros(9);
            for i in 0..9 {
                for j in 0..9 {
                    a[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let b: Vec<Complex64> = (0..9)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let x = linear_solve(&a, &b).unwrap();
            let ax = a.mul_vec(&x);
            let residual: f64 = ax
                .iter()
                .zip(b.iter())
                .map(|(l, r)| (l - r).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let x_norm: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let b_norm: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(residual <= 1e-10 * (a.frobenius_norm() * x_norm + b_norm));
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 0)] = c(2.0, 0.0);
        a[(1, 1)] = c(4.0, 0.0);
        a[(2, 2)] = c(1.0, 0.0);
        let b = vec![c(1.0, 0.0); 3];
        assert!(matches!(linear_solve(&a, &b), Err(Error::Singular(_))));
    }
}
