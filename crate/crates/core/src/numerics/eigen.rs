//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! positive-semidefinite matrix square root built on top of it.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative Hermiticity slack accepted on input.
const HERM_TOL: f64 = 1e-10;
/// Off-diagonal norm target relative to the matrix norm.
const OFF_DIAG_TOL: f64 = 1e-14;
/// Negative eigenvalues above this are treated as round-off and clipped.
const PSD_CLIP: f64 = -1e-8;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// The eigenvectors are returned as the columns of the second element, so that
/// `m = V diag(w) V†`. Input is symmetrized internally; deviations from
/// Hermiticity beyond `1e-10` relative to the matrix scale are rejected.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let scale = m.max_abs().max(1.0);
    if m.hermiticity_deviation() > HERM_TOL * scale {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian: deviation {:.3e} exceeds {:.3e}",
            m.hermiticity_deviation(),
            HERM_TOL * scale
        )));
    }

    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    let mut a = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Ok((vec![0.0; n], v));
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAG_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAG_TOL * norm {
        return Err(Error::Domain(
            "Jacobi iteration failed to converge".to_string(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok((eigenvalues, vectors))
}

/// Square root of a Hermitian positive-semidefinite matrix.
///
/// Eigenvalues in `[-1e-8, 0)` are clipped to zero; anything more negative is
/// rejected as a non-physical input.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (w, v) = hermitian_eigensystem(m)?;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in w.iter().enumerate() {
        if lambda < PSD_CLIP {
            return Err(Error::Domain(format!(
                "matrix is not positive semidefinite: eigenvalue {lambda:.3e}"
            )));
        }
        let root = lambda.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        let col = v.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += root * col[i] * col[j].conj();
            }
        }
    }
    Ok(out)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zero out the (p, q) entry with a unitary plane rotation, updating the
/// accumulated eigenvector matrix in step.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = 0.5 * (2.0 * g).atan2(app - aqq);
    let c = theta.cos();
    let s = theta.sin();
    let s_phase = s * phase; // s e^{i phi}
    let s_phase_conj = s * phase.conj();

    // a <- a U with U_pp = c, U_pq = -s e^{i phi}, U_qp = s e^{-i phi}, U_qq = c
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp + s_phase_conj * akq;
        a[(k, q)] = -s_phase * akp + c * akq;
    }
    // a <- U† a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk + s_phase * aqk;
        a[(q, k)] = -s_phase_conj * apk + c * aqk;
    }
    // the rotation annihilates (p, q) exactly in exact arithmetic
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp + s_phase_conj * vkq;
        v[(k, q)] = -s_phase * vkp + c * vkq;
    }
}
