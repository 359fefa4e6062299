//! Tagged 4x4 density matrices.
//!
//! Every density matrix carries the basis it is written in, so that
//! collective-basis and product-basis matrices cannot be mixed silently;
//! the Wootters spin flip in particular is only meaningful in the product
//! basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigensystem, ComplexMatrix};
use crate::pure::CollectiveAmplitudes;

/// Hermiticity tolerance of a valid density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Trace-one tolerance of a valid density matrix.
pub const TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue accepted as round-off.
pub const EIGENVALUE_FLOOR: f64 = -1e-8;

/// Basis a [`DensityMatrix`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Collective (Dicke) states in the order (g, e, s, a).
    Collective,
    /// Product states in the order (g1g2, e1e2, g1e2, e1g2).
    Product,
}

impl Basis {
    /// Short lowercase name for error messages.
    pub fn name(&self) -> &'static str {
        match self {
            Basis::Collective => "collective",
            Basis::Product => "product",
        }
    }
}

/// A 4x4 Hermitian, unit-trace, positive-semidefinite matrix tagged with its
/// basis.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    basis: Basis,
}

impl DensityMatrix {
    /// Validate and wrap a matrix. Fails unless the matrix is Hermitian to
    /// 1e-10, has unit trace to 1e-9 and minimum eigenvalue above -1e-8.
    pub fn new(matrix: ComplexMatrix, basis: Basis) -> Result<Self> {
        let dm = Self { matrix, basis };
        dm.validate(1.0)?;
        Ok(dm)
    }

    /// Wrap without any checking; for call sites that construct matrices
    /// that are valid by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, basis: Basis) -> Self {
        Self { matrix, basis }
    }

    /// Rank-1 projector |Ψ><Ψ| of a pure state, in the collective basis.
    pub fn from_pure(a: &CollectiveAmplitudes) -> Self {
        let v = a.as_vector();
        Self {
            matrix: ComplexMatrix::outer(&v, &v),
            basis: Basis::Collective,
        }
    }

    /// The two-atom ground state |g><g| in the collective basis.
    pub fn ground() -> Self {
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        Self {
            matrix: m,
            basis: Basis::Collective,
        }
    }

    /// Check the physicality invariants, with every tolerance widened by
    /// `slack` (1.0 for the strict contract).
    pub fn validate(&self, slack: f64) -> Result<()> {
        if self.matrix.dim() != 4 {
            return Err(Error::InvalidState(
                "density matrix must be 4x4".to_string(),
            ));
        }
        let herm = self.matrix.hermiticity_deviation();
        if herm > HERMITICITY_TOL * slack {
            return Err(Error::InvalidState(format!(
                "Hermiticity deviation {herm:.3e} exceeds {:.3e}",
                HERMITICITY_TOL * slack
            )));
        }
        let trace = self.matrix.trace();
        let trace_dev = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > TRACE_TOL * slack {
            return Err(Error::InvalidState(format!(
                "trace deviation {trace_dev:.3e} exceeds {:.3e}",
                TRACE_TOL * slack
            )));
        }
        let min_eig = self.min_eigenvalue()?;
        if min_eig < EIGENVALUE_FLOOR * slack {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min_eig:.3e} below {:.3e}",
                EIGENVALUE_FLOOR * slack
            )));
        }
        Ok(())
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Basis tag.
    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Entry (i, j) in the tagged basis ordering.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Smallest eigenvalue of the (symmetrized) matrix.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (w, _) = hermitian_eigensystem(&self.matrix)?;
        Ok(w[0])
    }

    /// Purity tr ρ².
    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }

    /// Require a specific basis tag, for operations that are only legal in
    /// one basis.
    pub fn require_basis(&self, expected: Basis) -> Result<()> {
        if self.basis != expected {
            return Err(Error::BasisMismatch {
                expected: expected.name(),
                found: self.basis.name(),
            });
        }
        Ok(())
    }
}
