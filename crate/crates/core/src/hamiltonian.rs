//! Rotating-frame Hamiltonian of the driven pair in the collective basis
//! (g, e, s, a) and its exact eigensystem at two-photon resonance.

use num_complex::Complex64;

use crate::error::Result;
use crate::numerics::ComplexMatrix;
use crate::params::SystemParams;

/// Index of each collective state in the fixed basis order (g, e, s, a).
pub const G: usize = 0;
/// Doubly excited state index.
pub const E: usize = 1;
/// Symmetric single-excitation state index.
pub const S: usize = 2;
/// Antisymmetric single-excitation state index.
pub const A: usize = 3;

/// Rotating-frame Hamiltonian matrix at detuning `delta` (in units of γ),
/// in the collective basis order (g, e, s, a):
///
/// ```text
///     [ -Δ    0   -Ω̃    0  ]
///     [  0    Δ   -Ω̃    0  ]
///     [ -Ω̃   -Ω̃   Ω12   0  ]
///     [  0    0    0   -Ω12 ]
/// ```
pub fn build_transformed_hamiltonian(p: &SystemParams, delta: f64) -> Result<ComplexMatrix> {
    if !delta.is_finite() {
        return Err(crate::error::Error::Domain(
            "delta must be finite".to_string(),
        ));
    }
    let ot = p.omega_tilde();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut h = ComplexMatrix::zeros(4);
    h[(G, G)] = re(-delta);
    h[(E, E)] = re(delta);
    h[(S, S)] = re(p.omega12());
    h[(A, A)] = re(-p.omega12());
    h[(G, S)] = re(-ot);
    h[(S, G)] = re(-ot);
    h[(E, S)] = re(-ot);
    h[(S, E)] = re(-ot);
    Ok(h)
}

/// Exact eigensystem of the resonant (Δ = 0) Hamiltonian.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    /// Energies (E1, E2, E3, E4) = (-Ω₋, Ω₊, 0, -Ω12) in units of γ.
    pub energies: [f64; 4],
    /// Orthonormal eigenvectors as columns, components in (g, e, s, a) order.
    pub vectors: ComplexMatrix,
    /// Set when Ω0 = Ω12 = 0 and the spectrum collapses to zero.
    pub degenerate: bool,
}

impl Eigensystem {
    /// Eigenvector `k` as a 4-component amplitude vector.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Closed-form eigensystem at two-photon resonance.
///
/// The dressed states mix |g>, |e> and |s> through α±, while |a> stays an
/// eigenstate at -Ω12. For Ω0 = Ω12 = 0 every energy is zero and the
/// collective basis itself is returned, flagged as degenerate.
pub fn eigensystem_resonant(p: &SystemParams) -> Eigensystem {
    let re = |x: f64| Complex64::new(x, 0.0);
    if p.omega0() == 0.0 && p.omega12() == 0.0 {
        return Eigensystem {
            energies: [0.0; 4],
            vectors: ComplexMatrix::identity(4),
            degenerate: true,
        };
    }
    let ap = p.alpha_plus();
    let am = p.alpha_minus();
    let energies = [-p.omega_minus(), p.omega_plus(), 0.0, -p.omega12()];

    let mut v = ComplexMatrix::zeros(4);
    // |ψ1> = sqrt(α₊/2)(|e> + |g>) + sqrt(α₋)|s>
    v[(G, 0)] = re((ap / 2.0).sqrt());
    v[(E, 0)] = re((ap / 2.0).sqrt());
    v[(S, 0)] = re(am.sqrt());
    // |ψ2> = -sqrt(α₋/2)(|e> + |g>) + sqrt(α₊)|s>
    v[(G, 1)] = re(-(am / 2.0).sqrt());
    v[(E, 1)] = re(-(am / 2.0).sqrt());
    v[(S, 1)] = re(ap.sqrt());
    // |ψ3> = (|e> - |g>)/√2
    v[(G, 2)] = re(-std::f64::consts::FRAC_1_SQRT_2);
    v[(E, 2)] = re(std::f64::consts::FRAC_1_SQRT_2);
    // |ψ4> = |a>
    v[(A, 3)] = re(1.0);

    Eigensystem {
        energies,
        vectors: v,
        degenerate: false,
    }
}
