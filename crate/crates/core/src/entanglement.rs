//! Entanglement and fidelity measures: Wootters concurrence for mixed
//! states, X-state concurrences, the stationary concurrence with its
//! threshold, the incoherent approximate state and the two-photon Bell-state
//! fidelity.

use num_complex::Complex64;

use crate::density::{Basis, DensityMatrix};
use crate::error::{Error, Result};
use crate::hamiltonian::{A, E, G, S};
use crate::master::steady_denominator;
use crate::numerics::{hermitian_eigensystem, hermitian_sqrt, ComplexMatrix};
use crate::params::SystemParams;
use crate::pure::CollectiveAmplitudes;

/// Unitary change of basis from collective (g, e, s, a) to product
/// (g1g2, e1e2, g1e2, e1g2) coordinates.
///
/// |s> maps to (|e1g2> + |g1e2>)/√2 and |a> to (|e1g2> - |g1e2>)/√2.
#[derive(Clone, Debug)]
pub struct BasisChange {
    transform: ComplexMatrix,
}

impl Default for BasisChange {
    fn default() -> Self {
        Self::new()
    }
}

impl BasisChange {
    /// The fixed collective-to-product transform.
    pub fn new() -> Self {
        let inv_sq2 = std::f64::consts::FRAC_1_SQRT_2;
        let re = |x: f64| Complex64::new(x, 0.0);
        let mut t = ComplexMatrix::zeros(4);
        // columns: collective states expressed in product coordinates
        t[(0, G)] = re(1.0); // |g> = |g1g2>
        t[(1, E)] = re(1.0); // |e> = |e1e2>
        t[(2, S)] = re(inv_sq2); // <g1e2|s>
        t[(3, S)] = re(inv_sq2); // <e1g2|s>
        t[(2, A)] = re(-inv_sq2); // <g1e2|a>
        t[(3, A)] = re(inv_sq2); // <e1g2|a>
        Self { transform: t }
    }

    /// The underlying unitary.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.transform
    }
}

/// Conjugate a collective-basis density matrix into the product basis.
pub fn to_product_basis(rho: &DensityMatrix) -> Result<DensityMatrix> {
    rho.require_basis(Basis::Collective)?;
    let t = BasisChange::new();
    let m = t.matrix().mul(rho.matrix()).mul(&t.matrix().adjoint());
    Ok(DensityMatrix::new_unchecked(m, Basis::Product))
}

/// σy ⊗ σy in the product ordering (g1g2, e1e2, g1e2, e1g2).
fn spin_flip_matrix() -> ComplexMatrix {
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut f = ComplexMatrix::zeros(4);
    f[(0, 1)] = re(-1.0);
    f[(1, 0)] = re(-1.0);
    f[(2, 3)] = re(1.0);
    f[(3, 2)] = re(1.0);
    f
}

/// Wootters concurrence of a product-basis density matrix.
///
/// The spin-flipped state is ρ̃ = (σy⊗σy) ρ* (σy⊗σy); the required
/// eigenvalues of ρρ̃ are obtained from the Hermitian similar matrix
/// √ρ ρ̃ √ρ so that only a Hermitian eigensolver is needed. Eigenvalues in
/// [-1e-10, 0) are clipped before the square roots.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    rho.require_basis(Basis::Product)?;
    let min_eig = rho.min_eigenvalue()?;
    if min_eig < crate::density::EIGENVALUE_FLOOR {
        return Err(Error::InvalidState(format!(
            "density matrix has eigenvalue {min_eig:.3e}"
        )));
    }

    let flip = spin_flip_matrix();
    let conj = {
        let mut m = ComplexMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = rho.entry(i, j).conj();
            }
        }
        m
    };
    let rho_tilde = flip.mul(&conj).mul(&flip);
    let sqrt_rho = hermitian_sqrt(rho.matrix())?;
    let similar = sqrt_rho.mul(&rho_tilde).mul(&sqrt_rho);
    let (mut lambdas, _) = hermitian_eigensystem(&similar)?;

    // eigenvalues carry O(eps * lambda_max) round-off; below that floor the
    // square root would amplify pure noise into the concurrence, so flush
    // them to zero
    let floor = 1e-14 * lambdas.last().copied().unwrap_or(0.0).max(0.0);
    for l in lambdas.iter_mut() {
        if *l < -1e-10 {
            return Err(Error::InvalidState(format!(
                "spin-flip spectrum has eigenvalue {l:.3e}"
            )));
        }
        if *l <= floor {
            *l = 0.0;
        }
    }
    let mut roots: Vec<f64> = lambdas.iter().map(|l| l.sqrt()).collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// X-state concurrence of a pure state with c_a = 0:
/// max(0, 2|C_g C_e*| - |C_s|²). A lower bound for the full pure-state
/// concurrence.
pub fn x_state_concurrence_pure(a: &CollectiveAmplitudes) -> f64 {
    (2.0 * (a.c_g * a.c_e.conj()).norm() - a.c_s.norm_sqr()).max(0.0)
}

/// X-state concurrence of a collective-basis mixed state:
/// max(0, 2|ρ_ge| - √((ρ_ss + ρ_aa)² - (2 Re ρ_sa)²)).
///
/// Reduces to max(0, 2|ρ_ge| - ρ_ss - ρ_aa) whenever ρ_sa = 0, which holds
/// along every trajectory started in the ground state.
pub fn x_state_concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    rho.require_basis(Basis::Collective)?;
    let pop = rho.entry(S, S).re + rho.entry(A, A).re;
    let cross = 2.0 * rho.entry(S, A).re;
    let disc = pop * pop - cross * cross;
    if disc < 0.0 {
        return Err(Error::Domain(format!(
            "non-physical X parameters: (ρ_ss + ρ_aa)² - (2 Re ρ_sa)² = {disc:.3e}"
        )));
    }
    Ok((2.0 * rho.entry(G, E).norm() - disc.sqrt()).max(0.0))
}

/// Stationary concurrence together with the entanglement threshold data.
#[derive(Clone, Copy, Debug)]
pub struct SteadyConcurrenceReport {
    /// max(0, Ω̃²(|U12| - Ω̃²/2)/D); nonzero exactly above threshold.
    pub value: f64,
    /// Whether |U12| > Ω̃²/2.
    pub above_threshold: bool,
    /// |U12| - Ω̃²/2 in units of γ.
    pub threshold_margin: f64,
    /// The four √λ_i of the stationary spin-flip spectrum, descending.
    pub eigen_roots: [f64; 4],
}

/// Closed-form concurrence of the stationary state.
///
/// The √λ roots of the stationary ρρ̃ are, with D the shared steady-state
/// denominator,
///
/// ```text
/// √λ_{1,2} = (Ω̃²/4)(√(Ω̃⁴ + 4|U12|²) ± 2|U12|)/D
/// √λ_{3,4} = Ω̃⁴/(4D)
/// ```
///
/// which collapse to C(∞) = max(0, Ω̃²(|U12| - Ω̃²/2)/D). Entanglement
/// survives in the steady state iff |U12| > Ω̃²/2.
pub fn steady_concurrence(p: &SystemParams) -> SteadyConcurrenceReport {
    let ot2 = p.omega_tilde() * p.omega_tilde();
    let u = p.u12_abs();
    let d = steady_denominator(p);

    let s = (ot2 * ot2 + 4.0 * u * u).sqrt();
    let r1 = 0.25 * ot2 * (s + 2.0 * u) / d;
    let r2 = 0.25 * ot2 * (s - 2.0 * u) / d;
    let r34 = 0.25 * ot2 * ot2 / d;
    let mut roots = [r1, r34, r34, r2];
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let margin = u - 0.5 * ot2;
    SteadyConcurrenceReport {
        value: (ot2 * margin / d).max(0.0),
        above_threshold: margin > 0.0,
        threshold_margin: margin,
        eigen_roots: roots,
    }
}

/// Incoherent mixture (1 - 4ρ_aa)|Ψ><Ψ| + ρ_aa I of a pure state with the
/// fully mixed background, `rho_aa` in [0, 1/4].
pub fn approx_mixed_state(a: &CollectiveAmplitudes, rho_aa: f64) -> Result<DensityMatrix> {
    if !(0.0..=0.25).contains(&rho_aa) {
        return Err(Error::Domain(format!(
            "rho_aa must lie in [0, 1/4], got {rho_aa}"
        )));
    }
    let v = a.as_vector();
    let projector = ComplexMatrix::outer(&v, &v);
    let m = projector
        .scale(Complex64::new(1.0 - 4.0 * rho_aa, 0.0))
        .add(&ComplexMatrix::identity(4).scale(Complex64::new(rho_aa, 0.0)));
    Ok(DensityMatrix::new_unchecked(m, Basis::Collective))
}

/// Overlap of a collective-basis state with the two-photon Bell state
/// (|e> - i|g>)/√2: F = (ρ_ee + ρ_gg)/2 + Im ρ_eg.
pub fn fidelity(rho: &DensityMatrix) -> Result<f64> {
    rho.require_basis(Basis::Collective)?;
    Ok(0.5 * (rho.entry(E, E).re + rho.entry(G, G).re) + rho.entry(E, G).im)
}
