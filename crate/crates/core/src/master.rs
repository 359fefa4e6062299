//! Dissipative dynamics of the driven pair: the 9+6 component equations of
//! motion in the collective basis, their numerical integration, and the
//! analytic steady state.
//!
//! With the laser on two-photon resonance the density-matrix elements split
//! into an inhomogeneously driven X sector
//! (ρ_ee, ρ_ss, ρ_aa, ρ_ge, ρ_eg, ρ_es, ρ_se, ρ_gs, ρ_sg) and a homogeneous
//! Y sector (ρ_ae, ρ_ea, ρ_ga, ρ_ag, ρ_sa, ρ_as) that decays to zero.
//! Conjugate pairs are integrated as independent components and their pairing
//! is checked after the fact, which doubles as a transcription guard on the
//! right-hand sides.

use num_complex::Complex64;

use crate::density::{Basis, DensityMatrix};
use crate::error::{Error, Result};
use crate::hamiltonian::{A, E, G, S};
use crate::numerics::{integrate_adaptive, linear_solve, ComplexMatrix, OdeOptions};
use crate::params::SystemParams;

/// X-sector component order.
pub mod x_index {
    /// ρ_ee
    pub const EE: usize = 0;
    /// ρ_ss
    pub const SS: usize = 1;
    /// ρ_aa
    pub const AA: usize = 2;
    /// ρ_ge
    pub const GE: usize = 3;
    /// ρ_eg
    pub const EG: usize = 4;
    /// ρ_es
    pub const ES: usize = 5;
    /// ρ_se
    pub const SE: usize = 6;
    /// ρ_gs
    pub const GS: usize = 7;
    /// ρ_sg
    pub const SG: usize = 8;
}

/// Y-sector component order.
pub mod y_index {
    /// ρ_ae
    pub const AE: usize = 0;
    /// ρ_ea
    pub const EA: usize = 1;
    /// ρ_ga
    pub const GA: usize = 2;
    /// ρ_ag
    pub const AG: usize = 3;
    /// ρ_sa
    pub const SA: usize = 4;
    /// ρ_as
    pub const AS: usize = 5;
}

/// The 15 density-matrix components integrated in real time: nine X
/// components and six Y components. ρ_gg is implied by unit trace.
#[derive(Clone, Copy, Debug)]
pub struct StateVector15 {
    /// (ρ_ee, ρ_ss, ρ_aa, ρ_ge, ρ_eg, ρ_es, ρ_se, ρ_gs, ρ_sg)
    pub x: [Complex64; 9],
    /// (ρ_ae, ρ_ea, ρ_ga, ρ_ag, ρ_sa, ρ_as)
    pub y: [Complex64; 6],
}

impl StateVector15 {
    /// All components zero: the ground state ρ_gg = 1.
    pub fn ground() -> Self {
        Self {
            x: [Complex64::new(0.0, 0.0); 9],
            y: [Complex64::new(0.0, 0.0); 6],
        }
    }

    /// Extract the components from a collective-basis density matrix.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        rho.require_basis(Basis::Collective)?;
        let m = rho.matrix();
        Ok(Self {
            x: [
                m[(E, E)],
                m[(S, S)],
                m[(A, A)],
                m[(G, E)],
                m[(E, G)],
                m[(E, S)],
                m[(S, E)],
                m[(G, S)],
                m[(S, G)],
            ],
            y: [
                m[(A, E)],
                m[(E, A)],
                m[(G, A)],
                m[(A, G)],
                m[(S, A)],
                m[(A, S)],
            ],
        })
    }

    /// Rebuild the 4x4 collective-basis matrix, with ρ_gg fixed by unit
    /// trace. No physicality check is applied here.
    pub fn to_matrix(&self) -> ComplexMatrix {
        use self::{x_index as xi, y_index as yi};
        let mut m = ComplexMatrix::zeros(4);
        let one = Complex64::new(1.0, 0.0);
        m[(G, G)] = one - self.x[xi::EE] - self.x[xi::SS] - self.x[xi::AA];
        m[(E, E)] = self.x[xi::EE];
        m[(S, S)] = self.x[xi::SS];
        m[(A, A)] = self.x[xi::AA];
        m[(G, E)] = self.x[xi::GE];
        m[(E, G)] = self.x[xi::EG];
        m[(E, S)] = self.x[xi::ES];
        m[(S, E)] = self.x[xi::SE];
        m[(G, S)] = self.x[xi::GS];
        m[(S, G)] = self.x[xi::SG];
        m[(A, E)] = self.y[yi::AE];
        m[(E, A)] = self.y[yi::EA];
        m[(G, A)] = self.y[yi::GA];
        m[(A, G)] = self.y[yi::AG];
        m[(S, A)] = self.y[yi::SA];
        m[(A, S)] = self.y[yi::AS];
        m
    }

    /// Largest deviation between a component and the conjugate of its
    /// partner (populations count against their own imaginary part).
    pub fn conjugate_pairing_deviation(&self) -> f64 {
        use self::{x_index as xi, y_index as yi};
        let pairs_x = [(xi::GE, xi::EG), (xi::ES, xi::SE), (xi::GS, xi::SG)];
        let pairs_y = [(yi::AE, yi::EA), (yi::GA, yi::AG), (yi::SA, yi::AS)];
        let mut dev: f64 = 0.0;
        for k in [xi::EE, xi::SS, xi::AA] {
            dev = dev.max(self.x[k].im.abs());
        }
        for (a, b) in pairs_x {
            dev = dev.max((self.x[a] - self.x[b].conj()).norm());
        }
        for (a, b) in pairs_y {
            dev = dev.max((self.y[a] - self.y[b].conj()).norm());
        }
        dev
    }
}

/// Time derivative of the X sector, with every decay rate (γ and γ12 alike)
/// multiplied by `decay_scale`. `decay_scale = 1` is the physical master
/// equation; `decay_scale = 0` leaves the coherent part only.
pub fn rhs_x_scaled(x: &[Complex64; 9], p: &SystemParams, decay_scale: f64) -> [Complex64; 9] {
    use self::x_index::*;
    let i = Complex64::i();
    let ot = p.omega_tilde();
    let om12 = p.omega12();
    let g = decay_scale;
    let g12 = p.gamma12();
    let (ee, ss, aa) = (x[EE], x[SS], x[AA]);
    let (ge, eg, es, se, gs, sg) = (x[GE], x[EG], x[ES], x[SE], x[GS], x[SG]);

    let mut d = [Complex64::new(0.0, 0.0); 9];
    d[EE] = -4.0 * g * ee + i * ot * (se - es);
    d[SS] = -2.0 * g * (1.0 + g12) * (ss - ee) + i * ot * (es - se + gs - sg);
    d[AA] = -2.0 * g * (1.0 - g12) * (aa - ee);
    d[GE] = -2.0 * g * ge + i * ot * (se - gs);
    d[EG] = -2.0 * g * eg - i * ot * (es - sg);
    d[ES] = -(g * (3.0 + g12) - i * om12) * es + i * ot * (ss - ee - eg);
    d[SE] = -(g * (3.0 + g12) + i * om12) * se - i * ot * (ss - ee - ge);
    d[GS] = -i * ot - (g * (1.0 + g12) - i * om12) * gs
        + 2.0 * g * (1.0 + g12) * se
        + i * ot * (2.0 * ss + aa + ee - ge);
    d[SG] = i * ot - (g * (1.0 + g12) + i * om12) * sg + 2.0 * g * (1.0 + g12) * es
        - i * ot * (2.0 * ss + aa + ee - eg);
    d
}

/// Time derivative of the homogeneous Y sector, decay rates scaled as in
/// [`rhs_x_scaled`].
pub fn rhs_y_scaled(y: &[Complex64; 6], p: &SystemParams, decay_scale: f64) -> [Complex64; 6] {
    use self::y_index::*;
    let i = Complex64::i();
    let ot = p.omega_tilde();
    let om12 = p.omega12();
    let g = decay_scale;
    let g12 = p.gamma12();
    let (ae, ea, ga, ag, sa, as_) = (y[AE], y[EA], y[GA], y[AG], y[SA], y[AS]);

    let mut d = [Complex64::new(0.0, 0.0); 6];
    d[AE] = -(g * (3.0 - g12) - i * om12) * ae - i * ot * as_;
    d[EA] = -(g * (3.0 - g12) + i * om12) * ea + i * ot * sa;
    d[GA] = -(g * (1.0 - g12) + i * om12) * ga - 2.0 * g * (1.0 - g12) * ae + i * ot * sa;
    d[AG] = -(g * (1.0 - g12) - i * om12) * ag - 2.0 * g * (1.0 - g12) * ea - i * ot * as_;
    d[SA] = -2.0 * (g + i * om12) * sa + i * ot * (ea + ga);
    d[AS] = -2.0 * (g - i * om12) * as_ - i * ot * (ae + ag);
    d
}

/// Time derivative of the full 15-component state (physical decay rates).
pub fn rhs(s: &StateVector15, p: &SystemParams) -> StateVector15 {
    rhs_scaled(s, p, 1.0)
}

/// [`rhs`] with decay rates multiplied by `decay_scale`.
pub fn rhs_scaled(s: &StateVector15, p: &SystemParams, decay_scale: f64) -> StateVector15 {
    StateVector15 {
        x: rhs_x_scaled(&s.x, p, decay_scale),
        y: rhs_y_scaled(&s.y, p, decay_scale),
    }
}

/// Slack factor on the density-matrix invariants before integration aborts.
const INVARIANT_SLACK: f64 = 10.0;

/// Integrate the master equation from `initial`, sampling the trajectory at
/// `t_grid` (which must start at the initial time and increase strictly).
///
/// Every sample is checked against the density-matrix invariants with 10x
/// slack; a violation aborts with an integration failure, a step-size
/// underflow with a stiffness error.
pub fn evolve(
    initial: &DensityMatrix,
    p: &SystemParams,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<DensityMatrix>> {
    evolve_scaled(initial, p, t_grid, tol, 1.0)
}

/// [`evolve`] with the decay switch exposed; `decay_scale = 0` propagates
/// the purely coherent equations.
pub fn evolve_scaled(
    initial: &DensityMatrix,
    p: &SystemParams,
    t_grid: &[f64],
    tol: f64,
    decay_scale: f64,
) -> Result<Vec<DensityMatrix>> {
    let s0 = StateVector15::from_density(initial)?;
    let mut flat0 = [Complex64::new(0.0, 0.0); 15];
    flat0[..9].copy_from_slice(&s0.x);
    flat0[9..].copy_from_slice(&s0.y);

    let samples = integrate_adaptive(
        |_, y, dy| {
            let s = unflatten(y);
            let d = rhs_scaled(&s, p, decay_scale);
            dy[..9].copy_from_slice(&d.x);
            dy[9..].copy_from_slice(&d.y);
        },
        &flat0,
        t_grid,
        &OdeOptions::with_tol(tol),
    )?;

    samples
        .iter()
        .zip(t_grid.iter())
        .map(|(flat, &t)| {
            let dm = DensityMatrix::new_unchecked(unflatten(flat).to_matrix(), Basis::Collective);
            dm.validate(INVARIANT_SLACK).map_err(|e| {
                Error::IntegrationFailure(format!("invariants violated at t = {t:.6}: {e}"))
            })?;
            Ok(dm)
        })
        .collect()
}

/// Integrate the homogeneous Y sector alone.
pub fn evolve_y(
    initial_y: &[Complex64; 6],
    p: &SystemParams,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<[Complex64; 6]>> {
    let samples = integrate_adaptive(
        |_, y, dy| {
            let arr: [Complex64; 6] = y.try_into().expect("six components");
            dy.copy_from_slice(&rhs_y_scaled(&arr, p, 1.0));
        },
        initial_y,
        t_grid,
        &OdeOptions::with_tol(tol),
    )?;
    Ok(samples
        .into_iter()
        .map(|v| v.try_into().expect("six components"))
        .collect())
}

fn unflatten(flat: &[Complex64]) -> StateVector15 {
    StateVector15 {
        x: flat[..9].try_into().expect("nine components"),
        y: flat[9..15].try_into().expect("six components"),
    }
}

/// Analytic steady state (γ = 1 units):
///
/// ```text
/// ρ_ee = ρ_aa = Ω̃⁴/(4D)
/// ρ_ss = (Ω̃² + 4)Ω̃²/(4D)
/// ρ_ge = -(1 + U12)Ω̃²/(2D)
/// ρ_es = iΩ̃³/(2D)
/// ρ_gs = -iΩ̃[Ω̃² + 2(1 + U12)]/(2D)
/// ```
///
/// with U12 = γ12 + iΩ12 and D = Ω̃⁴ + 2Ω̃² + (1 + γ12)² + Ω12². The Y
/// sector is zero and ρ_gg follows from unit trace.
pub fn steady_state_closed_form(p: &SystemParams) -> DensityMatrix {
    let ot = p.omega_tilde();
    let ot2 = ot * ot;
    let u12 = Complex64::new(p.gamma12(), p.omega12());
    let d = steady_denominator(p);
    let i = Complex64::i();

    let ee = Complex64::new(ot2 * ot2 / (4.0 * d), 0.0);
    let ss = Complex64::new((ot2 + 4.0) * ot2 / (4.0 * d), 0.0);
    let ge = -(1.0 + u12) * ot2 / (2.0 * d);
    let es = i * ot2 * ot / (2.0 * d);
    let gs = -i * ot * (ot2 + 2.0 * (1.0 + u12)) / (2.0 * d);

    let mut m = ComplexMatrix::zeros(4);
    m[(G, G)] = Complex64::new(1.0, 0.0) - ee - ss - ee;
    m[(E, E)] = ee;
    m[(S, S)] = ss;
    m[(A, A)] = ee; // ρ_aa = ρ_ee in the steady state
    m[(G, E)] = ge;
    m[(E, G)] = ge.conj();
    m[(E, S)] = es;
    m[(S, E)] = es.conj();
    m[(G, S)] = gs;
    m[(S, G)] = gs.conj();
    DensityMatrix::new_unchecked(m, Basis::Collective)
}

/// Shared denominator D = Ω̃⁴ + 2Ω̃² + (1 + γ12)² + Ω12² of the steady state
/// and of the stationary concurrence.
pub fn steady_denominator(p: &SystemParams) -> f64 {
    let ot2 = p.omega_tilde() * p.omega_tilde();
    ot2 * ot2 + 2.0 * ot2 + (1.0 + p.gamma12()).powi(2) + p.omega12() * p.omega12()
}

/// Steady state by direct solve of the linear system M X = -I for the nine
/// X components, the matrix M being extracted column by column from the
/// right-hand side.
pub fn steady_state_numeric(p: &SystemParams) -> Result<DensityMatrix> {
    let zero = [Complex64::new(0.0, 0.0); 9];
    let inhomogeneous = rhs_x_scaled(&zero, p, 1.0);

    let mut m = ComplexMatrix::zeros(9);
    for j in 0..9 {
        let mut unit = [Complex64::new(0.0, 0.0); 9];
        unit[j] = Complex64::new(1.0, 0.0);
        let col = rhs_x_scaled(&unit, p, 1.0);
        for i in 0..9 {
            m[(i, j)] = col[i] - inhomogeneous[i];
        }
    }
    let rhs_vec: Vec<Complex64> = inhomogeneous.iter().map(|c| -c).collect();
    let x = linear_solve(&m, &rhs_vec)?;

    let state = StateVector15 {
        x: x.as_slice().try_into().expect("nine components"),
        y: [Complex64::new(0.0, 0.0); 6],
    };
    let dm = DensityMatrix::new_unchecked(state.to_matrix(), Basis::Collective);
    dm.validate(1.0)?;
    Ok(dm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ground_density() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4);
        m[(G, G)] = c(1.0, 0.0);
        DensityMatrix::new(m, Basis::Collective).unwrap()
    }

    fn random_state(rng: &mut StdRng) -> StateVector15 {
        let mut z = |scale: f64| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
        let mut s = StateVector15::ground();
        for k in 0..9 {
            s.x[k] = z(0.3);
        }
        for k in 0..6 {
            s.y[k] = z(0.3);
        }
        s
    }

    #[test]
    fn undriven_ground_state_is_stationary() {
        let p = SystemParams::new(0.0, 5.0, 0.5).unwrap();
        let d = rhs(&StateVector15::ground(), &p);
        for k in 0..9 {
            assert_eq!(d.x[k], c(0.0, 0.0));
        }
        for k in 0..6 {
            assert_eq!(d.y[k], c(0.0, 0.0));
        }
    }

    #[test]
    fn doubly_excited_population_decay_rates() {
        // ρ_ee = 1 feeds |s> at 2(1 + γ12) and |a> at 2(1 - γ12), and decays
        // at 4γ
        let g12 = 0.6;
        let p = SystemParams::new(0.0, 3.0, g12).unwrap();
        let mut s = StateVector15::ground();
        s.x[x_index::EE] = c(1.0, 0.0);
        let d = rhs(&s, &p);
        assert!((d.x[x_index::EE] - c(-4.0, 0.0)).norm() < 1e-15);
        assert!((d.x[x_index::SS] - c(2.0 * (1.0 + g12), 0.0)).norm() < 1e-15);
        assert!((d.x[x_index::AA] - c(2.0 * (1.0 - g12), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugate_pairing_preserved_by_rhs() {
        // a Hermitian state must stay Hermitian under the flow
        let mut rng = StdRng::seed_from_u64(37);
        let p = SystemParams::new(8.0, 12.0, 0.7).unwrap();
        for _ in 0..200 {
            let mut s = random_state(&mut rng);
            // hermitize
            s.x[x_index::EE] = c(s.x[x_index::EE].re, 0.0);
            s.x[x_index::SS] = c(s.x[x_index::SS].re, 0.0);
            s.x[x_index::AA] = c(s.x[x_index::AA].re, 0.0);
            s.x[x_index::EG] = s.x[x_index::GE].conj();
            s.x[x_index::SE] = s.x[x_index::ES].conj();
            s.x[x_index::SG] = s.x[x_index::GS].conj();
            s.y[y_index::EA] = s.y[y_index::AE].conj();
            s.y[y_index::AG] = s.y[y_index::GA].conj();
            s.y[y_index::AS] = s.y[y_index::SA].conj();
            let d = rhs(&s, &p);
            assert!(d.conjugate_pairing_deviation() < 1e-13);
        }
    }

    #[test]
    fn undriven_symmetric_population_decays_superradiantly() {
        // Ω0 = 0, ρ_ss(0) = 1: ρ_ss(t) = exp(-2(1+γ12)t)
        let g12 = 0.4;
        let p = SystemParams::new(0.0, 2.0, g12).unwrap();
        let mut m = ComplexMatrix::zeros(4);
        m[(S, S)] = c(1.0, 0.0);
        let initial = DensityMatrix::new(m, Basis::Collective).unwrap();
        let grid: Vec<f64> = (0..=20).map(|k| 0.1 * k as f64).collect();
        let traj = evolve(&initial, &p, &grid, 1e-10).unwrap();
        for (rho, &t) in traj.iter().zip(grid.iter()) {
            let want = (-2.0 * (1.0 + g12) * t).exp();
            assert!(
                (rho.entry(S, S).re - want).abs() < 1e-8,
                "t = {t}: {} vs {want}",
                rho.entry(S, S).re
            );
            // nothing feeds |e>, so ρ_aa stays empty as well
            assert!(rho.entry(A, A).norm() < 1e-9);
            assert!(rho.entry(E, E).norm() < 1e-12);
        }
    }

    #[test]
    fn trajectory_reaches_closed_form_steady_state() {
        // moderate γ12 so the slowest mode has relaxed well before the end
        let p = SystemParams::new(6.0, 9.0, 0.3).unwrap();
        let traj = evolve(&ground_density(), &p, &[0.0, 30.0], 1e-11).unwrap();
        let steady = steady_state_closed_form(&p);
        let dev = traj[1].matrix().sub(steady.matrix()).max_abs();
        assert!(dev < 1e-8, "deviation {dev}");
    }

    #[test]
    fn y_sector_stays_zero_and_decays() {
        let p = SystemParams::new(10.0, 11.48, 0.95).unwrap();
        let zero_y = [c(0.0, 0.0); 6];
        let traj = evolve_y(&zero_y, &p, &[0.0, 1.0, 2.0], 1e-10).unwrap();
        for y in &traj {
            assert!(y.iter().all(|z| z.norm() == 0.0));
        }

        // generic initial data dies out by t = 30 under driving
        for g12 in [0.0, 0.3, 0.95] {
            let p = SystemParams::new(10.0, 11.48, g12).unwrap();
            let y0 = [
                c(0.2, 0.1),
                c(0.2, -0.1),
                c(-0.1, 0.05),
                c(-0.1, -0.05),
                c(0.15, 0.0),
                c(0.15, 0.0),
            ];
            let traj = evolve_y(&y0, &p, &[0.0, 30.0], 1e-11).unwrap();
            let residual = traj[1].iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(residual < 1e-8, "g12 = {g12}: residual {residual}");
        }
    }

    #[test]
    fn y_sector_conjugate_pairing_along_trajectory() {
        let p = SystemParams::new(7.0, -6.0, 0.5).unwrap();
        let y0 = [
            c(0.2, 0.1),
            c(0.2, -0.1),
            c(-0.1, 0.05),
            c(-0.1, -0.05),
            c(0.1, 0.02),
            c(0.1, -0.02),
        ];
        let grid: Vec<f64> = (0..=10).map(|k| 0.3 * k as f64).collect();
        let traj = evolve_y(&y0, &p, &grid, 1e-11).unwrap();
        for y in &traj {
            let s = StateVector15 {
                x: [c(0.0, 0.0); 9],
                y: *y,
            };
            assert!(s.conjugate_pairing_deviation() < 1e-9);
        }
    }

    #[test]
    fn closed_form_steady_state_fig11_values() {
        let p = SystemParams::new(10.0, 26.22, 0.97).unwrap();
        assert!((steady_denominator(&p) - 3291.4).abs() < 0.1);
        let rho = steady_state_closed_form(&p);
        assert!((rho.entry(E, E).re - 0.1899).abs() < 1e-4);
        assert!((rho.entry(A, A).re - 0.1899).abs() < 1e-4);
        assert!((rho.entry(S, S).re - 0.2051).abs() < 1e-4);
        assert!(rho.validate(1.0).is_ok());
    }

    #[test]
    fn closed_form_steady_state_weak_drive_limit() {
        // exactly undriven: every numerator vanishes with Ω̃
        let p = SystemParams::new(0.0, 5.0, 0.5).unwrap();
        let rho = steady_state_closed_form(&p);
        assert_eq!(rho.entry(G, G).re, 1.0);
        for (i, j) in [(E, E), (S, S), (A, A), (G, E), (G, S), (E, S)] {
            assert_eq!(rho.entry(i, j).norm(), 0.0);
        }
        // weak drive: populations are O(Ω̃⁴), coherences at most O(Ω̃)
        let p = SystemParams::new(1e-6, 5.0, 0.5).unwrap();
        let rho = steady_state_closed_form(&p);
        assert!((rho.entry(G, G).re - 1.0).abs() < 1e-12);
        for (i, j) in [(E, E), (S, S), (A, A), (G, E), (G, S), (E, S)] {
            assert!(rho.entry(i, j).norm() < 1e-6);
        }
    }

    #[test]
    fn strong_shift_two_photon_coherence_limit() {
        // Ω̃² = 2|U12| with Ω12 = 1e3, γ12 = 0: |ρ_ge| -> 1/5
        let om12 = 1e3f64;
        let ot2 = 2.0 * om12;
        let omega0 = (2.0 * ot2).sqrt();
        let p = SystemParams::new(omega0, om12, 0.0).unwrap();
        let rho = steady_state_closed_form(&p);
        let ge = rho.entry(G, E);
        assert!((ge.norm() - 0.2).abs() < 1e-3, "|ρ_ge| = {}", ge.norm());
        // phase: ≈ -i/5
        assert!((ge - c(0.0, -0.2)).norm() < 2e-3);
    }

    #[test]
    fn numeric_steady_state_matches_closed_form() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..100 {
            let p = SystemParams::new(
                rng.gen_range(0.1..12.0),
                rng.gen_range(-25.0..25.0),
                rng.gen_range(0.0..0.99),
            )
            .unwrap();
            let closed = steady_state_closed_form(&p);
            let numeric = steady_state_numeric(&p).unwrap();
            let dev = closed.matrix().sub(numeric.matrix()).max_abs();
            let scale = closed.matrix().max_abs().max(1e-30);
            assert!(dev / scale < 1e-9, "relative deviation {}", dev / scale);
        }
    }

    #[test]
    fn numeric_steady_state_undriven_is_ground() {
        let p = SystemParams::new(0.0, 7.0, 0.3).unwrap();
        let rho = steady_state_numeric(&p).unwrap();
        assert!((rho.entry(G, G).re - 1.0).abs() < 1e-12);
        assert!((rho.matrix().trace() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(rho.matrix().hermiticity_deviation() < 1e-12);
    }

    #[test]
    fn leaving_the_physical_manifold_trips_the_invariant_guard() {
        // a negated decay scale anti-damps the populations; positivity is
        // lost quickly and the 10x-slack check must abort
        let p = SystemParams::new(10.0, 11.48, 0.5).unwrap();
        let res = evolve_scaled(&ground_density(), &p, &[0.0, 3.0], 1e-9, -1.0);
        assert!(matches!(res, Err(Error::IntegrationFailure(_))), "{res:?}");
    }

    #[test]
    fn evolve_requires_collective_basis() {
        let m = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let rho = DensityMatrix::new(m, Basis::Product).unwrap();
        let p = SystemParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            evolve(&rho, &p, &[0.0, 1.0], 1e-9),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn steady_state_independent_of_initial_condition() {
        let p = SystemParams::new(5.0, 8.0, 0.6).unwrap();
        let t_end = 20.0 / (1.0 - p.gamma12());
        let grid = [0.0, t_end];

        let from_ground = evolve(&ground_density(), &p, &grid, 1e-11).unwrap();
        let mut m = ComplexMatrix::zeros(4);
        m[(E, E)] = c(0.5, 0.0);
        m[(S, S)] = c(0.5, 0.0);
        let other = DensityMatrix::new(m, Basis::Collective).unwrap();
        let from_other = evolve(&other, &p, &grid, 1e-11).unwrap();

        let dev = from_ground[1]
            .matrix()
            .sub(from_other[1].matrix())
            .max_abs();
        assert!(dev < 1e-6, "deviation {dev}");
    }
}
