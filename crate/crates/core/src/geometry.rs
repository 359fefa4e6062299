//! Distance- and orientation-dependent collective parameters of the atom
//! pair: the coherent dipole-dipole shift and the collective decay rate.
//!
//! All rates and frequencies are in units of the single-atom decay rate γ.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Geometry of the two-atom pair with mutually parallel dipole moments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairGeometry {
    separation_over_wavelength: f64,
    theta: f64,
}

impl PairGeometry {
    /// `separation_over_wavelength` is r12/λ (> 0); `theta` is the angle in
    /// [0, π] between the dipole moments and the interatomic axis.
    pub fn new(separation_over_wavelength: f64, theta: f64) -> Result<Self> {
        if !separation_over_wavelength.is_finite() || separation_over_wavelength <= 0.0 {
            return Err(Error::Domain(format!(
                "separation_over_wavelength must be finite and positive, got {separation_over_wavelength}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Domain("theta must be finite".to_string()));
        }
        Ok(Self {
            separation_over_wavelength,
            theta,
        })
    }

    /// Interatomic separation in wavelengths, r12/λ.
    pub fn separation_over_wavelength(&self) -> f64 {
        self.separation_over_wavelength
    }

    /// Dipole orientation angle relative to the interatomic axis.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Dimensionless separation x = k r12 = 2π r12/λ.
    pub fn kr(&self) -> f64 {
        TAU * self.separation_over_wavelength
    }
}

/// Collective parameters derived from a [`PairGeometry`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollectiveParams {
    /// Coherent dipole-dipole shift Ω12 in units of γ (sign carries).
    pub omega12: f64,
    /// Collective decay rate γ12 in units of γ; |γ12| <= 1.
    pub gamma12: f64,
}

/// Coherent dipole-dipole shift Ω12 in units of γ.
///
/// Evaluates, with x = k r12 and mutually parallel dipole moments,
///
/// ```text
/// Ω12 = (3/4) { -(1 - cos²θ) cos(x)/x
///               + (1 - 3cos²θ) [ sin(x)/x² + cos(x)/x³ ] }
/// ```
pub fn dipole_dipole_shift(geom: PairGeometry) -> f64 {
    let x = geom.kr();
    let c2 = geom.theta.cos().powi(2);
    0.75 * (-(1.0 - c2) * x.cos() / x
        + (1.0 - 3.0 * c2) * (x.sin() / (x * x) + x.cos() / (x * x * x)))
}

/// Collective decay rate γ12 in units of γ.
///
/// ```text
/// γ12 = (3/2) { (1 - cos²θ) sin(x)/x
///               + (1 - 3cos²θ) [ cos(x)/x² - sin(x)/x³ ] }
/// ```
///
/// Approaches γ for x → 0 and vanishes for large separations.
pub fn collective_decay(geom: PairGeometry) -> f64 {
    let x = geom.kr();
    let c2 = geom.theta.cos().powi(2);
    1.5 * ((1.0 - c2) * x.sin() / x
        + (1.0 - 3.0 * c2) * (x.cos() / (x * x) - x.sin() / (x * x * x)))
}

/// Both collective parameters at once.
pub fn collective_params(geom: PairGeometry) -> CollectiveParams {
    CollectiveParams {
        omega12: dipole_dipole_shift(geom),
        gamma12: collective_decay(geom),
    }
}
