//! Driving and coupling parameters of the atom pair, in units of the
//! single-atom decay rate γ.

use crate::error::{Error, Result};
use crate::geometry::{collective_params, PairGeometry};

/// Rabi frequency, dipole-dipole shift and collective decay of the driven
/// pair, plus the derived quantities used throughout the dressed-state
/// expressions.
///
/// γ itself never appears as a free number; every rate is measured in γ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    omega0: f64,
    omega12: f64,
    gamma12: f64,
}

impl SystemParams {
    /// Build from explicit collective parameters.
    pub fn new(omega0: f64, omega12: f64, gamma12: f64) -> Result<Self> {
        if !omega0.is_finite() || omega0 < 0.0 {
            return Err(Error::Domain(format!(
                "omega0 must be finite and nonnegative, got {omega0}"
            )));
        }
        if !omega12.is_finite() {
            return Err(Error::Domain("omega12 must be finite".to_string()));
        }
        if !gamma12.is_finite() || gamma12.abs() > 1.0 {
            return Err(Error::Domain(format!(
                "gamma12 must satisfy |gamma12| <= 1, got {gamma12}"
            )));
        }
        Ok(Self {
            omega0,
            omega12,
            gamma12,
        })
    }

    /// Build from geometry: Ω12 and γ12 follow from the pair separation and
    /// dipole orientation.
    pub fn from_geometry(omega0: f64, geom: PairGeometry) -> Result<Self> {
        let cp = collective_params(geom);
        Self::new(omega0, cp.omega12, cp.gamma12)
    }

    /// Rabi frequency Ω0.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Dipole-dipole shift Ω12 (may be negative).
    pub fn omega12(&self) -> f64 {
        self.omega12
    }

    /// Collective decay rate γ12.
    pub fn gamma12(&self) -> f64 {
        self.gamma12
    }

    /// Effective coupling to the symmetric state, Ω̃ = Ω0/√2.
    pub fn omega_tilde(&self) -> f64 {
        self.omega0 / std::f64::consts::SQRT_2
    }

    /// Dressed splitting Ω = √(Ω0² + Ω12²/4).
    pub fn big_omega(&self) -> f64 {
        (self.omega0 * self.omega0 + 0.25 * self.omega12 * self.omega12).sqrt()
    }

    /// Ω₊ = Ω + Ω12/2 (always >= 0).
    pub fn omega_plus(&self) -> f64 {
        self.big_omega() + 0.5 * self.omega12
    }

    /// Ω₋ = Ω - Ω12/2 (always >= 0).
    pub fn omega_minus(&self) -> f64 {
        self.big_omega() - 0.5 * self.omega12
    }

    /// α₊ = Ω₊/(2Ω); 1/2 in the undriven, uncoupled limit.
    pub fn alpha_plus(&self) -> f64 {
        let om = self.big_omega();
        if om == 0.0 {
            0.5
        } else {
            self.omega_plus() / (2.0 * om)
        }
    }

    /// α₋ = Ω₋/(2Ω); 1/2 in the undriven, uncoupled limit.
    pub fn alpha_minus(&self) -> f64 {
        let om = self.big_omega();
        if om == 0.0 {
            0.5
        } else {
            self.omega_minus() / (2.0 * om)
        }
    }

    /// Interaction strength |U12| with U12 = γ12 + iΩ12.
    pub fn u12_abs(&self) -> f64 {
        self.gamma12.hypot(self.omega12)
    }
}
