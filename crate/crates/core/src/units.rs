//! Conversion between laboratory parameters and the dimensionless knobs.
//!
//! The kinetic scale of a ring of radius `a` is
//! `hbar Omega = hbar^2 / (2 m* a^2)` and the Rashba frequency is
//! `omega = alpha / (hbar a)`, so
//!
//! ```text
//! ka = a sqrt(2 m* E) / hbar        x = omega / Omega = 2 m* a alpha / hbar^2
//! ```
//!
//! The reference device is an InGaAs ring (`m*/m_e = 0.023`) of radius
//! 0.25 um at a Fermi energy of 11.13 meV, which sits at `ka ~ 20.5`; gate
//! voltage tunes `alpha` up to about `2.0e-11 eV m`, i.e. `x ~ 3.0` and
//! `|theta| ~ 0.8 (pi/2)`. Scan windows conventionally extend a little
//! beyond that bound, to `x = 3.5` (see [`crate::analysis::DEFAULT_X_MAX`]).

use crate::error::{Error, Result};

/// Physical constants, CODATA 2018.
pub mod constants {
    /// Reduced Planck constant, J s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Electron rest mass, kg.
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    /// Electron volt, J.
    pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;
}

/// Laboratory description of one ring device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalRing {
    /// Ring radius in meters.
    pub radius_m: f64,
    /// Effective mass over the electron mass.
    pub mass_ratio: f64,
    /// Rashba coefficient in eV m (gate tunable, >= 0).
    pub alpha_evm: f64,
    /// Carrier energy in eV.
    pub energy_ev: f64,
}

impl PhysicalRing {
    pub fn new(radius_m: f64, mass_ratio: f64, alpha_evm: f64, energy_ev: f64) -> Result<Self> {
        let positive = [
            ("radius_m", radius_m),
            ("mass_ratio", mass_ratio),
            ("energy_ev", energy_ev),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidInput {
                    name,
                    value,
                    reason: "must be finite and > 0",
                });
            }
        }
        if !alpha_evm.is_finite() || alpha_evm < 0.0 {
            return Err(Error::InvalidInput {
                name: "alpha_evm",
                value: alpha_evm,
                reason: "must be finite and >= 0",
            });
        }
        Ok(PhysicalRing {
            radius_m,
            mass_ratio,
            alpha_evm,
            energy_ev,
        })
    }
}

/// Dimensionless `(ka, x)` for a physical ring.
pub fn to_dimensionless(p: &PhysicalRing) -> (f64, f64) {
    let m = p.mass_ratio * constants::ELECTRON_MASS;
    let energy_j = p.energy_ev * constants::ELECTRON_VOLT;
    let alpha_jm = p.alpha_evm * constants::ELECTRON_VOLT;
    let ka = p.radius_m * (2.0 * m * energy_j).sqrt() / constants::HBAR;
    let x = 2.0 * m * p.radius_m * alpha_jm / (constants::HBAR * constants::HBAR);
    (ka, x)
}

/// Rashba coefficient (eV m) that produces the tilt angle `theta_target`.
///
/// The tilt is stored non-positive (`tan theta = -x` with `x >= 0`), so the
/// target must lie in `(-pi/2, 0]`; a positive tilt would require a negative
/// Rashba coefficient.
pub fn alpha_for_theta(theta_target: f64, radius_m: f64, mass_ratio: f64) -> Result<f64> {
    if !theta_target.is_finite() || theta_target.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::InvalidInput {
            name: "theta_target",
            value: theta_target,
            reason: "must satisfy |theta| < pi/2",
        });
    }
    if theta_target > 0.0 {
        return Err(Error::InvalidInput {
            name: "theta_target",
            value: theta_target,
            reason: "tilt angles are non-positive; a positive tilt needs alpha < 0",
        });
    }
    for (name, value) in [("radius_m", radius_m), ("mass_ratio", mass_ratio)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidInput {
                name,
                value,
                reason: "must be finite and > 0",
            });
        }
    }
    let x = (-theta_target).tan();
    let m = mass_ratio * constants::ELECTRON_MASS;
    let alpha_jm = x * constants::HBAR * constants::HBAR / (2.0 * m * radius_m);
    Ok(alpha_jm / constants::ELECTRON_VOLT)
}
