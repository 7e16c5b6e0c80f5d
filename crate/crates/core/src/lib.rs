//! Spin-resolved transport through a one-dimensional ballistic ring with
//! Rashba spin-orbit coupling, connected to two leads.
//!
//! A ring of radius `a` carries a gate-tunable Rashba interaction of strength
//! `alpha`. An electron entering from one lead leaves the other with its spin
//! rotated; the ring therefore acts as a single-qubit gate on the spin,
//! controlled by three dimensionless knobs:
//!
//! * `ka`: lead wavenumber times ring radius (`E = (hbar k)^2 / 2 m*`),
//! * `x = omega / Omega`: Rashba frequency over the kinetic scale
//!   `hbar Omega = hbar^2 / 2 m* a^2`, which tilts the spin quantization axis
//!   by `theta = -atan(x)`,
//! * `gamma`: the angular position of the entry junction relative to the
//!   exit junction.
//!
//! The transmission matrix is computed two independent ways:
//!
//! * [`closed_form`] evaluates the analytic interference formula and its
//!   decomposition `T = |T| e^{i delta0/2} e^{-i gamma/2} U` with `U` unitary
//!   and unimodular;
//! * [`scattering`] assembles and solves the full junction-matching linear
//!   system from the ring eigenstates (a 12x12 complex solve) and reports
//!   probability-conservation diagnostics.
//!
//! The two engines agree to near machine precision away from resonant
//! denominators; [`analysis`] builds on the closed form to map efficiency
//! surfaces, trace phase-gate curves and locate lossless operating points,
//! and [`gates`] composes rings in series and scores them against standard
//! single-qubit targets. [`units`] converts laboratory parameters to the
//! dimensionless knobs.

pub mod analysis;
pub mod closed_form;
pub mod error;
pub mod gates;
mod linalg;
pub mod mat2;
pub mod scattering;
pub mod spin;
pub mod units;

pub use error::{Error, Result};
pub use mat2::Mat2;
pub use num_complex::Complex64;
pub use spin::{Branch, RingConfig, SpectralSet};
