//! Analytic transmission matrix of the two-lead ring and its gate
//! decomposition.
//!
//! For each spin channel along the tilted quantization axis the two arms
//! interfere like a scalar ring threaded by the channel's geometric phase.
//! The resulting complex amplitude for a channel with geometric phase `Phi`
//! is
//!
//! ```text
//! A(Phi) = 4 i ka q (sin(q(2pi-gamma)) + e^{i Phi} sin(q gamma)) e^{-i gamma Phi / 2pi} / D
//! D      = (ka)^2 (cos(2q(pi-gamma)) - cos(2q pi))
//!          + 4 q^2 (cos Phi - cos(2q pi)) + 4 i ka q sin(2q pi)
//! ```
//!
//! and the full matrix factorizes as `T = |T| e^{i delta0/2} e^{-i gamma/2} U`
//! with `U` unitary and unimodular, built from the relative phase
//! `delta = delta_plus - delta_minus` of the two channel amplitudes and from
//! the tilt angle `theta`.
//!
//! Channel labeling: the spin-up channel (`delta_plus`) is the one whose
//! geometric phase is `pi(-1-w)`, the spin-down channel carries `pi(-1+w)`.
//! This sign assignment is forced by the zero-coupling limit, where the two
//! amplitudes differ by exactly `e^{i gamma}` and only this pairing makes
//! the assembled matrix spin independent (proportional to the identity); it
//! is cross-validated against the junction-matching solver over the whole
//! parameter space, where the two routes agree to machine precision with no
//! residual phase offset.

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::spin::{spectral_params, RingConfig};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this absolute denominator magnitude a point is reported as a
/// degenerate resonance instead of silently dividing.
pub const DEGENERATE_DENOMINATOR_LIMIT: f64 = 1e-14;

/// The analytic transmission at one parameter point, split into efficiency,
/// phases, and the unitary gate action.
///
/// Field relations: `delta = delta_plus - delta_minus` and
/// `delta0 = delta_plus + delta_minus`, both up to the common multiple of
/// `2 pi` used to bring `delta` into `(-pi, pi]`; shifting both by the same
/// multiple leaves the assembled matrix unchanged, and the stored fields
/// always satisfy `t == t_mag * e^{i delta0 / 2} * e^{-i gamma / 2} * u`
/// exactly as assembled.
#[derive(Debug, Clone)]
pub struct TransmissionDecomposition {
    /// Efficiency `|T|` of the gate, in `[0, 1]`.
    pub t_mag: f64,
    /// Principal-value phase of the spin-up channel amplitude.
    pub delta_plus: f64,
    /// Principal-value phase of the spin-down channel amplitude.
    pub delta_minus: f64,
    /// Total phase `delta_plus + delta_minus` (branch-coherent, see above).
    pub delta0: f64,
    /// Relative phase in `(-pi, pi]`. At `gamma = pi` the exact value is
    /// `pi`, which roundoff may deliver as either `+pi` or `-pi`; treat the
    /// two as the same angle (use [`angular_distance`]).
    pub delta: f64,
    /// Unitary, unimodular gate action.
    pub u: Mat2,
    /// Assembled transmission matrix in the fixed S_z basis.
    pub t: Mat2,
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

// The off-diagonal sign is fixed against the junction-matching solver: with
// the tilt angle stored negative, the two engines agree entry by entry only
// with `-sin(theta)` here, and the diametric gate then rotates the spin
// about y by 2 theta (a negative angle for x > 0).
fn unitary_part(delta: f64, gamma: f64, theta: f64) -> Mat2 {
    let half = theta / 2.0;
    let s2 = half.sin() * half.sin();
    let c2 = half.cos() * half.cos();
    let e_pd = Complex64::from_polar(1.0, delta / 2.0);
    let e_md = Complex64::from_polar(1.0, -delta / 2.0);
    let u11 = (e_pd * s2 + e_md * c2) * Complex64::from_polar(1.0, gamma / 2.0);
    let u12 = Complex64::new(0.0, -(delta / 2.0).sin() * theta.sin())
        * Complex64::from_polar(1.0, -gamma / 2.0);
    Mat2::new([[u11, u12], [-u12.conj(), u11.conj()]])
}

/// Channel amplitude `A(Phi)` and the shared denominator.
fn channel_amplitudes(cfg: &RingConfig) -> Result<(Complex64, Complex64)> {
    let s = spectral_params(cfg);
    let ka = cfg.ka;
    let gamma = cfg.gamma;
    let q = s.q;
    let s_in = (q * gamma).sin();
    let s_out = (q * (2.0 * PI - gamma)).sin();
    let cos_phi = s.phi_plus.cos();

    let denom = Complex64::new(
        ka * ka * ((2.0 * q * (PI - gamma)).cos() - (2.0 * q * PI).cos())
            + 4.0 * q * q * (cos_phi - (2.0 * q * PI).cos()),
        4.0 * ka * q * (2.0 * q * PI).sin(),
    );
    if denom.norm() < DEGENERATE_DENOMINATOR_LIMIT {
        return Err(Error::DegenerateDenominator {
            magnitude: denom.norm(),
            ka,
            x: cfg.x,
            gamma,
        });
    }

    let amp = |phi: f64| -> Complex64 {
        let interference = Complex64::new(s_out, 0.0) + Complex64::from_polar(s_in, phi);
        Complex64::new(0.0, 4.0 * ka * q)
            * interference
            * Complex64::from_polar(1.0, -gamma * phi / (2.0 * PI))
            / denom
    };
    // Spin-up channel carries the geometric phase pi(-1-w); see module docs.
    Ok((amp(s.phi_minus), amp(s.phi_plus)))
}

/// Analytic transmission matrix and its decomposition for one configuration.
pub fn transmission(cfg: &RingConfig) -> Result<TransmissionDecomposition> {
    let (amp_up, amp_dn) = channel_amplitudes(cfg)?;
    let s = spectral_params(cfg);

    let t_mag = 0.5 * (amp_up.norm() + amp_dn.norm());
    let delta_plus = amp_up.arg();
    let delta_minus = amp_dn.arg();
    let raw = delta_plus - delta_minus;
    // Bring delta into (-pi, pi]; the matching 2 pi goes into delta0 so the
    // assembled matrix is branch independent.
    let k = if raw > PI {
        -1.0
    } else if raw <= -PI {
        1.0
    } else {
        0.0
    };
    let delta = raw + 2.0 * PI * k;
    let delta0 = delta_plus + delta_minus + 2.0 * PI * k;

    let u = unitary_part(delta, cfg.gamma, s.theta);
    let prefactor = Complex64::from_polar(t_mag, delta0 / 2.0 - cfg.gamma / 2.0);
    let t = u.scale(prefactor);

    Ok(TransmissionDecomposition {
        t_mag,
        delta_plus,
        delta_minus,
        delta0,
        delta,
        u,
        t,
    })
}

/// Diametric special case, `gamma = pi`: leads attached at opposite points.
///
/// There the relative phase is always `pi` (up to its sign, which is the
/// same angle) and the gate action reduces to the y-axis rotation by twice
/// the tilt angle, `[[cos theta, -sin theta], [sin theta, cos theta]]`
/// with `theta <= 0`.
pub fn transmission_diametric(ka: f64, x: f64) -> Result<TransmissionDecomposition> {
    let cfg = RingConfig::new(ka, x, PI)?;
    transmission(&cfg)
}

/// Gate classification of a decomposed transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateClass {
    /// `delta = 0`: the gate action is `diag(1, e^{-i gamma})` up to a
    /// global phase.
    Phase { gamma: f64 },
    /// `delta = +-pi` at `gamma = pi`: rotation about the y axis.
    Rotation { angle: f64 },
    Generic,
}

/// Classify the gate action of `dec`, produced from `cfg`, at tolerance
/// `tol` on the phases. The rotation angle is signed, `2 theta <= 0`.
pub fn classify_gate(dec: &TransmissionDecomposition, cfg: &RingConfig, tol: f64) -> GateClass {
    if dec.delta.abs() < tol {
        GateClass::Phase { gamma: cfg.gamma }
    } else if angular_distance(dec.delta, PI) < tol && (cfg.gamma - PI).abs() < tol {
        let theta = spectral_params(cfg).theta;
        GateClass::Rotation { angle: 2.0 * theta }
    } else {
        GateClass::Generic
    }
}
