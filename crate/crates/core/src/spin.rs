//! Ring eigenstates and the dimensionless spectral quantities they carry.
//!
//! Everything downstream works in the three dimensionless knobs collected in
//! [`RingConfig`]. At fixed energy `E = hbar Omega (ka)^2` the ring supports
//! four angular modes `exp(i kappa phi)` times a phi-dependent spinor; their
//! quantum numbers, the tilt angle of the spin quantization axis and the
//! geometric (Aharonov-Casher) phases all live in [`SpectralSet`].

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Dimensionless description of one ring-plus-junctions device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    /// Lead wavenumber times ring radius, `ka > 0`.
    pub ka: f64,
    /// Spin-orbit ratio `x = omega / Omega >= 0`.
    pub x: f64,
    /// Junction opening angle in radians, strictly inside `(0, 2 pi)`.
    pub gamma: f64,
}

impl RingConfig {
    /// Validate and build a configuration.
    pub fn new(ka: f64, x: f64, gamma: f64) -> Result<Self> {
        if !ka.is_finite() || ka <= 0.0 {
            return Err(Error::InvalidInput {
                name: "ka",
                value: ka,
                reason: "must be finite and > 0",
            });
        }
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidInput {
                name: "x",
                value: x,
                reason: "must be finite and >= 0",
            });
        }
        if !gamma.is_finite() || gamma <= 0.0 || gamma >= 2.0 * std::f64::consts::PI {
            return Err(Error::InvalidInput {
                name: "gamma",
                value: gamma,
                reason: "must lie strictly inside (0, 2 pi)",
            });
        }
        Ok(RingConfig { ka, x, gamma })
    }
}

/// Sign label of the two spin branches of the ring spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// The branch sign `mu` as a float, +1 or -1.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];
}

/// Tilt angle of the spin quantization axis, `theta = -atan(x)`, in
/// `(-pi/2, 0]`. Figures conventionally plot `|theta|`; the sign is kept
/// here so the spinor ratios below need no case analysis.
pub fn tilt_angle(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x.atan()
    }
}

/// One of the four ring modes at fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct RingMode {
    /// Radial pair index, 1 or 2 (`kappa = mu (w/2 + (-1)^j q)`).
    pub j: usize,
    pub branch: Branch,
    /// Total angular momentum quantum number.
    pub kappa: f64,
    /// Covariant angular rate: the generalized momentum operator acting on
    /// this mode multiplies it by `rate`, i.e. the covariant derivative along
    /// increasing `phi` multiplies it by `i * rate`.
    pub rate: f64,
}

/// Spectral quantities of a ring at one `(ka, x)` point.
#[derive(Debug, Clone, Copy)]
pub struct SpectralSet {
    /// Input spin-orbit ratio, echoed for convenience.
    pub x: f64,
    /// `w = sqrt(1 + x^2) >= 1`.
    pub w: f64,
    /// Tilt angle in `(-pi/2, 0]`, `tan(theta) = -x`.
    pub theta: f64,
    /// Radial wavenumber `q = sqrt((x/2)^2 + (ka)^2) > 0`.
    pub q: f64,
    /// `kappa[j-1][m]` with `m = 0` for [`Branch::Plus`], `m = 1` for
    /// [`Branch::Minus`]; exactly `mu (w/2 + (-1)^j q)`.
    pub kappa: [[f64; 2]; 2],
    /// Geometric phase `pi (-1 + w)` of the plus branch.
    pub phi_plus: f64,
    /// Geometric phase `pi (-1 - w)` of the minus branch.
    pub phi_minus: f64,
}

impl SpectralSet {
    /// Quantum number for pair index `j` in {1, 2} and branch `mu`.
    pub fn kappa(&self, j: usize, branch: Branch) -> f64 {
        assert!(j == 1 || j == 2, "pair index must be 1 or 2");
        let m = match branch {
            Branch::Plus => 0,
            Branch::Minus => 1,
        };
        self.kappa[j - 1][m]
    }

    /// The geometric phase attached to `branch`.
    pub fn phi(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.phi_plus,
            Branch::Minus => self.phi_minus,
        }
    }

    /// All four modes, in the fixed order (j=1,+), (j=2,+), (j=1,-), (j=2,-).
    pub fn modes(&self) -> [RingMode; 4] {
        let mut out = [RingMode {
            j: 0,
            branch: Branch::Plus,
            kappa: 0.0,
            rate: 0.0,
        }; 4];
        let mut idx = 0;
        for &branch in &Branch::BOTH {
            for j in [1usize, 2usize] {
                let sign_j = if j == 1 { -1.0 } else { 1.0 };
                out[idx] = RingMode {
                    j,
                    branch,
                    kappa: self.kappa(j, branch),
                    rate: branch.sign() * sign_j * self.q,
                };
                idx += 1;
            }
        }
        out
    }
}

/// Spectral quantities for a valid configuration.
///
/// The energy enters only through `(ka)^2 = E / (hbar Omega)`.
pub fn spectral_params(cfg: &RingConfig) -> SpectralSet {
    let x = cfg.x;
    let w = x.hypot(1.0);
    let q = cfg.ka.hypot(x / 2.0);
    let mut kappa = [[0.0f64; 2]; 2];
    for (jm1, sign_j) in [(0usize, -1.0f64), (1usize, 1.0f64)] {
        for (m, mu) in [(0usize, 1.0f64), (1usize, -1.0f64)] {
            kappa[jm1][m] = mu * (w / 2.0 + sign_j * q);
        }
    }
    SpectralSet {
        x,
        w,
        theta: tilt_angle(x),
        q,
        kappa,
        phi_plus: std::f64::consts::PI * (-1.0 + w),
        phi_minus: std::f64::consts::PI * (-1.0 - w),
    }
}

/// Normalized spinor components `(u, v)` of a ring eigenstate.
///
/// The gauge is fixed by taking both components real with `u >= 0`; written
/// with the half tilt angle they are `(cos(theta/2), sin(theta/2))` on the
/// plus branch and `(-sin(theta/2), cos(theta/2))` on the minus branch, which
/// stays continuous through `x = 0` where the bare component ratio
/// `(1 - mu w)/x` becomes 0/0.
pub fn eigenspinor(branch: Branch, x: f64) -> (f64, f64) {
    debug_assert!(x >= 0.0, "spin-orbit ratio must be non-negative");
    let half = tilt_angle(x) / 2.0;
    match branch {
        Branch::Plus => (half.cos(), half.sin()),
        Branch::Minus => (-half.sin(), half.cos()),
    }
}

/// A ring eigenstate: angular quantum number plus its gauge-fixed spinor.
#[derive(Debug, Clone, Copy)]
pub struct RingEigenstate {
    pub kappa: f64,
    pub branch: Branch,
    /// Spinor components, real in the fixed gauge (`|u|^2 + |v|^2 = 1`).
    pub u: f64,
    pub v: f64,
}

impl RingEigenstate {
    pub fn new(kappa: f64, branch: Branch, x: f64) -> Self {
        let (u, v) = eigenspinor(branch, x);
        RingEigenstate { kappa, branch, u, v }
    }

    /// Evaluate the state at azimuthal angle `phi`:
    /// `exp(i kappa phi) (exp(-i phi/2) u, exp(i phi/2) v)`.
    pub fn eval(&self, phi: f64) -> [Complex64; 2] {
        let orbital = Complex64::from_polar(1.0, self.kappa * phi);
        [
            orbital * Complex64::from_polar(self.u, -phi / 2.0),
            orbital * Complex64::from_polar(self.v, phi / 2.0),
        ]
    }
}

/// Evaluate `state` at `phi`; free-function form of [`RingEigenstate::eval`].
pub fn eval_ring_state(state: &RingEigenstate, phi: f64) -> [Complex64; 2] {
    state.eval(phi)
}
