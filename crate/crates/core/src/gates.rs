//! Qubit-gate algebra: series composition of rings and comparison against
//! standard single-qubit targets up to a global phase.
//!
//! Composition multiplies the full transmission matrices, so losses and
//! global phases are tracked honestly; gate-identity checks then use the
//! phase-insensitive fidelity. An optional scalar propagation phase can be
//! attached to each link between consecutive rings (it defaults to zero and
//! only moves the global phase).

use crate::closed_form;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scattering;
use crate::spin::RingConfig;
use num_complex::Complex64;

/// Engine used to evaluate each ring of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Analytic interference formula.
    ClosedForm,
    /// Junction-matching linear solve.
    Scattering,
}

/// A per-ring efficiency below `1 - LOSSY_TOL` attaches a warning to the
/// composed sequence.
pub const LOSSY_TOL: f64 = 1e-6;

/// Standard target gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    X,
    Z,
    H,
    /// `diag(1, e^{-i gamma})`: the phase picked up between spin down and
    /// spin up is the junction angle itself.
    Phase(f64),
    /// Rotation about the y axis by `angle` (the diametric ring realizes
    /// `angle = 2 theta`, a negative angle for x > 0).
    Ry(f64),
}

impl Target {
    pub fn matrix(self) -> Mat2 {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match self {
            Target::X => Mat2::new([[zero, one], [one, zero]]),
            Target::Z => Mat2::diag(one, -one),
            Target::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                Mat2::from_real([[s, s], [s, -s]])
            }
            Target::Phase(gamma) => Mat2::diag(one, Complex64::from_polar(1.0, -gamma)),
            Target::Ry(angle) => {
                let h = angle / 2.0;
                Mat2::from_real([[h.cos(), -h.sin()], [h.sin(), h.cos()]])
            }
        }
    }
}

/// Look up a target gate by name. `X`, `Z` and `H` take no argument;
/// `phase` and `ry` require `angle` in radians.
pub fn target_library(name: &str, angle: Option<f64>) -> Result<Mat2> {
    let target = match (name.to_ascii_lowercase().as_str(), angle) {
        ("x", None) => Target::X,
        ("z", None) => Target::Z,
        ("h", None) => Target::H,
        ("phase", Some(a)) => Target::Phase(a),
        ("ry", Some(a)) => Target::Ry(a),
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    Ok(target.matrix())
}

/// `|tr(A† B)| / (||A||_F ||B||_F)`: 1 exactly when `A` and `B` differ by a
/// complex scalar, 0 when they are orthogonal under the trace inner product.
pub fn fidelity_up_to_phase(a: &Mat2, b: &Mat2) -> Result<f64> {
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok((a.adjoint() * *b).trace().norm() / (na * nb))
}

/// Product of `factors` applied left to right: `factors[n-1] ... factors[0]`.
pub fn compose_matrices(factors: &[Mat2]) -> Mat2 {
    factors.iter().fold(Mat2::identity(), |acc, f| *f * acc)
}

/// An ordered ring sequence with its composed transmission.
#[derive(Debug, Clone)]
pub struct GateSequence {
    /// Ring configurations, first applied first.
    pub items: Vec<RingConfig>,
    /// Scalar propagation phase (radians) per link between consecutive
    /// rings; zero phases leave the composition untouched.
    pub link_phases: Vec<f64>,
    /// Efficiency `|T|` of each ring.
    pub per_ring_t_mag: Vec<f64>,
    /// Full composed matrix, `T_n .. T_1` with link phases interleaved.
    pub composed: Mat2,
    /// Product of the per-ring efficiencies.
    pub total_efficiency: f64,
    /// One entry per ring whose efficiency falls below `1 - LOSSY_TOL`.
    pub warnings: Vec<String>,
}

/// Compose a ring sequence with zero link phases.
pub fn compose(items: &[RingConfig], method: Method) -> Result<GateSequence> {
    compose_with_links(items, &vec![0.0; items.len().saturating_sub(1)], method)
}

/// Compose a ring sequence with explicit per-link propagation phases
/// (`link_phases.len() == items.len() - 1`, or empty for empty sequences).
pub fn compose_with_links(
    items: &[RingConfig],
    link_phases: &[f64],
    method: Method,
) -> Result<GateSequence> {
    let expected_links = items.len().saturating_sub(1);
    if link_phases.len() != expected_links {
        return Err(Error::InvalidSequence(format!(
            "{} rings need {} link phases, got {}",
            items.len(),
            expected_links,
            link_phases.len()
        )));
    }
    let mut composed = Mat2::identity();
    let mut per_ring_t_mag = Vec::with_capacity(items.len());
    let mut total_efficiency = 1.0f64;
    let mut warnings = Vec::new();
    for (idx, cfg) in items.iter().enumerate() {
        let (t, t_mag) = match method {
            Method::ClosedForm => {
                let dec = closed_form::transmission(cfg)?;
                (dec.t, dec.t_mag)
            }
            Method::Scattering => {
                let sol = scattering::solve_scattering(cfg)?;
                // T is a scalar times a unitary, so both singular values
                // equal sqrt(|det T|).
                (sol.tmat, sol.tmat.det().norm().sqrt())
            }
        };
        if idx > 0 {
            composed = composed.scale(Complex64::from_polar(1.0, link_phases[idx - 1]));
        }
        composed = t * composed;
        per_ring_t_mag.push(t_mag);
        total_efficiency *= t_mag;
        if t_mag < 1.0 - LOSSY_TOL {
            warnings.push(format!(
                "ring {idx} (ka={}, x={}, gamma={}) is lossy: |T| = {t_mag:.9}",
                cfg.ka, cfg.x, cfg.gamma
            ));
        }
    }
    Ok(GateSequence {
        items: items.to_vec(),
        link_phases: link_phases.to_vec(),
        per_ring_t_mag,
        composed,
        total_efficiency,
        warnings,
    })
}

/// Ideal-unitary recipes for the gates reachable with rings in series, as
/// factor lists in application order (first element acts first).
///
/// With the tilt angle stored negative, the lossless diametric ring at
/// `|theta| = pi/4` contributes `Ry(-pi/2)` and a lossless `gamma = pi/2`
/// phase-gate ring contributes `diag(1, -i)`. The verified orderings are:
///
/// * `Z`: the two phase elements, either order;
/// * `H`: the diametric element first, then the `Z` pair;
/// * `X` (NOT): the two diametric elements first, then the `Z` pair.
///
/// Ordering matters: interleaving the `Z` pair between the two diametric
/// elements composes to `Z` for every tilt angle (`Ry(a) Z Ry(a) = Z`
/// identically), never to `X`, and applying `Z` before the diametric
/// element lands orthogonal to `H` under the trace inner product.
pub mod recipes {
    use super::{Mat2, Target};
    use std::f64::consts::PI;

    /// The ideal unitary of a lossless `gamma = pi/2` phase-gate ring.
    pub fn quarter_phase() -> Mat2 {
        Target::Phase(PI / 2.0).matrix()
    }

    /// The ideal unitary of a lossless diametric ring at `|theta| = pi/4`.
    pub fn quarter_turn() -> Mat2 {
        Target::Ry(-PI / 2.0).matrix()
    }

    /// Z gate from two quarter phase gates.
    pub fn z_sequence() -> Vec<Mat2> {
        vec![quarter_phase(), quarter_phase()]
    }

    /// Hadamard: diametric ring, then the Z pair.
    pub fn hadamard_sequence() -> Vec<Mat2> {
        vec![quarter_turn(), quarter_phase(), quarter_phase()]
    }

    /// NOT: two diametric rings, then the Z pair.
    pub fn not_sequence() -> Vec<Mat2> {
        vec![
            quarter_turn(),
            quarter_turn(),
            quarter_phase(),
            quarter_phase(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn random_mat(rng: &mut StdRng) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.m[i][j] = Complex64::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                );
            }
        }
        m
    }

    #[test]
    fn fidelity_examples() {
        let h = Target::H.matrix();
        assert!((fidelity_up_to_phase(&h, &(-h)).unwrap() - 1.0).abs() < 1e-15);

        let z = Target::Z.matrix();
        let x = Target::X.matrix();
        assert!(fidelity_up_to_phase(&z, &x).unwrap() < 1e-15);

        let quarter = Target::Phase(PI / 2.0).matrix();
        let squared = quarter * quarter;
        assert!((fidelity_up_to_phase(&squared, &z).unwrap() - 1.0).abs() < 1e-15);

        assert!(matches!(
            fidelity_up_to_phase(&Mat2::zero(), &z),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn fidelity_is_global_phase_invariant() {
        let mut rng = StdRng::seed_from_u64(314);
        for _ in 0..1000 {
            let a = random_mat(&mut rng);
            if a.norm() == 0.0 {
                continue;
            }
            let phi = rng.random_range(-PI..PI);
            let b = a.scale(Complex64::from_polar(1.0, phi));
            let f = fidelity_up_to_phase(&a, &b).unwrap();
            assert!((f - 1.0).abs() < 1e-12, "fidelity {f} at phase {phi}");
        }
    }

    #[test]
    fn target_examples() {
        let z = target_library("Z", None).unwrap();
        assert_eq!(z, Mat2::from_real([[1.0, 0.0], [0.0, -1.0]]));

        let p = target_library("phase", Some(PI / 2.0)).unwrap();
        assert!((p.m[1][1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((p.m[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let ry = target_library("ry", Some(PI / 2.0)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(ry.max_abs_diff(&Mat2::from_real([[s, -s], [s, s]])) < 1e-15);

        assert!(matches!(
            target_library("toffoli", None),
            Err(Error::UnknownGate(_))
        ));
        assert!(target_library("ry", None).is_err());
    }

    #[test]
    fn recipe_identities_are_exact() {
        let z = compose_matrices(&recipes::z_sequence());
        assert!((fidelity_up_to_phase(&z, &Target::Z.matrix()).unwrap() - 1.0).abs() < 1e-15);
        // diag(1,-i)^2 is Z on the nose, not only up to phase.
        assert!(z.max_abs_diff(&Target::Z.matrix()) < 1e-15);

        let h = compose_matrices(&recipes::hadamard_sequence());
        assert!(h.max_abs_diff(&Target::H.matrix()) < 1e-15);

        let x = compose_matrices(&recipes::not_sequence());
        assert!(x.max_abs_diff(&Target::X.matrix()) < 1e-15);
    }

    #[test]
    fn sandwich_ordering_gives_z_not_x() {
        // The interleaved order (diametric, Z pair, diametric) collapses to
        // Z for any tilt angle, so it cannot realize NOT.
        for angle in [-PI / 2.0, -0.9, -0.3] {
            let d = Target::Ry(angle).matrix();
            let sandwich = compose_matrices(&[
                d,
                recipes::quarter_phase(),
                recipes::quarter_phase(),
                d,
            ]);
            let vs_z = fidelity_up_to_phase(&sandwich, &Target::Z.matrix()).unwrap();
            let vs_x = fidelity_up_to_phase(&sandwich, &Target::X.matrix()).unwrap();
            assert!((vs_z - 1.0).abs() < 1e-12);
            assert!(vs_x < 1e-12);
        }
        // And the reversed Hadamard order is orthogonal to H.
        let wrong = compose_matrices(&[
            recipes::quarter_phase(),
            recipes::quarter_phase(),
            recipes::quarter_turn(),
        ]);
        assert!(fidelity_up_to_phase(&wrong, &Target::H.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn compose_is_associative_and_engine_independent() {
        let items = [
            RingConfig::new(20.4, 1.0, PI / 2.0).unwrap(),
            RingConfig::new(19.5, 0.7, PI).unwrap(),
            RingConfig::new(21.2, 2.0, 1.3).unwrap(),
        ];
        let full = compose(&items, Method::ClosedForm).unwrap();
        let head = compose(&items[..1], Method::ClosedForm).unwrap();
        let tail = compose(&items[1..], Method::ClosedForm).unwrap();
        let regrouped = tail.composed * head.composed;
        assert!(full.composed.max_abs_diff(&regrouped) < 1e-12);

        let product = items
            .iter()
            .map(|c| closed_form::transmission(c).unwrap().t)
            .fold(Mat2::identity(), |acc, t| t * acc);
        assert!(full.composed.max_abs_diff(&product) < 1e-12);

        let solver = compose(&items, Method::Scattering).unwrap();
        assert!(full.composed.max_abs_diff(&solver.composed) < 1e-9);
        assert!((full.total_efficiency - solver.total_efficiency).abs() < 1e-9);
    }

    #[test]
    fn lossy_rings_attach_warnings() {
        let items = [RingConfig::new(20.4, 1.0, PI / 2.0).unwrap()];
        let seq = compose(&items, Method::ClosedForm).unwrap();
        assert_eq!(seq.warnings.len(), 1, "warnings: {:?}", seq.warnings);
        assert!(seq.total_efficiency < 1.0);
        assert!(seq.total_efficiency >= 0.0);
    }

    #[test]
    fn link_phases_only_move_the_global_phase() {
        let items = [
            RingConfig::new(20.4, 1.0, PI / 2.0).unwrap(),
            RingConfig::new(19.5, 0.7, PI).unwrap(),
        ];
        let plain = compose(&items, Method::ClosedForm).unwrap();
        let linked = compose_with_links(&items, &[0.9], Method::ClosedForm).unwrap();
        let f = fidelity_up_to_phase(&plain.composed, &linked.composed).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let expect = plain.composed.scale(Complex64::from_polar(1.0, 0.9));
        assert!(linked.composed.max_abs_diff(&expect) < 1e-14);

        assert!(matches!(
            compose_with_links(&items, &[0.1, 0.2], Method::ClosedForm),
            Err(Error::InvalidSequence(_))
        ));
    }

    #[test]
    fn empty_sequence_is_identity() {
        let seq = compose(&[], Method::ClosedForm).unwrap();
        assert!(seq.composed.max_abs_diff(&Mat2::identity()) == 0.0);
        assert_eq!(seq.total_efficiency, 1.0);
    }

    #[test]
    fn degenerate_ring_errors_propagate() {
        let items = [
            RingConfig::new(20.4, 1.0, PI).unwrap(),
            RingConfig::new(1e-8, 0.0, PI / 2.0).unwrap(),
        ];
        let err = compose(&items, Method::ClosedForm).unwrap_err();
        assert!(err.is_degenerate_point(), "got {err}");
    }
}
