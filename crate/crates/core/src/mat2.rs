//! Small dense 2x2 complex matrix used for spin transmission and gate algebra.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// A 2x2 complex matrix in the fixed S_z basis, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Mat2 { m }
    }

    /// Build from real entries.
    pub fn from_real(r: [[f64; 2]; 2]) -> Self {
        Mat2::new([
            [Complex64::new(r[0][0], 0.0), Complex64::new(r[0][1], 0.0)],
            [Complex64::new(r[1][0], 0.0), Complex64::new(r[1][1], 0.0)],
        ])
    }

    pub fn zero() -> Self {
        Mat2::from_real([[0.0, 0.0], [0.0, 0.0]])
    }

    pub fn identity() -> Self {
        Mat2::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    /// diag(a, b)
    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2::new([[a, z], [z, b]])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new([
            [self.m[0][0].conj(), self.m[1][0].conj()],
            [self.m[0][1].conj(), self.m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Scale by a complex scalar.
    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        for row in &mut out.m {
            for e in row {
                *e *= s;
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry-wise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        d
    }

    /// Largest entry-wise difference of magnitudes |A_ij| - |B_ij|.
    pub fn max_magnitude_diff(&self, other: &Mat2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j].norm() - other.m[i][j].norm()).abs());
            }
        }
        d
    }

    /// Deviation of self from being unitary, max |(A† A - 1)_ij|.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        out
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] -= rhs.m[i][j];
            }
        }
        out
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_det() {
        let a = Mat2::from_real([[1.0, 2.0], [3.0, 4.0]]);
        let b = Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]);
        let ab = a * b;
        assert_eq!(ab, Mat2::from_real([[2.0, 1.0], [4.0, 3.0]]));
        assert!((a.det() - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn adjoint_reverses_products() {
        let i = Complex64::new(0.0, 1.0);
        let a = Mat2::new([
            [Complex64::new(1.0, 2.0), 3.0 * i],
            [Complex64::new(-1.0, 0.5), Complex64::new(0.0, -2.0)],
        ]);
        let b = Mat2::new([
            [Complex64::new(0.5, -1.0), Complex64::new(2.0, 2.0)],
            [i, Complex64::new(4.0, 0.0)],
        ]);
        let lhs = (a * b).adjoint();
        let rhs = b.adjoint() * a.adjoint();
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn unitarity_defect_of_rotation_is_zero() {
        let t = 0.7f64;
        let r = Mat2::from_real([[t.cos(), -t.sin()], [t.sin(), t.cos()]]);
        assert!(r.unitarity_defect() < 1e-15);
        assert!((r.det() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
