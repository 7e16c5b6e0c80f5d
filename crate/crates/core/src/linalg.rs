//! Minimal dense complex linear algebra: LU with partial pivoting for the
//! small junction-matching systems. One step of iterative refinement keeps
//! the backward error at machine level even close to resonances.

use num_complex::Complex64;

pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
    /// max |u_kk| / min |u_kk|; cheap condition-number proxy.
    pub diag_ratio: f64,
}

/// Factor a dense row-major n x n matrix. Returns `None` when a pivot
/// vanishes exactly (structurally singular system).
pub(crate) fn lu_factor(a: &[Complex64], n: usize) -> Option<LuFactors> {
    assert_eq!(a.len(), n * n);
    let mut lu = a.to_vec();
    let mut pivots = vec![0usize; n];
    for k in 0..n {
        let mut max_val = lu[k * n + k].norm();
        let mut max_row = k;
        for i in (k + 1)..n {
            let v = lu[i * n + k].norm();
            if v > max_val {
                max_val = v;
                max_row = i;
            }
        }
        if max_val == 0.0 {
            return None;
        }
        pivots[k] = max_row;
        if max_row != k {
            for j in 0..n {
                lu.swap(k * n + j, max_row * n + j);
            }
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            for j in (k + 1)..n {
                let ukj = lu[k * n + j];
                lu[i * n + j] -= factor * ukj;
            }
        }
    }
    let mut dmax = 0.0f64;
    let mut dmin = f64::INFINITY;
    for k in 0..n {
        let d = lu[k * n + k].norm();
        dmax = dmax.max(d);
        dmin = dmin.min(d);
    }
    let diag_ratio = if dmin > 0.0 { dmax / dmin } else { f64::INFINITY };
    Some(LuFactors {
        n,
        lu,
        pivots,
        diag_ratio,
    })
}

impl LuFactors {
    /// Solve in place using the stored factors.
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        // Apply the full row permutation before the triangular solves; the
        // pivot list records interchanges in factorization order.
        for k in 0..n {
            b.swap(k, self.pivots[k]);
        }
        for k in 0..n {
            let bk = b[k];
            for i in (k + 1)..n {
                let l = self.lu[i * n + k];
                b[i] -= l * bk;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[i * n + j];
                let bj = b[j];
                b[i] -= u * bj;
            }
            b[i] /= self.lu[i * n + i];
        }
    }
}

/// Solve `A x = b` with one step of iterative refinement; returns the
/// solution together with the scaled residual
/// `||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)`.
pub(crate) fn solve_refined(
    a: &[Complex64],
    n: usize,
    b: &[Complex64],
    factors: &LuFactors,
) -> (Vec<Complex64>, f64) {
    let mut x = b.to_vec();
    factors.solve(&mut x);

    let mut residual = residual_vec(a, n, &x, b);
    factors.solve(&mut residual);
    for i in 0..n {
        x[i] += residual[i];
    }

    let r = residual_vec(a, n, &x, b);
    let rnorm = r.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let anorm = inf_norm(a, n);
    let xnorm = x.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let bnorm = b.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let scale = anorm * xnorm + bnorm;
    let scaled = if scale > 0.0 { rnorm / scale } else { rnorm };
    (x, scaled)
}

fn residual_vec(a: &[Complex64], n: usize, x: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut r = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..n {
            acc -= a[i * n + j] * x[j];
        }
        r[i] = acc;
    }
    r
}

fn inf_norm(a: &[Complex64], n: usize) -> f64 {
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j].norm()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_known_system() {
        // [[2, i], [-i, 1]] x = [1, 0] -> x = (1, i)
        let a = vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)];
        let b = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let f = lu_factor(&a, 2).unwrap();
        let (x, res) = solve_refined(&a, 2, &b, &f);
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - c(0.0, 1.0)).norm() < 1e-14);
        assert!(res < 1e-15);
    }

    #[test]
    fn random_round_trip() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(99);
        let n = 12;
        for _ in 0..50 {
            let a: Vec<Complex64> = (0..n * n)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let x_true: Vec<Complex64> = (0..n)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let mut b = vec![c(0.0, 0.0); n];
            for i in 0..n {
                for j in 0..n {
                    b[i] += a[i * n + j] * x_true[j];
                }
            }
            let f = lu_factor(&a, n).unwrap();
            let (x, res) = solve_refined(&a, n, &b, &f);
            for i in 0..n {
                assert!((x[i] - x_true[i]).norm() < 1e-10);
            }
            assert!(res < 1e-14);
        }
    }

    #[test]
    fn exact_singular_matrix_is_rejected() {
        let a = vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        assert!(lu_factor(&a, 2).is_none());
    }
}
