//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the real symmetric Jacobi rotation that zeroes it.
//! Sweeps run in a fixed row-major pivot order, so results are bit-identical
//! for a given input.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this,
/// relative to `max(1, ‖A‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Returns `(eigenvalues, eigenvectors)`; eigenvalues are unsorted and the
/// eigenvectors are the columns of the row-major `n×n` output.
pub fn hermitian_jacobi(m: &[Complex64], n: usize) -> Result<(Vec<f64>, Vec<Complex64>)> {
    assert_eq!(m.len(), n * n, "matrix must be n×n");
    let zero = Complex64::new(0.0, 0.0);
    let mut a = m.to_vec();
    // Hermitize the working copy so tiny input asymmetry does not leak in.
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let h = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = h;
            a[j * n + i] = h.conj();
        }
    }
    let mut v = vec![zero; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let threshold = OFF_DIAGONAL_TOL * scale;

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = phase.conj() * (-s);
                let gqq = phase.conj() * c;

                // A ← A G (columns p, q)
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp * gpp + arq * gqp;
                    a[r * n + q] = arp * gpq + arq * gqq;
                }
                // A ← G* A (rows p, q)
                for r in 0..n {
                    let apr = a[p * n + r];
                    let aqr = a[q * n + r];
                    a[p * n + r] = gpp.conj() * apr + gqp.conj() * aqr;
                    a[q * n + r] = gpq.conj() * apr + gqq.conj() * aqr;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                // V ← V G
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp * gpp + vrq * gqp;
                    v[r * n + q] = vrp * gpq + vrq * gqq;
                }
            }
        }
    }

    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok((values, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(m: &[Complex64], n: usize, vals: &[f64], vecs: &[Complex64]) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                let mut s = c(0.0, 0.0);
                for j in 0..n {
                    s += m[i * n + j] * vecs[j * n + k];
                }
                worst = worst.max((s - vecs[i * n + k] * vals[k]).norm());
            }
        }
        worst
    }

    #[test]
    fn pauli_y() {
        let m = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let (mut vals, vecs) = hermitian_jacobi(&m, 2).unwrap();
        assert!(residual(&m, 2, &vals, &vecs) < 1e-14);
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dense_hermitian_4x4() {
        let n = 4;
        let mut m = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            m[i * n + i] = c(i as f64 - 1.5, 0.0);
            for j in (i + 1)..n {
                let z = c((i + 2 * j) as f64 * 0.3 - 1.0, (i * j) as f64 * 0.2 - 0.4);
                m[i * n + j] = z;
                m[j * n + i] = z.conj();
            }
        }
        let (vals, vecs) = hermitian_jacobi(&m, n).unwrap();
        assert!(residual(&m, n, &vals, &vecs) < 1e-12);
        // orthonormal columns
        for a in 0..n {
            for b in 0..n {
                let mut s = c(0.0, 0.0);
                for r in 0..n {
                    s += vecs[r * n + a].conj() * vecs[r * n + b];
                }
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((s - c(expect, 0.0)).norm() < 1e-13);
            }
        }
        let trace: f64 = (0..n).map(|i| m[i * n + i].re).sum();
        assert!((vals.iter().sum::<f64>() - trace).abs() < 1e-12);
    }

    #[test]
    fn empty_and_scalar() {
        assert_eq!(hermitian_jacobi(&[], 0).unwrap().0, Vec::<f64>::new());
        let (vals, vecs) = hermitian_jacobi(&[c(3.0, 0.0)], 1).unwrap();
        assert_eq!(vals, vec![3.0]);
        assert_eq!(vecs, vec![c(1.0, 0.0)]);
    }
}
