//! Complex adjoint of quaternion matrices.
//!
//! Writing `A = A₁ + A₂ j` with complex `A₁, A₂`, the embedding
//! `χ(A) = [[A₁, A₂], [−conj(A₂), conj(A₁)]]` is complex Hermitian whenever
//! `A` is quaternion Hermitian, and every eigenvalue of `A` appears twice in
//! `χ(A)`. A complex eigenvector `(u; v)` of `χ(A)` maps back to the
//! quaternion eigenvector `x = u − conj(v) j`.

use num_complex::Complex64;

use super::jacobi::hermitian_jacobi;
use crate::error::Result;
use crate::scalar::Quaternion;

/// `2n×2n` complex adjoint of a row-major `n×n` quaternion matrix.
pub fn complex_adjoint(m: &[Quaternion], n: usize) -> Vec<Complex64> {
    let size = 2 * n;
    let mut out = vec![Complex64::new(0.0, 0.0); size * size];
    for i in 0..n {
        for j in 0..n {
            let (a1, a2) = m[i * n + j].to_complex_pair();
            out[i * size + j] = a1;
            out[i * size + n + j] = a2;
            out[(n + i) * size + j] = -a2.conj();
            out[(n + i) * size + n + j] = a1.conj();
        }
    }
    out
}

/// Inverse map of [`complex_adjoint`] for matrices with the block structure.
pub fn from_complex_adjoint(c: &[Complex64], n: usize) -> Vec<Quaternion> {
    let size = 2 * n;
    let mut out = vec![Quaternion::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = Quaternion::from_complex_pair(c[i * size + j], c[i * size + n + j]);
        }
    }
    out
}

/// Quaternion vector encoded by the complex vector `(u; v)`.
pub fn quaternion_vector(c: &[Complex64], n: usize) -> Vec<Quaternion> {
    (0..n)
        .map(|r| Quaternion::from_complex_pair(c[r], -c[n + r].conj()))
        .collect()
}

fn inner(y: &[Quaternion], x: &[Quaternion]) -> Quaternion {
    y.iter()
        .zip(x)
        .fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

fn norm(x: &[Quaternion]) -> f64 {
    x.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigen-decomposition of a quaternion Hermitian matrix through its complex
/// adjoint. Returns `n` real eigenvalues (unsorted) and quaternion
/// eigenvectors as the columns of the row-major `n×n` output.
pub fn quaternion_hermitian_eigh(m: &[Quaternion], n: usize) -> Result<(Vec<f64>, Vec<Quaternion>)> {
    let size = 2 * n;
    let chi = complex_adjoint(m, n);
    let (vals, vecs) = hermitian_jacobi(&chi, size)?;

    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));

    let column = |k: usize| -> Vec<Complex64> { (0..size).map(|r| vecs[r * size + k]).collect() };

    let mut out_vals = Vec::with_capacity(n);
    let mut out_vecs: Vec<Vec<Quaternion>> = Vec::with_capacity(n);

    // Eigenvalues of χ(A) come in exact pairs; each cluster of 2k complex
    // vectors spans a k-dimensional quaternion eigenspace.
    let mut start = 0;
    while start < size {
        let mut end = start + 1;
        while end < size {
            let (prev, next) = (vals[order[end - 1]], vals[order[end]]);
            if prev - next > super::CLUSTER_TOL * prev.abs().max(1.0) {
                break;
            }
            end += 1;
        }
        let target = (end - start).div_ceil(2);
        let mut candidates: Vec<Vec<Quaternion>> = order[start..end]
            .iter()
            .map(|&k| quaternion_vector(&column(k), n))
            .collect();
        let mut accepted: Vec<Vec<Quaternion>> = Vec::with_capacity(target);
        while accepted.len() < target && !candidates.is_empty() {
            // Pivot on the candidate with the largest residual.
            let (best, _) = candidates
                .iter()
                .enumerate()
                .map(|(i, c)| (i, norm(c)))
                .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            let mut x = candidates.swap_remove(best);
            for _ in 0..2 {
                for y in &accepted {
                    let h = inner(y, &x);
                    for (xr, yr) in x.iter_mut().zip(y) {
                        *xr -= *yr * h;
                    }
                }
            }
            let len = norm(&x);
            for xr in x.iter_mut() {
                *xr = xr.scale(1.0 / len);
            }
            for c in candidates.iter_mut() {
                let h = inner(&x, c);
                for (cr, xr) in c.iter_mut().zip(&x) {
                    *cr -= *xr * h;
                }
            }
            accepted.push(x);
        }
        for x in accepted {
            // Rayleigh quotient x* A x
            let mut rq = 0.0;
            for i in 0..n {
                for j in 0..n {
                    rq += (x[i].conj() * m[i * n + j] * x[j]).w;
                }
            }
            out_vals.push(rq);
            out_vecs.push(x);
        }
        start = end;
    }

    let mut flat = vec![Quaternion::ZERO; n * n];
    for (k, x) in out_vecs.iter().enumerate().take(n) {
        for r in 0..n {
            flat[r * n + k] = x[r];
        }
    }
    out_vals.truncate(n);
    Ok((out_vals, flat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_pairs(m: &[Quaternion], n: usize, tol: f64) -> Vec<f64> {
        let (vals, vecs) = quaternion_hermitian_eigh(m, n).unwrap();
        assert_eq!(vals.len(), n);
        for k in 0..n {
            for i in 0..n {
                let mut s = Quaternion::ZERO;
                for j in 0..n {
                    s += m[i * n + j] * vecs[j * n + k];
                }
                let r = s - vecs[i * n + k].scale(vals[k]);
                assert!(r.norm() < tol, "residual {}", r.norm());
            }
        }
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        sorted
    }

    #[test]
    fn identity_embeds_to_identity() {
        let n = 3;
        let mut m = vec![Quaternion::ZERO; n * n];
        for i in 0..n {
            m[i * n + i] = Quaternion::ONE;
        }
        let chi = complex_adjoint(&m, n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                let e = if i == j { 1.0 } else { 0.0 };
                assert_eq!(chi[i * 2 * n + j], Complex64::new(e, 0.0));
            }
        }
        assert_eq!(from_complex_adjoint(&chi, n), m);
        assert_eq!(check_pairs(&m, n, 1e-14), vec![1.0; 3]);
    }

    #[test]
    fn off_diagonal_j() {
        // [[0, j], [-j, 0]]: direct check of A x = x λ on x = (1, ∓j)/√2.
        let m = vec![Quaternion::ZERO, Quaternion::J, -Quaternion::J, Quaternion::ZERO];
        let (chi_vals, _) = hermitian_jacobi(&complex_adjoint(&m, 2), 4).unwrap();
        let mut chi_vals = chi_vals;
        chi_vals.sort_by(f64::total_cmp);
        for (got, want) in chi_vals.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        let vals = check_pairs(&m, 2, 1e-14);
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let x = [Quaternion::from_real(h), Quaternion::J.scale(-h)];
        let ax0 = m[0] * x[0] + m[1] * x[1];
        let ax1 = m[2] * x[0] + m[3] * x[1];
        assert!((ax0 - x[0]).norm() < 1e-15 && (ax1 - x[1]).norm() < 1e-15);
    }

    #[test]
    fn repeated_quaternion_eigenvalues() {
        // Diagonal with a repeated entry plus a rotation-invariant block.
        let m = vec![
            Quaternion::from_real(2.0),
            Quaternion::ZERO,
            Quaternion::ZERO,
            Quaternion::ZERO,
            Quaternion::from_real(2.0),
            Quaternion::new(0.0, 0.3, -0.4, 0.5),
            Quaternion::ZERO,
            Quaternion::new(0.0, 0.3, -0.4, 0.5).conj(),
            Quaternion::from_real(2.0),
        ];
        let vals = check_pairs(&m, 3, 1e-13);
        let r = (0.09f64 + 0.16 + 0.25).sqrt();
        assert!((vals[0] - (2.0 + r)).abs() < 1e-13);
        assert!((vals[1] - 2.0).abs() < 1e-13);
        assert!((vals[2] - (2.0 - r)).abs() < 1e-13);
    }
}
