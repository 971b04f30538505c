//! Eigen-decomposition of dual Hermitian matrices.
//!
//! The standard part is diagonalized directly. Inside every cluster of
//! (numerically) repeated standard eigenvalues the basis is rotated to
//! diagonalize the supplement matrix `W* A_d W`, whose eigenvalues are the
//! dual parts. Eigenvector dual parts then follow from first-order
//! perturbation over the out-of-cluster directions.

use crate::error::Result;
use crate::scalar::{Dual, DualNumber, Element};

use super::matrix::{DualMatrix, DualVector};

/// Relative gap below which consecutive standard eigenvalues are merged.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Entries smaller than this are skipped when fixing the eigenvector phase.
const GAUGE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Tolerance for the Hermitian precondition.
    pub hermitian_tol: f64,
    /// Relative gap for grouping repeated standard eigenvalues.
    pub cluster_tol: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            hermitian_tol: crate::DEFAULT_TOL,
            cluster_tol: CLUSTER_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub value: DualNumber,
    pub vector: DualVector<T>,
}

impl<T: Element> EigenPair<T> {
    /// Standard and dual parts of `A x − x λ`, as max-abs components.
    pub fn residual(&self, a: &DualMatrix<T>) -> Result<(f64, f64)> {
        let ax = a.mul_vec(&self.vector)?;
        Ok(ax.sub(&self.vector.scale_dual(self.value)).part_max())
    }
}

/// Index ranges of clusters in a descending list of eigenvalues.
pub fn clusters(sorted_desc: &[f64], cluster_tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=sorted_desc.len() {
        let split = k == sorted_desc.len()
            || sorted_desc[k - 1] - sorted_desc[k] > cluster_tol * sorted_desc[k - 1].abs().max(1.0);
        if split {
            out.push((start, k));
            start = k;
        }
    }
    out
}

/// Column `k` of a row-major `n×m` matrix.
fn column<T: Element>(m: &[T], rows: usize, cols: usize, k: usize) -> Vec<T> {
    (0..rows).map(|r| m[r * cols + k]).collect()
}

/// `y* M x` over the base ring.
fn sandwich<T: Element>(y: &[T], m: &[T], x: &[T]) -> T {
    let n = x.len();
    let mut acc = T::zero();
    for i in 0..n {
        let mut row = T::zero();
        for j in 0..n {
            row = row + m[i * n + j] * x[j];
        }
        acc = acc + y[i].conj() * row;
    }
    acc
}

/// Right-multiplies by a unit scalar so the first sizeable entry is positive real.
fn fix_gauge<T: Element>(x: &mut [T]) {
    if let Some(&p) = x.iter().find(|v| v.abs() > GAUGE_TOL) {
        let u = p.conj().scale(1.0 / p.abs());
        for v in x.iter_mut() {
            *v = *v * u;
        }
    }
}

/// All `n` eigenpairs of a dual Hermitian matrix, sorted descending under
/// the dual-number order.
pub fn hermitian_eigendecomposition<T: Element>(a: &DualMatrix<T>, opts: &EigenOptions) -> Result<Vec<EigenPair<T>>> {
    a.check_hermitian(opts.hermitian_tol)?;
    let n = a.rows();
    let a_s = a.std_part();
    let a_d = a.dual_part();

    let (vals, vecs) = T::hermitian_eigh(&a_s, n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let sorted: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    let mut xs: Vec<Vec<T>> = order.iter().map(|&k| column(&vecs, n, n, k)).collect();

    let mut lambda_s = vec![0.0; n];
    let mut lambda_d = vec![0.0; n];
    let mut cluster_of = vec![0usize; n];

    for (c, &(lo, hi)) in clusters(&sorted, opts.cluster_tol).iter().enumerate() {
        let m = hi - lo;
        let mean = sorted[lo..hi].iter().sum::<f64>() / m as f64;
        for k in lo..hi {
            lambda_s[k] = mean;
            cluster_of[k] = c;
        }
        // Supplement matrix W* A_d W, Hermitized.
        let mut sup = vec![T::zero(); m * m];
        for p in 0..m {
            for q in 0..m {
                sup[p * m + q] = sandwich(&xs[lo + p], &a_d, &xs[lo + q]);
            }
        }
        for p in 0..m {
            sup[p * m + p] = T::from_real(sup[p * m + p].re());
            for q in (p + 1)..m {
                let h = (sup[p * m + q] + sup[q * m + p].conj()).scale(0.5);
                sup[p * m + q] = h;
                sup[q * m + p] = h.conj();
            }
        }
        let (mu, y) = T::hermitian_eigh(&sup, m)?;
        let mut sub: Vec<usize> = (0..m).collect();
        sub.sort_by(|&i, &j| mu[j].total_cmp(&mu[i]));
        // W ← W Y
        let w: Vec<Vec<T>> = xs[lo..hi].to_vec();
        for (slot, &k) in sub.iter().enumerate() {
            let mut v = vec![T::zero(); n];
            for (p, wp) in w.iter().enumerate() {
                let coeff = y[p * m + k];
                for r in 0..n {
                    v[r] = v[r] + wp[r] * coeff;
                }
            }
            xs[lo + slot] = v;
            lambda_d[lo + slot] = mu[k];
        }
    }

    for x in xs.iter_mut() {
        fix_gauge(x);
    }

    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let mut xd = vec![T::zero(); n];
        for j in 0..n {
            if cluster_of[j] == cluster_of[i] {
                continue;
            }
            let coeff = sandwich(&xs[j], &a_d, &xs[i]).scale(1.0 / (lambda_s[i] - lambda_s[j]));
            for r in 0..n {
                xd[r] = xd[r] + xs[j][r] * coeff;
            }
        }
        let entries = xs[i].iter().zip(&xd).map(|(&s, &d)| Dual::new(s, d)).collect();
        pairs.push(EigenPair {
            value: Dual::new(lambda_s[i], lambda_d[i]),
            vector: DualVector::new(entries),
        });
    }
    pairs.sort_by(|p, q| q.value.total_cmp(&p.value));
    Ok(pairs)
}

/// Eigenvalues only, sorted descending under the dual-number order.
pub fn hermitian_eigenvalues<T: Element>(a: &DualMatrix<T>, opts: &EigenOptions) -> Result<Vec<DualNumber>> {
    Ok(hermitian_eigendecomposition(a, opts)?
        .into_iter()
        .map(|p| p.value)
        .collect())
}
