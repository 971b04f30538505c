//! Moore determinant of dual Hermitian matrices by permutation expansion.

use crate::error::{Error, Result};
use crate::scalar::{Dual, Element};

use super::matrix::DualMatrix;

/// Largest order accepted by [`moore_determinant`].
pub const MDET_CAP: usize = 9;

/// Disjoint cycles of `perm`, each led by its minimal index, listed by
/// decreasing leading index.
pub fn canonical_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut k = perm[start];
        while k != start {
            seen[k] = true;
            cyc.push(k);
            k = perm[k];
        }
        cycles.push(cyc);
    }
    cycles.reverse();
    cycles
}

/// `Σ_σ (−1)^{n − #cycles} a_σ`, each `a_σ` multiplied cycle by cycle in
/// canonical order.
pub fn moore_determinant<T: Element>(a: &DualMatrix<T>, tol: f64) -> Result<Dual<T>> {
    a.check_hermitian(tol)?;
    let n = a.rows();
    if n > MDET_CAP {
        return Err(Error::SizeCapExceeded { n, cap: MDET_CAP });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Dual::zero();
    loop {
        let cycles = canonical_cycles(&perm);
        let mut term = Dual::one();
        for cyc in &cycles {
            for (idx, &i) in cyc.iter().enumerate() {
                let j = cyc[(idx + 1) % cyc.len()];
                term = term * a.get(i, j);
            }
        }
        if (n - cycles.len()) % 2 == 1 {
            term = -term;
        }
        total += term;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quaternion;

    #[test]
    fn cycle_order() {
        // σ = (0 2)(1)(3 4)
        let perm = [2, 1, 0, 4, 3];
        assert_eq!(canonical_cycles(&perm), vec![vec![3, 4], vec![1], vec![0, 2]]);
    }

    #[test]
    fn permutation_count() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn unit_off_diagonal_pair() {
        let q = Dual::new(
            Quaternion::new(0.5, 0.5, 0.5, 0.5),
            Quaternion::new(0.5, -0.5, 0.5, -0.5),
        );
        let a = DualMatrix::new(2, 2, vec![Dual::zero(), q, q.conj(), Dual::zero()]).unwrap();
        let d = moore_determinant(&a, 1e-12).unwrap();
        assert!(d.max_abs_diff(-Dual::<Quaternion>::one()) < 1e-15);
    }

    #[test]
    fn diagonal_product() {
        let a = DualMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Dual::new(i as f64 + 1.0, 1.0)
            } else {
                Dual::zero()
            }
        });
        // (1+ε)(2+ε)(3+ε) = 6 + 11ε
        assert_eq!(moore_determinant(&a, 1e-12).unwrap(), Dual::new(6.0, 11.0));
    }

    #[test]
    fn size_cap() {
        let a = DualMatrix::<f64>::identity(MDET_CAP + 1);
        assert_eq!(
            moore_determinant(&a, 1e-12),
            Err(Error::SizeCapExceeded { n: 10, cap: 9 })
        );
    }
}
