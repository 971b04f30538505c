use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Dual, DualNumber, Element};

/// Dense row-major dual matrix `A = A_s + A_d ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Dual<T>>,
}

/// Dense dual vector `x = x_s + x_d ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualVector<T> {
    pub entries: Vec<Dual<T>>,
}

impl<T: Element> DualMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Dual<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(DualMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DualMatrix {
            rows,
            cols,
            data: vec![Dual::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Dual::one() } else { Dual::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Dual<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DualMatrix { rows, cols, data }
    }

    /// Assembles `std + dual·ε` from row-major base-ring parts.
    pub fn from_parts(rows: usize, cols: usize, std: &[T], dual: &[T]) -> Result<Self> {
        if std.len() != rows * cols || dual.len() != rows * cols {
            return Err(Error::ShapeMismatch("part lengths do not match shape".into()));
        }
        Ok(DualMatrix {
            rows,
            cols,
            data: std.iter().zip(dual).map(|(&s, &d)| Dual::new(s, d)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Dual<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Dual<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Dual<T>] {
        &self.data
    }

    pub fn std_part(&self) -> Vec<T> {
        self.data.iter().map(|d| d.std).collect()
    }

    pub fn dual_part(&self) -> Vec<T> {
        self.data.iter().map(|d| d.dual).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, k: f64) -> Self {
        DualMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|d| d.scale(k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(DualMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// `(AB)_s = A_s B_s`, `(AB)_d = A_s B_d + A_d B_s`; factor order kept.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Dual::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        }))
    }

    pub fn mul_vec(&self, x: &DualVector<T>) -> Result<DualVector<T>> {
        if self.cols != x.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} matrix times length-{} vector",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(DualVector {
            entries: (0..self.rows)
                .map(|i| (0..self.cols).fold(Dual::zero(), |acc, k| acc + self.get(i, k) * x.entries[k]))
                .collect(),
        })
    }

    /// Principal submatrix on the given row/column indices.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// Fails with the first entry where `|a_ij − conj(a_ji)|` exceeds `tol`.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} matrix cannot be Hermitian",
                self.rows, self.cols
            )));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self.get(i, j).max_abs_diff(self.get(j, i).conj()) > tol {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.check_hermitian(tol).is_ok()
    }

    /// `B_s = A_s⁻¹`, `B_d = −A_s⁻¹ A_d A_s⁻¹`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let bs = invert_base(&self.std_part(), n)?;
        let ad = self.dual_part();
        let bd = base_matmul(&base_matmul(&bs, &ad, n), &bs, n);
        let bd: Vec<T> = bd.into_iter().map(|x| -x).collect();
        Self::from_parts(n, n, &bs, &bd)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (&a, &b)| m.max(a.max_abs_diff(b)))
    }

    /// Largest componentwise deviation, standard and dual parts separately.
    pub fn part_diffs(&self, other: &Self) -> (f64, f64) {
        self.data.iter().zip(&other.data).fold((0.0, 0.0), |(s, d), (&a, &b)| {
            let (ps, pd) = a.part_diffs(b);
            (f64::max(s, ps), f64::max(d, pd))
        })
    }
}

/// Row-major `n×n` product over the base ring.
pub(crate) fn base_matmul<T: Element>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).fold(T::zero(), |acc, k| acc + a[i * n + k] * b[k * n + j]);
        }
    }
    out
}

/// Gauss-Jordan with partial pivoting using left row operations only, so it
/// is valid over the quaternions.
fn invert_base<T: Element>(a: &[T], n: usize) -> Result<Vec<T>> {
    let mut m = a.to_vec();
    let mut inv: Vec<T> = (0..n * n)
        .map(|k| if k / n == k % n { T::one() } else { T::zero() })
        .collect();
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| m[r1 * n + col].abs().total_cmp(&m[r2 * n + col].abs()))
            .expect("non-empty range");
        if m[pivot * n + col].abs() <= 1e-13 * scale {
            return Err(Error::SingularStandardPart);
        }
        for k in 0..n {
            m.swap(pivot * n + k, col * n + k);
            inv.swap(pivot * n + k, col * n + k);
        }
        let p = m[col * n + col].inv();
        for k in 0..n {
            m[col * n + k] = p * m[col * n + k];
            inv[col * n + k] = p * inv[col * n + k];
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            for k in 0..n {
                m[r * n + k] = m[r * n + k] - f * m[col * n + k];
                inv[r * n + k] = inv[r * n + k] - f * inv[col * n + k];
            }
        }
    }
    Ok(inv)
}

impl<T: Element> DualVector<T> {
    pub fn new(entries: Vec<Dual<T>>) -> Self {
        DualVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn std_part(&self) -> Vec<T> {
        self.entries.iter().map(|d| d.std).collect()
    }

    pub fn dual_part(&self) -> Vec<T> {
        self.entries.iter().map(|d| d.dual).collect()
    }

    pub fn is_appreciable(&self, tol: f64) -> bool {
        self.entries.iter().any(|d| d.std.abs() > tol)
    }

    /// `y* x`.
    pub fn inner(&self, x: &Self) -> Dual<T> {
        self.entries
            .iter()
            .zip(&x.entries)
            .fold(Dual::zero(), |acc, (&a, &b)| acc + a.conj() * b)
    }

    /// `‖x_s‖ + Re(x_s* x_d)/‖x_s‖ ε` if appreciable, else `‖x_d‖ ε`.
    pub fn norm(&self, tol: f64) -> DualNumber {
        let s: f64 = self.entries.iter().map(|d| d.std.norm_sqr()).sum::<f64>().sqrt();
        if s > tol {
            let cross: f64 = self.entries.iter().map(|d| (d.std.conj() * d.dual).re()).sum();
            Dual::new(s, cross / s)
        } else {
            let d: f64 = self.entries.iter().map(|d| d.dual.norm_sqr()).sum::<f64>().sqrt();
            Dual::new(0.0, d)
        }
    }

    /// `x λ` for a dual-number scalar.
    pub fn scale_dual(&self, lambda: DualNumber) -> Self {
        let l = Dual::<T>::from_dual_number(lambda);
        DualVector {
            entries: self.entries.iter().map(|&x| x * l).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DualVector {
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a - b).collect(),
        }
    }

    /// Largest componentwise magnitude of the standard and dual parts.
    pub fn part_max(&self) -> (f64, f64) {
        self.entries.iter().fold((0.0, 0.0), |(s, d), x| {
            (
                f64::max(s, x.std.max_abs_component()),
                f64::max(d, x.dual.max_abs_component()),
            )
        })
    }
}

impl<T: Element> fmt::Display for DualMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let d = self.get(i, j);
                    format!("({}) + ({})eps", d.std, d.dual)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
