use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::Element;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// A dual element `std + dual·ε` with `ε² = 0` over the base ring `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dual<T> {
    pub std: T,
    pub dual: T,
}

/// A dual number: both parts real. Totally ordered lexicographically.
pub type DualNumber = Dual<f64>;

impl<T: Element> Dual<T> {
    pub fn new(std: T, dual: T) -> Self {
        Dual { std, dual }
    }

    pub fn zero() -> Self {
        Dual::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Dual::new(T::one(), T::zero())
    }

    pub fn from_std(std: T) -> Self {
        Dual::new(std, T::zero())
    }

    /// Embeds a dual number into this ring.
    pub fn from_dual_number(d: DualNumber) -> Self {
        Dual::new(T::from_real(d.std), T::from_real(d.dual))
    }

    pub fn conj(self) -> Self {
        Dual::new(self.std.conj(), self.dual.conj())
    }

    /// `Re(a) = Re(a_s) + Re(a_d)ε`.
    pub fn real_part(self) -> DualNumber {
        Dual::new(self.std.re(), self.dual.re())
    }

    pub fn scale(self, k: f64) -> Self {
        Dual::new(self.std.scale(k), self.dual.scale(k))
    }

    pub fn is_appreciable(self, tol: f64) -> bool {
        self.std.abs() > tol
    }

    /// `|a|² = a*a` as a dual number.
    pub fn norm_sqr(self) -> DualNumber {
        Dual::new(self.std.norm_sqr(), 2.0 * (self.std.conj() * self.dual).re())
    }

    /// Dual magnitude: `|a_s| + Re(a_s* a_d)/|a_s| ε` when appreciable, else `|a_d| ε`.
    pub fn magnitude(self) -> DualNumber {
        self.magnitude_tol(DEFAULT_TOL)
    }

    pub fn magnitude_tol(self, tol: f64) -> DualNumber {
        let s = self.std.abs();
        if s > tol {
            Dual::new(s, (self.std.conj() * self.dual).re() / s)
        } else {
            Dual::new(0.0, self.dual.abs())
        }
    }

    pub fn inverse(self) -> Result<Self> {
        self.inverse_tol(DEFAULT_TOL)
    }

    /// `a⁻¹ = a_s⁻¹ − a_s⁻¹ a_d a_s⁻¹ ε`, valid in noncommutative rings.
    pub fn inverse_tol(self, tol: f64) -> Result<Self> {
        if !self.is_appreciable(tol) {
            return Err(Error::InfinitesimalNotInvertible);
        }
        let si = self.std.inv();
        Ok(Dual::new(si, -(si * self.dual * si)))
    }

    /// `||a_s| − 1| ≤ tol` and `|a_s a_d* + a_d a_s*| ≤ tol`.
    pub fn is_unit(self, tol: f64) -> bool {
        let cross = 2.0 * (self.dual * self.std.conj()).re();
        (self.std.abs() - 1.0).abs() <= tol && cross.abs() <= tol
    }

    /// Largest componentwise absolute difference, over both parts.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.std.max_abs_component().max(d.dual.max_abs_component())
    }

    /// Largest componentwise difference in the standard and dual parts separately.
    pub fn part_diffs(self, other: Self) -> (f64, f64) {
        let d = self - other;
        (d.std.max_abs_component(), d.dual.max_abs_component())
    }
}

impl<T: Element> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.std + o.std, self.dual + o.dual)
    }
}

impl<T: Element> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.std - o.std, self.dual - o.dual)
    }
}

impl<T: Element> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.std, -self.dual)
    }
}

impl<T: Element> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.std * o.std, self.std * o.dual + self.dual * o.std)
    }
}

impl<T: Element> AddAssign for Dual<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Element> SubAssign for Dual<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl DualNumber {
    /// Total lexicographic order on `(std, dual)`; NaN-safe for sorting.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.std
            .total_cmp(&other.std)
            .then_with(|| self.dual.total_cmp(&other.dual))
    }

    /// `self ≥ other` under the dual order, with ties in the standard part
    /// resolved within `tol`.
    pub fn ge_tol(&self, other: &Self, tol: f64) -> bool {
        if (self.std - other.std).abs() <= tol {
            self.dual >= other.dual - tol
        } else {
            self.std > other.std
        }
    }

    /// Maximum under the dual order.
    pub fn max_of(self, other: Self) -> Self {
        if other.total_cmp(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for DualNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.std.partial_cmp(&other.std)? {
            Ordering::Equal => self.dual.partial_cmp(&other.dual),
            ord => Some(ord),
        }
    }
}
