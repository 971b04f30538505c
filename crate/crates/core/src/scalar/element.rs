//! Base rings for dual elements: reals, complex numbers and quaternions.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Dual, DualScalar, Quaternion, Ring};
use crate::error::Result;
use crate::linalg::jacobi;

/// Operations every base ring (ℝ, ℂ, ℍ) supports.
///
/// Multiplication is not assumed to be commutative; generic code must keep
/// factors in the order the math dictates.
pub trait Element:
    Copy
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const RING: Ring;
    /// Number of real components.
    const DIM: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, k: f64) -> Self;
    fn components(self) -> Vec<f64>;
    fn from_components(c: &[f64]) -> Option<Self>;
    fn wrap(d: Dual<Self>) -> DualScalar;
    fn unwrap(s: &DualScalar) -> Option<Dual<Self>>;

    /// Eigen-decomposition of an `n×n` Hermitian matrix over this ring
    /// (row-major). Returns real eigenvalues (unsorted) and the eigenvectors
    /// as the columns of a row-major `n×n` matrix.
    fn hermitian_eigh(m: &[Self], n: usize) -> Result<(Vec<f64>, Vec<Self>)>;

    /// Samples a unit dual element.
    fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Dual<Self>;

    fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn inv(self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    /// Largest absolute component.
    fn max_abs_component(self) -> f64 {
        self.components().into_iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Element for f64 {
    const RING: Ring = Ring::Real;
    const DIM: usize = 1;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn components(self) -> Vec<f64> {
        vec![self]
    }
    fn from_components(c: &[f64]) -> Option<Self> {
        match c {
            [x] => Some(*x),
            _ => None,
        }
    }
    fn wrap(d: Dual<Self>) -> DualScalar {
        DualScalar::Real(d)
    }
    fn unwrap(s: &DualScalar) -> Option<Dual<Self>> {
        match s {
            DualScalar::Real(d) => Some(*d),
            _ => None,
        }
    }

    fn hermitian_eigh(m: &[Self], n: usize) -> Result<(Vec<f64>, Vec<Self>)> {
        let c: Vec<Complex64> = m.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let (vals, vecs) = jacobi::hermitian_jacobi(&c, n)?;
        // Real input only ever sees real rotations.
        Ok((vals, vecs.into_iter().map(|z| z.re).collect()))
    }

    fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Dual<Self> {
        // The only unit dual numbers are ±1.
        let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        Dual::new(s, 0.0)
    }
}

impl Element for Complex64 {
    const RING: Ring = Ring::Complex;
    const DIM: usize = 2;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn components(self) -> Vec<f64> {
        vec![self.re, self.im]
    }
    fn from_components(c: &[f64]) -> Option<Self> {
        match c {
            [re, im] => Some(Complex64::new(*re, *im)),
            _ => None,
        }
    }
    fn wrap(d: Dual<Self>) -> DualScalar {
        DualScalar::Complex(d)
    }
    fn unwrap(s: &DualScalar) -> Option<Dual<Self>> {
        match s {
            DualScalar::Complex(d) => Some(*d),
            _ => None,
        }
    }

    fn hermitian_eigh(m: &[Self], n: usize) -> Result<(Vec<f64>, Vec<Self>)> {
        jacobi::hermitian_jacobi(m, n)
    }

    fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Dual<Self> {
        let theta_s = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let theta_d = rng.random_range(-2.0..2.0);
        let s = Complex64::from_polar(1.0, theta_s);
        // p_d = i θ_d p_s keeps p_s p_d* + p_d p_s* = 0.
        Dual::new(s, Complex64::new(0.0, theta_d) * s)
    }
}

impl Element for Quaternion {
    const RING: Ring = Ring::Quaternion;
    const DIM: usize = 4;

    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn from_real(x: f64) -> Self {
        Quaternion::from_real(x)
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn re(self) -> f64 {
        self.w
    }
    fn norm_sqr(self) -> f64 {
        Quaternion::norm_sqr(self)
    }
    fn scale(self, k: f64) -> Self {
        Quaternion::scale(self, k)
    }
    fn components(self) -> Vec<f64> {
        vec![self.w, self.x, self.y, self.z]
    }
    fn from_components(c: &[f64]) -> Option<Self> {
        match c {
            [w, x, y, z] => Some(Quaternion::new(*w, *x, *y, *z)),
            _ => None,
        }
    }
    fn wrap(d: Dual<Self>) -> DualScalar {
        DualScalar::Quaternion(d)
    }
    fn unwrap(s: &DualScalar) -> Option<Dual<Self>> {
        match s {
            DualScalar::Quaternion(d) => Some(*d),
            _ => None,
        }
    }

    fn hermitian_eigh(m: &[Self], n: usize) -> Result<(Vec<f64>, Vec<Self>)> {
        crate::linalg::adjoint::quaternion_hermitian_eigh(m, n)
    }

    fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Dual<Self> {
        let s = loop {
            let q = Quaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            let norm = q.norm();
            if norm > 1e-3 {
                break q.scale(1.0 / norm);
            }
        };
        let raw = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        // Project out the component violating p_s p_d* + p_d p_s* = 0.
        let c = (s.conj() * raw).w;
        Dual::new(s, raw - s.scale(c))
    }
}
