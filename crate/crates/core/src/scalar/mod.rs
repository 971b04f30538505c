//! Dual reals, dual complex numbers and dual quaternions.
//!
//! [`Dual<T>`] is the generic workhorse used by every algorithm; [`DualScalar`]
//! is its ring-tagged form used at the API edges (files, CLI, FFI), where the
//! base ring is only known at runtime.

mod dual;
mod element;
mod quaternion;
mod text;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use dual::{Dual, DualNumber};
pub use element::Element;
pub use quaternion::Quaternion;

use crate::error::{Error, Result};

/// Base ring tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Real,
    Complex,
    Quaternion,
}

impl Ring {
    pub fn dim(self) -> usize {
        match self {
            Ring::Real => 1,
            Ring::Complex => 2,
            Ring::Quaternion => 4,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Real => "real",
            Ring::Complex => "complex",
            Ring::Quaternion => "quaternion",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Ring::Real),
            "complex" => Ok(Ring::Complex),
            "quaternion" => Ok(Ring::Quaternion),
            other => Err(Error::BadRing(other.to_string())),
        }
    }
}

/// A dual element whose base ring is carried as a runtime tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualScalar {
    Real(Dual<f64>),
    Complex(Dual<Complex64>),
    Quaternion(Dual<Quaternion>),
}

macro_rules! same_ring {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (DualScalar::Real($x), DualScalar::Real($y)) => Ok(DualScalar::Real($body)),
            (DualScalar::Complex($x), DualScalar::Complex($y)) => Ok(DualScalar::Complex($body)),
            (DualScalar::Quaternion($x), DualScalar::Quaternion($y)) => Ok(DualScalar::Quaternion($body)),
            (a, b) => Err(Error::RingMismatch {
                left: a.ring(),
                right: b.ring(),
            }),
        }
    };
}

macro_rules! each_ring {
    ($s:expr, |$x:ident| $body:expr) => {
        match $s {
            DualScalar::Real($x) => $body,
            DualScalar::Complex($x) => $body,
            DualScalar::Quaternion($x) => $body,
        }
    };
}

impl DualScalar {
    pub fn ring(&self) -> Ring {
        match self {
            DualScalar::Real(_) => Ring::Real,
            DualScalar::Complex(_) => Ring::Complex,
            DualScalar::Quaternion(_) => Ring::Quaternion,
        }
    }

    /// Builds a scalar from flat component lists (`1`, `2` or `4` reals each).
    pub fn from_components(ring: Ring, std: &[f64], dual: &[f64]) -> Option<Self> {
        fn build<T: Element>(std: &[f64], dual: &[f64]) -> Option<DualScalar> {
            Some(T::wrap(Dual::new(T::from_components(std)?, T::from_components(dual)?)))
        }
        match ring {
            Ring::Real => build::<f64>(std, dual),
            Ring::Complex => build::<Complex64>(std, dual),
            Ring::Quaternion => build::<Quaternion>(std, dual),
        }
    }

    pub fn std_components(&self) -> Vec<f64> {
        each_ring!(self, |d| d.std.components())
    }

    pub fn dual_components(&self) -> Vec<f64> {
        each_ring!(self, |d| d.dual.components())
    }

    pub fn add(&self, other: &DualScalar) -> Result<DualScalar> {
        same_ring!(*self, *other, |a, b| a + b)
    }

    pub fn mul(&self, other: &DualScalar) -> Result<DualScalar> {
        same_ring!(*self, *other, |a, b| a * b)
    }

    pub fn conj(&self) -> DualScalar {
        match *self {
            DualScalar::Real(d) => DualScalar::Real(d.conj()),
            DualScalar::Complex(d) => DualScalar::Complex(d.conj()),
            DualScalar::Quaternion(d) => DualScalar::Quaternion(d.conj()),
        }
    }

    pub fn magnitude(&self) -> DualNumber {
        each_ring!(self, |d| d.magnitude())
    }

    pub fn inverse(&self) -> Result<DualScalar> {
        Ok(match *self {
            DualScalar::Real(d) => DualScalar::Real(d.inverse()?),
            DualScalar::Complex(d) => DualScalar::Complex(d.inverse()?),
            DualScalar::Quaternion(d) => DualScalar::Quaternion(d.inverse()?),
        })
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        each_ring!(self, |d| d.is_unit(tol))
    }

    pub fn real_part(&self) -> DualNumber {
        each_ring!(self, |d| d.real_part())
    }

    /// Widens to the quaternion ring (ℝ ⊂ ℂ ⊂ ℍ).
    pub fn to_quaternion(&self) -> Dual<Quaternion> {
        match *self {
            DualScalar::Real(d) => Dual::new(Quaternion::from_real(d.std), Quaternion::from_real(d.dual)),
            DualScalar::Complex(d) => Dual::new(Quaternion::from_complex(d.std), Quaternion::from_complex(d.dual)),
            DualScalar::Quaternion(d) => d,
        }
    }

    /// Converts into `ring`, failing if that would drop nonzero components.
    pub fn cast(&self, ring: Ring) -> Result<DualScalar> {
        let q = self.to_quaternion();
        let fits = |x: Quaternion| match ring {
            Ring::Real => x.x == 0.0 && x.y == 0.0 && x.z == 0.0,
            Ring::Complex => x.y == 0.0 && x.z == 0.0,
            Ring::Quaternion => true,
        };
        if !(fits(q.std) && fits(q.dual)) {
            return Err(Error::RingMismatch {
                left: self.ring(),
                right: ring,
            });
        }
        let (s, d) = (q.std.components(), q.dual.components());
        let k = ring.dim();
        Ok(DualScalar::from_components(ring, &s[..k], &d[..k]).expect("component count matches ring"))
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})eps",
            text::format_components(&self.std_components()),
            text::format_components(&self.dual_components())
        )
    }
}

impl FromStr for DualScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse_dual_scalar(s)
    }
}

impl<T: Element> From<Dual<T>> for DualScalar {
    fn from(d: Dual<T>) -> Self {
        T::wrap(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = DualScalar::Real(Dual::new(1.0, 0.0));
        let b = DualScalar::Complex(Dual::one());
        assert_eq!(
            a.add(&b),
            Err(Error::RingMismatch {
                left: Ring::Real,
                right: Ring::Complex
            })
        );
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn tagged_arithmetic() {
        let i = DualScalar::Quaternion(Dual::from_std(Quaternion::I));
        let j = DualScalar::Quaternion(Dual::from_std(Quaternion::J));
        let k = DualScalar::Quaternion(Dual::from_std(Quaternion::K));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.conj());
    }

    #[test]
    fn cast_refuses_lossy_narrowing() {
        let z = DualScalar::Complex(Dual::new(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)));
        assert_eq!(z.cast(Ring::Real).unwrap(), DualScalar::Real(Dual::new(1.0, 2.0)));
        let w = DualScalar::Complex(Dual::from_std(Complex64::new(0.0, 1.0)));
        assert!(w.cast(Ring::Real).is_err());
        assert_eq!(w.cast(Ring::Quaternion).unwrap().ring(), Ring::Quaternion);
    }
}
