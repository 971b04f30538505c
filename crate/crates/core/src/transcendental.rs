//! Exponential, logarithm, cosine and roots of dual complex numbers, and the
//! unit similarity that reduces a dual quaternion to a dual complex number.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Dual, DualNumber, Quaternion};

type DualComplex = Dual<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A dual angle `θ_s + θ_d ε` with `θ_s ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualAngle {
    pub std: f64,
    pub dual: f64,
}

impl DualAngle {
    /// Wraps the standard part into `(−π, π]`.
    pub fn new(std: f64, dual: f64) -> Self {
        DualAngle {
            std: canonical_angle(std),
            dual,
        }
    }

    /// `e^{iθ} = e^{iθ_s} + iθ_d e^{iθ_s} ε`.
    pub fn to_unit(self) -> DualComplex {
        dc_exp(Dual::new(I * self.std, I * self.dual))
    }
}

fn canonical_angle(t: f64) -> f64 {
    let mut r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// `e^a = e^{a_s} + a_d e^{a_s} ε`.
pub fn dc_exp(a: DualComplex) -> DualComplex {
    let e = a.std.exp();
    Dual::new(e, a.dual * e)
}

/// Principal `log a = log a_s + a_s⁻¹ a_d ε`.
pub fn dc_log(a: DualComplex, tol: f64) -> Result<DualComplex> {
    if a.std.norm() <= tol {
        return Err(Error::InfinitesimalNotInvertible);
    }
    Ok(Dual::new(a.std.ln(), a.dual / a.std))
}

/// `θ = −i log a` for a unit `a`, so that `e^{iθ} = a` with `θ` real.
pub fn unit_to_angle(a: DualComplex, tol: f64) -> Result<DualAngle> {
    if !a.is_unit(tol) {
        return Err(Error::NotUnit);
    }
    Ok(DualAngle::new(a.std.arg(), (a.dual * a.std.conj()).im))
}

/// `cos θ = cos θ_s − θ_d sin θ_s ε`.
pub fn dual_cos(t: DualAngle) -> DualNumber {
    Dual::new(t.std.cos(), -t.dual * t.std.sin())
}

/// The `n` roots `e^{i(θ + 2πj)/n}`, `j = 0..n`, of a unit `a`.
pub fn nth_roots(a: DualComplex, n: usize, tol: f64) -> Result<Vec<DualComplex>> {
    if n == 0 {
        return Err(Error::BadParameter("root order must be positive".into()));
    }
    let theta = unit_to_angle(a, tol)?;
    Ok((0..n)
        .map(|j| {
            let phi = (theta.std + 2.0 * PI * j as f64) / n as f64;
            let s = Complex64::from_polar(1.0, phi);
            Dual::new(s, I * (theta.dual / n as f64) * s)
        })
        .collect())
}

fn vec_norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Unit quaternion `u` with `u* (v₁i + v₂j + v₃k) u = ‖v‖ i`.
fn align_to_i(v: [f64; 3]) -> Quaternion {
    let norm = vec_norm(v);
    // v₁ + ‖v‖ without cancellation when v₁ < 0.
    let lead = if v[0] >= 0.0 {
        v[0] + norm
    } else {
        (v[1] * v[1] + v[2] * v[2]) / (norm - v[0])
    };
    let x = Quaternion::new(lead, 0.0, -v[2], v[1]);
    let len = x.norm();
    if len <= 1e-300 || len <= f64::EPSILON * norm {
        // v points along −i: a half turn about j maps it to +i.
        Quaternion::J
    } else {
        x.scale(1.0 / len)
    }
}

fn to_complex(q: Quaternion) -> Complex64 {
    Complex64::new(q.w, q.x)
}

/// Finds a unit dual quaternion `u` and a dual complex `a` with `a = u* q u`.
///
/// Real part and imaginary magnitude are preserved. Inputs already of
/// complex form, and inputs with a real standard part and real dual part,
/// return `u = 1`.
pub fn dq_to_dc(q: Dual<Quaternion>, tol: f64) -> (DualComplex, Dual<Quaternion>) {
    let complex_form = |p: Quaternion| p.y.abs() <= tol && p.z.abs() <= tol;
    let identity = |q: Dual<Quaternion>| {
        (
            Dual::new(to_complex(q.std), to_complex(q.dual)),
            Dual::<Quaternion>::one(),
        )
    };
    if complex_form(q.std) && complex_form(q.dual) {
        return identity(q);
    }

    let q1 = q.std.vector();
    if vec_norm(q1) <= tol {
        let q3 = q.dual.vector();
        if vec_norm(q3) <= tol {
            return identity(q);
        }
        let u = Dual::from_std(align_to_i(q3));
        let a = u.conj() * q * u;
        // The rotation fixes a real standard part; drop its roundoff so the
        // imaginary part stays exactly on the infinitesimal branch.
        let std = Complex64::new(q.std.w, vec_norm(q1));
        return (Dual::new(std, to_complex(a.dual)), u);
    }
    let u = {
        let us = align_to_i(q1);
        let n1 = vec_norm(q1);
        let r = us.conj() * q.dual * us;
        let t = Quaternion::new(0.0, 0.0, -r.z / n1, r.y / n1);
        Dual::new(us, (us * t).scale(0.5))
    };
    let a = u.conj() * q * u;
    (Dual::new(to_complex(a.std), to_complex(a.dual)), u)
}
