//! Algebraic laws of dual elements and the dual transcendental functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use dualgain::transcendental::{dc_exp, dc_log, dq_to_dc, dual_cos, DualAngle};
use dualgain::{Dual, DualNumber, DualScalar, Element, Quaternion};

const TOL: f64 = 1e-12;

fn part<T: Element>() -> impl Strategy<Value = T> {
    prop::collection::vec(-1.0f64..1.0, T::DIM).prop_map(|c| T::from_components(&c).expect("DIM components"))
}

fn element<T: Element>() -> impl Strategy<Value = Dual<T>> {
    (part::<T>(), part::<T>()).prop_map(|(s, d)| Dual::new(s, d))
}

fn appreciable<T: Element>() -> impl Strategy<Value = Dual<T>> {
    element::<T>().prop_filter("|a_s| ≥ 0.1", |a| a.std.abs() >= 0.1)
}

fn unit<T: Element>() -> impl Strategy<Value = Dual<T>> {
    any::<u64>().prop_map(|seed| T::random_unit(&mut dualgain::io::rng_from_seed(seed)))
}

fn multiplicative<T: Element>(a: Dual<T>, b: Dual<T>) -> Result<(), TestCaseError> {
    prop_assert!((a * b).magnitude().max_abs_diff(a.magnitude() * b.magnitude()) <= TOL);
    Ok(())
}

fn triangle<T: Element>(a: Dual<T>, b: Dual<T>) -> Result<(), TestCaseError> {
    let sum = a.magnitude() + b.magnitude();
    prop_assert!(sum.ge_tol(&(a + b).magnitude(), TOL));
    Ok(())
}

fn real_part_laws<T: Element>(a: Dual<T>, b: Dual<T>) -> Result<(), TestCaseError> {
    prop_assert!((a * b).real_part().max_abs_diff((b * a).real_part()) <= TOL);
    prop_assert_eq!(a.real_part(), a.conj().real_part());
    prop_assert!(a.magnitude().ge_tol(&a.real_part(), TOL));
    Ok(())
}

fn double_inverse<T: Element>(a: Dual<T>) -> Result<(), TestCaseError> {
    let back = a.inverse().unwrap().inverse().unwrap();
    prop_assert!(back.max_abs_diff(a) <= TOL);
    prop_assert!((a * a.inverse().unwrap()).max_abs_diff(Dual::one()) <= TOL);
    Ok(())
}

fn unit_group<T: Element>(p: Dual<T>, q: Dual<T>) -> Result<(), TestCaseError> {
    prop_assert!(p.is_unit(TOL) && q.is_unit(TOL));
    prop_assert!((p * q).is_unit(TOL));
    prop_assert!(p.inverse().unwrap().is_unit(TOL));
    Ok(())
}

proptest! {
    #[test]
    fn magnitude_is_multiplicative_real(a in element::<f64>(), b in element::<f64>()) { multiplicative(a, b)?; }
    #[test]
    fn magnitude_is_multiplicative_complex(a in element::<Complex64>(), b in element::<Complex64>()) { multiplicative(a, b)?; }
    #[test]
    fn magnitude_is_multiplicative_quaternion(a in element::<Quaternion>(), b in element::<Quaternion>()) { multiplicative(a, b)?; }

    #[test]
    fn triangle_inequality_real(a in element::<f64>(), b in element::<f64>()) { triangle(a, b)?; }
    #[test]
    fn triangle_inequality_complex(a in element::<Complex64>(), b in element::<Complex64>()) { triangle(a, b)?; }
    #[test]
    fn triangle_inequality_quaternion(a in element::<Quaternion>(), b in element::<Quaternion>()) { triangle(a, b)?; }

    #[test]
    fn real_part_complex(a in element::<Complex64>(), b in element::<Complex64>()) { real_part_laws(a, b)?; }
    #[test]
    fn real_part_quaternion(a in element::<Quaternion>(), b in element::<Quaternion>()) { real_part_laws(a, b)?; }

    #[test]
    fn inverse_real(a in appreciable::<f64>()) { double_inverse(a)?; }
    #[test]
    fn inverse_complex(a in appreciable::<Complex64>()) { double_inverse(a)?; }
    #[test]
    fn inverse_quaternion(a in appreciable::<Quaternion>()) { double_inverse(a)?; }

    #[test]
    fn units_form_a_group_complex(p in unit::<Complex64>(), q in unit::<Complex64>()) { unit_group(p, q)?; }
    #[test]
    fn units_form_a_group_quaternion(p in unit::<Quaternion>(), q in unit::<Quaternion>()) { unit_group(p, q)?; }

    #[test]
    fn real_part_bounded_by_magnitude_with_equality_on_nonnegatives(s in 0.01f64..10.0, d in -10.0f64..10.0) {
        let a: DualNumber = Dual::new(s, d);
        prop_assert!(a.magnitude().max_abs_diff(a) <= TOL);
        let neg = Dual::new(-s, d);
        prop_assert!(neg.magnitude().std > neg.real_part().std);
    }

    #[test]
    fn exp_inverts_log(a in appreciable::<Complex64>()) {
        let back = dc_exp(dc_log(a, TOL).unwrap());
        prop_assert!(back.max_abs_diff(a) <= TOL);
    }

    #[test]
    fn cosine_is_mean_of_exponentials(s in -PI..PI, d in -5.0f64..5.0) {
        let t = DualAngle::new(s, d);
        let sum = t.to_unit() + DualAngle::new(-s, -d).to_unit();
        let half = Dual::new(sum.std.re / 2.0, sum.dual.re / 2.0);
        prop_assert!(dual_cos(t).max_abs_diff(half) <= TOL);
        prop_assert!(sum.std.im.abs() <= TOL && sum.dual.im.abs() <= TOL);
    }

    #[test]
    fn dq_to_dc_on_units(q in unit::<Quaternion>()) {
        let (a, u) = dq_to_dc(q, TOL);
        prop_assert!(a.is_unit(TOL) && u.is_unit(TOL));
        let aq = Dual::new(Quaternion::from_complex(a.std), Quaternion::from_complex(a.dual));
        prop_assert!((u.conj() * q * u).max_abs_diff(aq) <= TOL);
        prop_assert!(a.real_part().max_abs_diff(q.real_part()) <= TOL);
    }

    #[test]
    fn display_round_trips(a in element::<Quaternion>()) {
        let s = DualScalar::from(a);
        prop_assert_eq!(s.to_string().parse::<DualScalar>().unwrap(), s);
    }
}

#[test]
fn quaternion_units_multiply() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    let minus_one = Quaternion::from_real(-1.0);
    assert_eq!(i * i, minus_one);
    assert_eq!(j * j, minus_one);
    assert_eq!(k * k, minus_one);
    assert_eq!(i * j * k, minus_one);
    assert_eq!(i * j, k);
    assert_eq!(j * i, -k);
}

#[test]
fn dual_numbers_order_lexicographically() {
    let a: DualNumber = Dual::new(1.0, -5.0);
    let b: DualNumber = Dual::new(1.0, 2.0);
    let c: DualNumber = Dual::new(0.5, 100.0);
    assert!(b > a && a > c);
    assert!(a.ge_tol(&Dual::new(1.0 + 1e-13, -5.0), 1e-12));
}
