//! Parser for the textual form `(a_s) + (a_d)eps`.
//!
//! Base-ring values are written `r`, `r±xi` or `r±xi±yj±zk`. Parentheses
//! around a bare real are optional, and the `+ (…)eps` tail may be omitted
//! when the dual part is zero. `ε` is accepted in place of `eps`.

use num_complex::Complex64;

use super::{DualScalar, Quaternion, Ring};
use crate::error::{Error, Result};

fn syntax(msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Base {
    Real(f64),
    Complex(Complex64),
    Quaternion(Quaternion),
}

impl Base {
    fn ring(self) -> Ring {
        match self {
            Base::Real(_) => Ring::Real,
            Base::Complex(_) => Ring::Complex,
            Base::Quaternion(_) => Ring::Quaternion,
        }
    }

    fn widen(self) -> Quaternion {
        match self {
            Base::Real(r) => Quaternion::from_real(r),
            Base::Complex(c) => Quaternion::from_complex(c),
            Base::Quaternion(q) => q,
        }
    }
}

/// Renders `r`, `r±xi` or `r±xi±yj±zk`, keeping the sign of negative zero.
pub(crate) fn format_components(c: &[f64]) -> String {
    let mut out = c[0].to_string();
    for (v, unit) in c[1..].iter().zip(['i', 'j', 'k']) {
        let sign = if v.is_sign_negative() { '-' } else { '+' };
        out.push(sign);
        out.push_str(&v.abs().to_string());
        out.push(unit);
    }
    out
}

pub(crate) fn parse_dual_scalar(input: &str) -> Result<DualScalar> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(syntax("empty dual scalar"));
    }
    let body = s.strip_suffix("eps").or_else(|| s.strip_suffix('ε'));
    let (std, dual) = match body {
        None => (parse_part(&s)?, Base::Real(0.0)),
        Some(body) => split_std_dual(body)?,
    };
    let ring = std.ring().max(dual.ring());
    let (qs, qd) = (std.widen(), dual.widen());
    let k = ring.dim();
    let sc = [qs.w, qs.x, qs.y, qs.z];
    let dc = [qd.w, qd.x, qd.y, qd.z];
    Ok(DualScalar::from_components(ring, &sc[..k], &dc[..k]).expect("dimension matches ring"))
}

fn split_std_dual(body: &str) -> Result<(Base, Base)> {
    if body.ends_with(')') {
        let open = body
            .rfind('(')
            .ok_or_else(|| syntax("unbalanced parentheses in dual part"))?;
        let left = body[..open]
            .strip_suffix('+')
            .ok_or_else(|| syntax("expected `+` before the dual part"))?;
        return Ok((parse_part(left)?, parse_base(&body[open + 1..body.len() - 1])?));
    }
    // Bare real dual part: pick the rightmost `+` that splits cleanly.
    for (pos, _) in body.match_indices('+').rev() {
        if pos == 0 {
            continue;
        }
        if let (Ok(left), Ok(right)) = (parse_part(&body[..pos]), parse_real(&body[pos + 1..])) {
            return Ok((left, Base::Real(right)));
        }
    }
    Err(syntax(format!("cannot split `{body}` into standard and dual parts")))
}

fn parse_part(s: &str) -> Result<Base> {
    match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) => parse_base(inner),
        None => parse_real(s).map(Base::Real),
    }
}

fn parse_real(s: &str) -> Result<f64> {
    let mut cur = Cursor { s, pos: 0 };
    let v = cur.signed_number(true)?;
    if cur.pos != s.len() {
        return Err(syntax(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

fn parse_base(s: &str) -> Result<Base> {
    let mut cur = Cursor { s, pos: 0 };
    let mut terms: Vec<(f64, Option<char>)> = Vec::new();
    while cur.pos < s.len() {
        let first = terms.is_empty();
        let v = cur.signed_number(first)?;
        let unit = match cur.peek() {
            Some(u @ ('i' | 'j' | 'k')) => {
                cur.pos += 1;
                Some(u)
            }
            _ => None,
        };
        terms.push((v, unit));
    }
    match terms.as_slice() {
        [(r, None)] => Ok(Base::Real(*r)),
        [(r, None), (x, Some('i'))] => Ok(Base::Complex(Complex64::new(*r, *x))),
        [(w, None), (x, Some('i')), (y, Some('j')), (z, Some('k'))] => {
            Ok(Base::Quaternion(Quaternion::new(*w, *x, *y, *z)))
        }
        _ => Err(syntax(format!("`{s}` is not of the form r, r±xi or r±xi±yj±zk"))),
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn eat_digits(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// A float literal. Terms after the first must carry an explicit sign.
    fn signed_number(&mut self, sign_optional: bool) -> Result<f64> {
        let start = self.pos;
        match self.peek() {
            Some('+' | '-') => self.pos += 1,
            _ if sign_optional => {}
            _ => return Err(syntax(format!("expected a sign at `{}`", &self.s[start..]))),
        }
        let mut digits = self.eat_digits();
        if self.peek() == Some('.') {
            self.pos += 1;
            digits += self.eat_digits();
        }
        if digits == 0 {
            return Err(syntax(format!("expected a number at `{}`", &self.s[start..])));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.eat_digits() == 0 {
                return Err(syntax("malformed exponent"));
            }
        }
        self.s[start..self.pos]
            .parse::<f64>()
            .map_err(|e| syntax(format!("bad number `{}`: {e}", &self.s[start..self.pos])))
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::scalar::Dual;
    use proptest::prelude::*;

    fn parse(s: &str) -> DualScalar {
        s.parse().unwrap()
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse("1 + 2eps"), DualScalar::Real(Dual::new(1.0, 2.0)));
        assert_eq!(parse("(1) + (-2)eps"), DualScalar::Real(Dual::new(1.0, -2.0)));
        assert_eq!(parse("-1"), DualScalar::Real(Dual::new(-1.0, 0.0)));
        assert_eq!(parse("1e+5+2e-3eps"), DualScalar::Real(Dual::new(1e5, 2e-3)));
        assert_eq!(
            parse("(0.7071-0.7071i) + (0.7071+0.7071i)ε"),
            DualScalar::Complex(Dual::new(
                Complex64::new(0.7071, -0.7071),
                Complex64::new(0.7071, 0.7071)
            ))
        );
        assert_eq!(
            parse("(0+1i+0j+0k) + (0+0i+0j+1k)eps"),
            DualScalar::Quaternion(Dual::new(Quaternion::I, Quaternion::K))
        );
        // the wider ring wins
        assert_eq!(parse("(0+1i) + 1eps").ring(), Ring::Complex);
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "1+", "(1+2i", "1+2i+3k", "abc", "(1+2j)", "1..2", "(1++2i)"] {
            assert!(bad.parse::<DualScalar>().is_err(), "{bad:?} should fail");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = DualScalar> {
        let f = prop_oneof![any::<f64>().prop_filter("finite", |x| x.is_finite()), -10.0..10.0f64];
        (0usize..3, prop::collection::vec(f, 8)).prop_map(|(r, c)| {
            let ring = [Ring::Real, Ring::Complex, Ring::Quaternion][r];
            let k = ring.dim();
            DualScalar::from_components(ring, &c[..k], &c[4..4 + k]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(x in arb_scalar()) {
            let text = x.to_string();
            let back: DualScalar = text.parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
