use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-2/7"` or `" 1/4 "` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Denominator as a machine integer. Fixed-width overflow is a hard error.
pub fn denom_u64(q: &Rational) -> u64 {
    q.denom().to_u64().expect("rational denominator exceeds u64 range")
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).expect("cyclotomic order overflows u64")
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn is_half_integer(q: &Rational) -> bool {
    (q * int(2)).is_integer()
}

pub(crate) fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

pub(crate) fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_vector(&[rat(1, 4), rat(-2, 7)]), "1/4,-2/7");
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac(&rat(9, 4)), rat(1, 4));
    }
}
