//! Exact rational scalars and coordinate vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of the base field, kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Coordinates of an element of a finite-dimensional space in its fixed basis.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"p/q"`, with an optional leading sign on the numerator.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    if den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn add_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

pub fn sub_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

pub fn scaled(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn negated(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// Bit size of numerator plus denominator; used to prefer small pivots.
pub(crate) fn height(x: &Scalar) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

/// Formats a vector as a linear combination of `e0, e1, …`.
pub fn format_vector(v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_scalar(&mag));
            out.push('*');
        }
        out.push_str(&format!("e{i}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions_and_integers() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-3/1").unwrap(), int(-3));
        assert_eq!(parse_scalar("+4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_scalar("-0/5").unwrap(), int(0));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn lowest_terms_after_parse() {
        let x = parse_scalar("-6/4").unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(format_scalar(&int(0)), "0");
    }

    #[test]
    fn vector_formatting() {
        assert_eq!(format_vector(&[int(-2), int(0)]), "-2*e0");
        assert_eq!(format_vector(&[int(1), ratio(-1, 2)]), "e0 - 1/2*e1");
        assert_eq!(format_vector(&zero_vector(3)), "0");
    }
}
