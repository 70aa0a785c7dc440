//! Exact rational scalars.
//!
//! Everything in the crate is computed over the rationals with arbitrary
//! precision; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// The ground field.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
///
/// For negative `n` this is the coefficient appearing in the expansion of
/// `(1 + y)^n` in nonnegative powers of `y`.
pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 {
        return zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(-1)^n` as an i64 sign.
pub fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Render as `p` or `p/q`.
pub fn format(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse(text: &str) -> Result<Scalar, Error> {
    let t = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("not a rational number: `{t}`"),
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Integer value of an integral scalar.
pub fn to_i64(s: &Scalar) -> Option<i64> {
    if s.is_integer() {
        s.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(s: &Scalar) -> i64 {
    s.floor().numer().to_i64().expect("weight out of range")
}

pub fn ceil_i64(s: &Scalar) -> i64 {
    s.ceil().numer().to_i64().expect("weight out of range")
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(-1, 4), int(1));
        assert_eq!(binomial(-2, 3), int(-4));
        assert_eq!(binomial(-3, 2), int(6));
        assert_eq!(binomial(7, 0), int(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-4").unwrap(), int(-4));
        assert_eq!(format(&ratio(-6, 4)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
