//! Exact rational scalars and the handful of integer helpers every other
//! module leans on (factorials, binomials, signed powers).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`; the sign, if any, sits on the numerator.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(input.to_string());
    let s = input.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = numer.strip_prefix('-').unwrap_or(numer);
    if !digits(unsigned) {
        return Err(bad());
    }
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Short form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_short(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Always `"p/q"`, including `"0/1"`.
pub fn format_pq(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// `base^exp` for any integer exponent. `0^0 = 1`; a negative power of zero
/// panics, since no caller can produce one legitimately.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let magnitude = base.clone().pow(exp.unsigned_abs() as u32);
    if exp > 0 {
        magnitude
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        magnitude.recip()
    }
}

/// `(-1)^n` as a rational.
pub fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_short(&ratio(4, 2)), "2");
        assert_eq!(format_short(&ratio(-2, 6)), "-1/3");
        assert_eq!(format_pq(&int(0)), "0/1");
        for bad in ["", "1/0", "1/-2", "a", "1.5", "--1", "1/", "/2", "+1"] {
            assert!(parse_rational(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn binomials_and_powers() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(pow_i(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow_i(&int(0), 0), int(1));
    }
}
