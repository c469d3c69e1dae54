//! Small helpers around `BigInt` and `BigRational`.

use alloc::format;
use alloc::string::{String, ToString};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `n/d` as a normalized rational.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as a rational.
pub fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Parses `"n"`, `"n/d"` or a plain decimal such as `"0.05"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip_digits = ip.trim().trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return Err(err());
        }
        let whole: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().map_err(|_| err())?
        };
        let frac: BigInt = fp.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let mag = BigRational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(qi(&n))
}

/// Parses a decimal integer, also accepting the power notation `2^k`,
/// `-2^k` and `b^k` used for astronomically large parameters.
pub fn parse_bigint(s: &str) -> Result<BigInt> {
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let (neg, b) = match b.trim().strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, b.trim()),
        };
        let base: BigInt = b.parse().map_err(|_| Error::Parse(format!("bad base in {s:?}")))?;
        let exp = parse_exponent(e)?;
        let v = base.pow(exp);
        return Ok(if neg { -v } else { v });
    }
    s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Exponents may be written as products such as `1196*23`.
fn parse_exponent(e: &str) -> Result<u32> {
    let mut acc: u64 = 1;
    for part in e.split('*') {
        let v: u64 = part
            .trim()
            .trim_matches(['(', ')'])
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
        acc = acc
            .checked_mul(v)
            .filter(|&x| x <= u32::MAX as u64)
            .ok_or_else(|| Error::Parse(format!("exponent too large {e:?}")))?;
    }
    Ok(acc as u32)
}

/// `"n/d"` with `"/1"` omitted for integers.
pub fn rat_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Largest integer `<= x`.
pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Smallest integer `>= x`.
pub fn ceil(x: &BigRational) -> BigInt {
    -(-x.numer()).div_floor(x.denom())
}

/// Number of bits of `|n|` (zero for zero).
pub fn bitlen(n: &BigInt) -> u64 {
    n.bits()
}

/// `x^e` for any integer exponent; `x` must be nonzero when `e < 0`.
pub fn pow_i(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `2^e` as a rational, for any integer `e`.
pub fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        qi(&(BigInt::one() << (e as usize)))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Binomial coefficient `C(n, k)` (zero when `k > n`).
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &BigRational) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `max(|p|, |q|)` of a reduced fraction: the height of a rational.
pub fn rational_height(x: &BigRational) -> BigInt {
    let p = x.numer().abs();
    let d = x.denom().abs();
    if p > d {
        p
    } else {
        d
    }
}

/// Decimal rendering of `x` truncated toward zero to `digits` fractional
/// digits. Intended for human-readable output only.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = floor(&(a * qi(&scale)));
    let (ip, fp) = scaled.div_rem(&scale);
    let mut out = String::new();
    if neg && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&ip.to_string());
    if digits > 0 {
        let f = fp.to_string();
        out.push('.');
        for _ in f.len()..digits {
            out.push('0');
        }
        out.push_str(&f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("7/4").unwrap(), q(7, 4));
        assert_eq!(parse_rational("0.05").unwrap(), q(1, 20));
        assert_eq!(parse_rational("-2.5").unwrap(), q(-5, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn parses_powers() {
        assert_eq!(parse_bigint("2^10").unwrap(), BigInt::from(1024));
        assert_eq!(parse_bigint("-2^3").unwrap(), BigInt::from(-8));
        assert_eq!(parse_bigint("2^2*3").unwrap(), BigInt::from(64));
        assert_eq!(parse_bigint("-17").unwrap(), BigInt::from(-17));
    }

    #[test]
    fn floor_and_ceil_round_toward_the_right_side() {
        assert_eq!(floor(&q(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil(&q(-7, 2)), BigInt::from(-3));
        assert_eq!(floor(&q(7, 2)), BigInt::from(3));
        assert_eq!(ceil(&q(7, 2)), BigInt::from(4));
        assert_eq!(ceil(&q(4, 1)), BigInt::from(4));
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 1..30u64 {
            for k in 1..n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
        assert_eq!(binom(3, 5), BigInt::zero());
    }

    #[test]
    fn decimal_rendering_truncates() {
        assert_eq!(to_decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&q(-7, 4), 3), "-1.750");
        assert_eq!(to_decimal(&q(5, 1), 0), "5");
    }

    #[test]
    fn height_of_rational() {
        assert_eq!(rational_height(&q(3, 2)), BigInt::from(3));
        assert_eq!(rational_height(&q(-5, 7)), BigInt::from(7));
        assert_eq!(rat_to_string(&q(6, 4)), "3/2");
    }
}
