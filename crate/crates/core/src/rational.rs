//! Exact rational scalars and their textual encoding.
//!
//! Values are `num_rational::BigRational`, which keeps every result in
//! canonical form (positive denominator, reduced by the gcd). The JSON
//! encoding is the canonical `"p/q"` string, or `"p"` for integers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.125"` / `"1e-3"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let integer = |t: &str| -> Option<BigInt> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
            .then(|| BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).ok())
            .flatten()
    };
    if let Some(num) = integer(p) {
        match q.map(integer) {
            None => return Ok(Rational::from_integer(num)),
            Some(Some(den)) => {
                if den.is_zero() {
                    return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
                }
                return Ok(reduced(num, den));
            }
            Some(None) => {}
        }
    }
    parse_decimal(s).ok_or_else(|| Error::InvalidInput(format!("not a rational: {s:?}")))
}

/// `num / den` in lowest terms; values that fit in 128 bits avoid the
/// big-integer gcd.
pub(crate) fn reduced(num: BigInt, den: BigInt) -> Rational {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (num.to_i128(), den.to_i128()) {
        if n != i128::MIN && d != i128::MIN && d != 0 {
            let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
            let (mut n, mut d) = (n / g, d / g);
            if d < 0 {
                n = -n;
                d = -d;
            }
            return Rational::new_raw(BigInt::from(n), BigInt::from(d));
        }
    }
    Rational::new(num, den)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        reduced(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Rounds a finite float to `digits` significant decimal digits and returns
/// the exact rational value of the rounded decimal.
pub fn from_f64_rounded(x: f64, digits: usize) -> Rational {
    assert!(x.is_finite(), "cannot round a non-finite float");
    if x == 0.0 {
        return zero();
    }
    let text = format!("{:.*e}", digits.saturating_sub(1), x);
    parse_decimal(&text).expect("float formatting yields a decimal")
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range: fall back on a scaled quotient
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_traits::ToPrimitive;
    let mut small: u128 = 1;
    let mut iter = values.into_iter();
    for r in iter.by_ref() {
        let Some(q) = r.denom().to_u128() else {
            return iter.fold(BigInt::from(small).lcm(r.denom()), |acc, r| acc.lcm(r.denom()));
        };
        let g = gcd_u128(small, q);
        match (small / g).checked_mul(q) {
            Some(l) => small = l,
            None => {
                let acc = BigInt::from(small).lcm(r.denom());
                return iter.fold(acc, |acc, r| acc.lcm(r.denom()));
            }
        }
    }
    BigInt::from(small)
}

/// `Σ a_i b_i`, summed over a common denominator with a single reduction.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let n = a.len().min(b.len());
    let la = common_denominator(&a[..n]);
    let lb = common_denominator(&b[..n]);
    let num: BigInt = a[..n]
        .iter()
        .zip(&b[..n])
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x.numer() * (&la / x.denom()) * y.numer() * (&lb / y.denom()))
        .sum();
    Rational::new(num, la * lb)
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub(crate) mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RawRational>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod serde_matrix {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(
        m: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let row: Vec<String> = row.iter().map(format).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<RawRational>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Accepts `"p/q"` strings as well as bare JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RawRational {
    Text(String),
    Int(i64),
}

impl RawRational {
    pub(crate) fn into_rational(self) -> Result<Rational> {
        match self {
            RawRational::Text(s) => parse(&s),
            RawRational::Int(n) => Ok(int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_after_arithmetic() {
        let r = frac(6, -4) + frac(1, 2);
        assert_eq!(r, int(-1));
        assert_eq!(format(&frac(6, -4)), "-3/2");
        assert_eq!(format(&int(3)), "3");
    }

    #[test]
    fn parse_accepts_fractions_integers_and_decimals() {
        assert_eq!(parse("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("-0.125").unwrap(), frac(-1, 8));
        assert_eq!(parse("1.5e2").unwrap(), int(150));
        assert_eq!(parse("2.5E-1").unwrap(), frac(1, 4));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn float_rounding_keeps_fifteen_digits() {
        let r = from_f64_rounded(std::f64::consts::PI, 15);
        assert_eq!(r, parse("3.14159265358979").unwrap());
        let r = from_f64_rounded(-1.0e-20, 15);
        assert_eq!(r, Rational::new(BigInt::from(-1), num_traits::pow(BigInt::from(10), 20)));
        assert_eq!(from_f64_rounded(0.0, 15), zero());
    }

    #[test]
    fn small_reduction_matches_bigint_reduction() {
        for (p, q) in [(6, -4), (0, 5), (-7, -21), (12, 1), (i64::MAX, 6)] {
            let a = reduced(BigInt::from(p), BigInt::from(q));
            let b = Rational::new(BigInt::from(p), BigInt::from(q));
            assert_eq!(a, b);
            assert_eq!(a.numer(), b.numer());
            assert_eq!(a.denom(), b.denom());
        }
        assert!(parse("1/-2").is_ok());
        assert!(parse("3/x").is_err());
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [frac(1, 4), frac(1, 6), int(2)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
