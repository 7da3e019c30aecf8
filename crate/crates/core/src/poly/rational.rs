use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BigRational, PolyError};

/// Default isolation width, `2^-40`.
pub fn default_eps() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 40)
}

/// Parse `"p/q"`, an integer, or a plain decimal such as `"-0.001"` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let err = || PolyError::ParseRational(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(err());
    }
    let all: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| err())?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(all, den);
    Ok(if neg { -r } else { r })
}

/// Round `r` to `places` digits after the decimal point (half away from zero).
pub fn rational_to_decimal(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let rounded = round_half_up(&scaled);
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = places)
}

/// Round `r` to `digits` significant digits, rendered in plain decimal
/// notation (no exponent).
pub fn rational_to_significant(r: &BigRational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return rational_to_decimal(r, digits - 1);
    }
    // Find e with 10^e <= |r| < 10^(e+1).
    let abs = r.abs();
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let mut e: i64 = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::from(10u32).pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(10u32).pow((-k) as u32))
        }
    };
    while pow10(e) > abs {
        e -= 1;
    }
    while pow10(e) * &ten <= abs {
        e += 1;
    }
    let places = digits as i64 - 1 - e;
    if places >= 0 {
        let s = rational_to_decimal(r, places as usize);
        // rounding can carry into a new leading digit (9.99.. -> 10.0); drop one place
        let sig = s
            .chars()
            .filter(char::is_ascii_digit)
            .skip_while(|&c| c == '0')
            .count();
        if sig > digits && places > 0 {
            return rational_to_decimal(r, places as usize - 1);
        }
        s
    } else {
        let unit = pow10(-places);
        let q = round_half_up(&(abs / &unit)) * unit.to_integer();
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}{q}")
    }
}

fn round_half_up(nonneg: &BigRational) -> BigInt {
    let two = BigInt::from(2u32);
    let (q, rem) = nonneg.numer().div_rem(nonneg.denom());
    if rem * &two >= *nonneg.denom() {
        q + 1
    } else {
        q
    }
}

/// JSON form of a rational: `{"num": "...", "den": "..."}` with decimal
/// strings and a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalJson(pub BigRational);

#[derive(Serialize, Deserialize)]
struct RawRational {
    num: String,
    den: String,
}

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawRational {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawRational::deserialize(deserializer)?;
        let num: BigInt = raw.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = raw.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalJson(BigRational::new(num, den)))
    }
}

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalJson::deserialize(d).map(|r| r.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(rational_to_decimal(&q(-1, 1), 3), "-1.000");
        assert_eq!(rational_to_decimal(&q(2, 3), 4), "0.6667");
        assert_eq!(rational_to_decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(rational_to_decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(rational_to_decimal(&q(5, 2), 0), "3");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(
            rational_to_significant(&q(-1732050807568877, 1_000_000_000_000_000), 12),
            "-1.73205080757"
        );
        assert_eq!(rational_to_significant(&q(1, 3), 3), "0.333");
        assert_eq!(rational_to_significant(&q(-2, 1), 4), "-2.000");
        assert_eq!(rational_to_significant(&q(9999, 1000), 2), "10");
        assert_eq!(rational_to_significant(&q(123456, 1), 2), "120000");
        assert_eq!(rational_to_significant(&q(0, 1), 3), "0.00");
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&RationalJson(q(-6, 4))).unwrap();
        assert_eq!(s, r#"{"num":"-3","den":"2"}"#);
        let back: RationalJson = serde_json::from_str(r#"{"num":"4","den":"-8"}"#).unwrap();
        assert_eq!(back.0, q(-1, 2));
        assert!(serde_json::from_str::<RationalJson>(r#"{"num":"4","den":"0"}"#).is_err());
    }
}
