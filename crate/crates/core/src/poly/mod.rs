//! Exact univariate polynomials over the integers, rational helpers, and
//! Sturm-sequence root isolation.
//!
//! Every other module in the crate goes through [`IntPoly`] and
//! [`BigRational`] for arithmetic. Polynomials are dense, with coefficients
//! stored in ascending order of degree.

mod rational;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use num_rational::BigRational;
pub use rational::{
    default_eps, parse_rational, rational_to_decimal, rational_to_significant, RationalJson,
};
pub use sturm::{cauchy_bound, isolate_smallest_root, sturm_count, RootInterval, SturmChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{dividend} is not divisible by {divisor}")]
    NonDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointRoot(String),
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("invalid interval: lo > hi")]
    InvalidInterval,
    #[error("eps must be positive")]
    NonPositiveEps,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector and has no degree ([`IntPoly::degree`] returns `None`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `λ`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `λ + c`.
    pub fn x_plus(c: i64) -> Self {
        Self::from_i64s(&[c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_i64(&self, c: i64) -> IntPoly {
        self.scale(&BigInt::from(c))
    }

    /// Multiply by `λ^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `self^e`, with `p^0 = 1` for every `p`, the zero polynomial included.
    pub fn pow(&self, e: u64) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Horner on the homogenised form keeps everything integral until the end:
        // p(n/d) = (sum a_i n^i d^(deg-i)) / d^deg.
        let Some(deg) = self.degree() else {
            return BigRational::zero();
        };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        BigRational::new(acc, d.pow(deg as u32))
    }

    /// Sign of `p(x)`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        // denominator^deg is positive, so the homogenised numerator carries the sign
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign of `p` at `-∞` (0 for the zero polynomial).
    pub fn sign_at_neg_infinity(&self) -> i8 {
        match (self.leading_coeff(), self.degree()) {
            (Some(lc), Some(deg)) => {
                let s = if lc.is_positive() { 1 } else { -1 };
                if deg % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut content = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            content = -content;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Exact quotient `p / q` over the integers.
    pub fn exact_div(&self, q: &IntPoly) -> Result<IntPoly, PolyError> {
        let (quot, rem) = self.div_rem_exact_lc(q)?;
        if !rem.is_zero() {
            return Err(self.non_divisible(q));
        }
        Ok(quot)
    }

    /// Long division that requires the divisor's leading coefficient to
    /// divide every intermediate leading term.
    fn div_rem_exact_lc(&self, q: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        let (Some(dq), Some(lq)) = (q.degree(), q.leading_coeff()) else {
            return Err(PolyError::DivisionByZero);
        };
        let Some(dp) = self.degree() else {
            return Ok((IntPoly::zero(), IntPoly::zero()));
        };
        if dp < dq {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dp - dq + 1];
        for i in (0..=dp - dq).rev() {
            let lead = &rem[i + dq];
            if lead.is_zero() {
                continue;
            }
            let (t, r) = lead.div_rem(lq);
            if !r.is_zero() {
                return Err(self.non_divisible(q));
            }
            for (j, c) in q.coeffs.iter().enumerate() {
                rem[i + j] -= &t * c;
            }
            quot[i] = t;
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    fn non_divisible(&self, q: &IntPoly) -> PolyError {
        PolyError::NonDivisible {
            dividend: self.to_string(),
            divisor: q.to_string(),
        }
    }

    /// Pseudo-remainder scaled by `|lc(q)|^(deg p - deg q + 1)`, so that
    /// the result is a positive multiple of the true remainder.
    pub fn signed_pseudo_rem(&self, q: &IntPoly) -> Result<IntPoly, PolyError> {
        let (Some(dq), Some(lq)) = (q.degree(), q.leading_coeff()) else {
            return Err(PolyError::DivisionByZero);
        };
        let Some(dp) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if dp < dq {
            return Ok(self.clone());
        }
        let lq_abs = lq.abs();
        let sign = if lq.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut rem = self.coeffs.clone();
        for i in (0..=dp - dq).rev() {
            // rem <- |lq| * rem - sign * lead * x^i * q
            let lead = rem[i + dq].clone();
            for c in rem.iter_mut() {
                *c *= &lq_abs;
            }
            if lead.is_zero() {
                continue;
            }
            let t = &sign * &lead;
            for (j, c) in q.coeffs.iter().enumerate() {
                rem[i + j] -= &t * c;
            }
        }
        rem.truncate(dq);
        Ok(IntPoly::new(rem))
    }

    /// Primitive gcd with positive leading coefficient, by the primitive
    /// polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        gcd(self, other)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = gcd(self, &self.derivative());
        self.primitive_part()
            .exact_div(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Polynomial composition `self(q)`.
    pub fn compose(&self, q: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * q) + &IntPoly::constant(c.clone())
        })
    }
}

pub fn add(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p + q
}

pub fn mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p * q
}

pub fn pow(p: &IntPoly, e: u64) -> IntPoly {
    p.pow(e)
}

pub fn exact_div(p: &IntPoly, q: &IntPoly) -> Result<IntPoly, PolyError> {
    p.exact_div(q)
}

pub fn eval_rational(p: &IntPoly, x: &BigRational) -> BigRational {
    p.eval_rational(x)
}

pub fn derivative(p: &IntPoly) -> IntPoly {
    p.derivative()
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0)` is `0`.
pub fn gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.signed_pseudo_rem(&b).expect("b is nonzero");
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

fn zip_coeffs(p: &IntPoly, q: &IntPoly, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> IntPoly {
    let n = p.coeffs.len().max(q.coeffs.len());
    let zero = BigInt::zero();
    IntPoly::new(
        (0..n)
            .map(|i| {
                f(
                    p.coeffs.get(i).unwrap_or(&zero),
                    q.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        zip_coeffs(self, rhs, |a, b| a + b)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        zip_coeffs(self, rhs, |a, b| a - b)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct IntPolyJson {
    coeffs: Vec<String>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        IntPolyJson {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = IntPolyJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&p(&[1, 1]), &p(&[-1, 1])), p(&[0, 2]));
        assert_eq!(add(&p(&[3, 0, 5]), &IntPoly::zero()), p(&[3, 0, 5]));
        // cancellation strips the leading term
        let s = add(&p(&[-1, 1, 1]), &p(&[0, 0, -1]));
        assert_eq!(s, p(&[-1, 1]));
        assert_eq!(s.degree(), Some(1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mul(&p(&[1, 1]), &p(&[-1, 1])), p(&[-1, 0, 1]));
        let k3 = mul(&p(&[-2, 1]), &p(&[1, 1]).pow(2));
        assert_eq!(k3, p(&[-2, -3, 0, 1]));
        assert_eq!(mul(&p(&[4, -2, 7]), &IntPoly::one()), p(&[4, -2, 7]));
        assert!(mul(&p(&[1, 2]), &IntPoly::zero()).is_zero());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[5, 1, 9]).pow(0), IntPoly::one());
        assert_eq!(IntPoly::zero().pow(0), IntPoly::one());
        assert!(IntPoly::zero().pow(3).is_zero());
    }

    #[test]
    fn exact_div_examples() {
        // (λ+2)(λ+1)(λ-1) / (λ+2)
        let g3 = p(&[2, 1]) * p(&[1, 1]) * p(&[-1, 1]);
        assert_eq!(exact_div(&g3, &IntPoly::x_plus(2)).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(
            exact_div(&p(&[3, 1, 4]), &IntPoly::one()).unwrap(),
            p(&[3, 1, 4])
        );
        assert!(matches!(
            exact_div(&p(&[1, 0, 1]), &IntPoly::x_plus(2)),
            Err(PolyError::NonDivisible { .. })
        ));
        assert_eq!(
            exact_div(&p(&[1, 2]), &IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
        // divisible over Q but not over Z
        assert!(exact_div(&p(&[1, 1]), &p(&[2, 2])).is_err());
        assert!(exact_div(&IntPoly::zero(), &p(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn eval_examples() {
        let q = p(&[-1, 1, 1]);
        assert_eq!(
            eval_rational(&q, &BigRational::zero()),
            BigRational::from_integer((-1).into())
        );
        assert!(eval_rational(&p(&[1, 1]), &BigRational::from_integer((-1).into())).is_zero());
        let half = BigRational::new(1.into(), 2.into());
        // 1/4 + 1/2 - 1 = -1/4
        assert_eq!(
            eval_rational(&q, &half),
            BigRational::new((-1).into(), 4.into())
        );
        assert!(eval_rational(&IntPoly::zero(), &half).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&p(&[-1, 1, 1])), p(&[1, 2]));
        assert!(derivative(&p(&[7])).is_zero());
        assert_eq!(derivative(&p(&[-2, -3, 0, 1])), p(&[-3, 0, 3]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[-1, 1, 1]), &p(&[1, 2])), IntPoly::one());
        let a = p(&[1, 1]).pow(2);
        let b = p(&[1, 1]) * p(&[-1, 1]);
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
        // normalisation: primitive, positive leading coefficient
        assert_eq!(gcd(&p(&[0, -4]), &p(&[0, 6])), p(&[0, 1]));
        assert_eq!(gcd(&IntPoly::zero(), &p(&[-3, -6])), p(&[1, 2]));
    }

    #[test]
    fn squarefree_detection() {
        assert!(!p(&[1, 1]).pow(2).is_squarefree());
        assert!(p(&[-1, 1, 1]).is_squarefree());
        let sq = (p(&[1, 1]).pow(3) * p(&[-2, 1])).squarefree_part();
        assert_eq!(sq, p(&[1, 1]) * p(&[-2, 1]));
    }

    #[test]
    fn display_uses_lambda() {
        assert_eq!(p(&[-2, -3, 0, 1]).to_string(), "λ^3 - 3λ - 2");
        assert_eq!(p(&[0, -1]).to_string(), "-λ");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_uses_decimal_strings() {
        let big = p(&[1, 0, -3]).scale(&"123456789012345678901234567890".parse().unwrap());
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.starts_with(r#"{"coeffs":["123456789012345678901234567890","0","-"#));
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        let stripped: IntPoly = serde_json::from_str(r#"{"coeffs":["1","0"]}"#).unwrap();
        assert_eq!(stripped, IntPoly::one());
    }

    #[test]
    fn compose_matches_substitution() {
        // (λ^2 - 1)(λ + 2) = λ^2 + 4λ + 3
        assert_eq!(p(&[-1, 0, 1]).compose(&IntPoly::x_plus(2)), p(&[3, 4, 1]));
    }
}
