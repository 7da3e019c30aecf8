use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{rational_to_decimal, serde_rational};
use super::{BigRational, IntPoly, PolyError};

/// Integer `B` with every complex root `z` of `p` satisfying `|z| < B`
/// (Cauchy: `1 + max |a_i| / |a_n|`, rounded up).
pub fn cauchy_bound(p: &IntPoly) -> BigInt {
    let Some(lc) = p.leading_coeff() else {
        return BigInt::one();
    };
    let lc = lc.abs();
    let deg = p.degree().unwrap_or(0);
    let max = p.coeffs()[..deg]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero);
    BigInt::one() + Integer::div_ceil(&max, &lc)
}

/// A rational interval isolating one real root of a polynomial.
///
/// Either `lo < hi` and the root is the only one in `(lo, hi]`, or
/// `lo == hi` and the polynomial vanishes there exactly.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "serde_rational")]
    pub lo: BigRational,
    #[serde(with = "serde_rational")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn point(x: BigRational) -> Self {
        RootInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Whether `x` lies in the closed hull `[lo, hi]`.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether an `f64` value lies within `tol` of the closed hull.
    pub fn contains_f64(&self, x: f64, tol: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        lo - tol <= x && x <= hi + tol
    }

    /// The closed hulls intersect.
    pub fn overlaps(&self, other: &RootInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point this interval can stand for lies strictly below every
    /// point `other` can stand for.
    pub fn certainly_below(&self, other: &RootInterval) -> bool {
        if other.is_point() {
            self.hi < other.lo
        } else {
            self.hi <= other.lo
        }
    }

    pub fn decimal(&self, places: usize) -> String {
        rational_to_decimal(&self.midpoint(), places)
    }
}

impl fmt::Debug for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "({}, {}]", self.lo, self.hi)
        }
    }
}

/// Sturm chain of the squarefree part of a polynomial, with primitive
/// (content-stripped, sign-preserving) members.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
    bound: BigInt,
}

fn strip_positive_content(p: IntPoly) -> IntPoly {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p;
    }
    IntPoly::new(p.coeffs().iter().map(|a| a / &c).collect())
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let sqf = p.squarefree_part();
        let mut chain = vec![sqf.clone()];
        if sqf.degree() > Some(0) {
            chain.push(strip_positive_content(sqf.derivative()));
            loop {
                let n = chain.len();
                let r = chain[n - 2].signed_pseudo_rem(&chain[n - 1])?;
                if r.is_zero() {
                    break;
                }
                chain.push(strip_positive_content(-r));
            }
        }
        Ok(SturmChain {
            bound: cauchy_bound(&sqf),
            chain,
        })
    }

    /// The squarefree polynomial the chain is built on.
    pub fn base(&self) -> &IntPoly {
        &self.chain[0]
    }

    /// All real roots lie strictly inside `(-bound, bound)`.
    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_neg_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(IntPoly::sign_at_neg_infinity))
    }

    pub fn distinct_real_roots(&self) -> usize {
        let pos_inf = Self::variations(self.chain.iter().map(|p| {
            p.leading_coeff()
                .map_or(0, |c| if c.is_positive() { 1 } else { -1 })
        }));
        self.variations_at_neg_infinity() - pos_inf
    }

    /// Number of distinct real roots in `(-∞, x]`.
    pub fn count_at_most(&self, x: &BigRational) -> usize {
        self.variations_at_neg_infinity() - self.variations_at(x)
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_half_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Roots counted by a [`RootInterval`]: `(lo, hi]`, or the point itself.
    pub fn count_in(&self, iv: &RootInterval) -> usize {
        if iv.is_point() {
            usize::from(self.base().sign_at(&iv.lo) == 0)
        } else {
            self.count_half_open(&iv.lo, &iv.hi)
        }
    }

    /// Isolate the `index`-th smallest distinct real root (0-based) to
    /// width at most `eps`.
    pub fn isolate_nth(&self, index: usize, eps: &BigRational) -> Result<RootInterval, PolyError> {
        if !eps.is_positive() {
            return Err(PolyError::NonPositiveEps);
        }
        if index >= self.distinct_real_roots() {
            return Err(PolyError::NoRealRoot);
        }
        let b = BigRational::from_integer(self.bound.clone());
        let start = RootInterval {
            lo: -b.clone(),
            hi: b,
        };
        Ok(self.bisect(index, start, eps))
    }

    pub fn isolate_smallest(&self, eps: &BigRational) -> Result<RootInterval, PolyError> {
        self.isolate_nth(0, eps)
    }

    /// Shrink an isolating interval of this chain's polynomial to width at
    /// most `eps`.
    pub fn refine(&self, iv: &RootInterval, eps: &BigRational) -> Result<RootInterval, PolyError> {
        if !eps.is_positive() {
            return Err(PolyError::NonPositiveEps);
        }
        if iv.is_point() {
            return Ok(iv.clone());
        }
        let index = self.count_at_most(&iv.lo);
        Ok(self.bisect(index, iv.clone(), eps))
    }

    // Invariant: count_at_most(lo) <= index < count_at_most(hi).
    fn bisect(&self, index: usize, mut iv: RootInterval, eps: &BigRational) -> RootInterval {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut below_lo = self.count_at_most(&iv.lo);
        let mut below_hi = self.count_at_most(&iv.hi);
        debug_assert!(below_lo <= index && index < below_hi);
        while below_hi - below_lo > 1 || iv.width() > *eps {
            let mid = (&iv.lo + &iv.hi) / &two;
            let below_mid = self.count_at_most(&mid);
            if below_mid > index {
                if below_mid == index + 1 && self.base().sign_at(&mid) == 0 {
                    return RootInterval::point(mid);
                }
                iv.hi = mid;
                below_hi = below_mid;
            } else {
                iv.lo = mid;
                below_lo = below_mid;
            }
        }
        self.snap_to_integer(iv)
    }

    fn snap_to_integer(&self, iv: RootInterval) -> RootInterval {
        let first = iv.lo.floor().to_integer() + 1;
        let last = iv.hi.floor().to_integer();
        if &last - &first > BigInt::from(64) {
            return iv;
        }
        let mut z = first;
        while z <= last {
            if self.base().eval_int(&z).is_zero() {
                return RootInterval::point(BigRational::from_integer(z));
            }
            z += 1;
        }
        iv
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Both endpoints must be non-roots; callers nudge them otherwise.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    if lo > hi {
        return Err(PolyError::InvalidInterval);
    }
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for x in [lo, hi] {
        if p.sign_at(x) == 0 {
            return Err(PolyError::EndpointRoot(x.to_string()));
        }
    }
    Ok(SturmChain::new(p)?.count_half_open(lo, hi))
}

/// Certified isolating interval of width at most `eps` around the smallest
/// real root of `p`.
pub fn isolate_smallest_root(p: &IntPoly, eps: &BigRational) -> Result<RootInterval, PolyError> {
    SturmChain::new(p)?.isolate_smallest(eps)
}
