//! Degree sequences of generalized Bethe trees, the level multiplicities
//! `m_l` and `σ_l`, the three-term family `g_0, ..., g_k`, the factored
//! characteristic polynomial of `L(B(d_1, ..., d_k))`, and certified checks
//! of the smallest-eigenvalue claims built on it.
//!
//! With `d_1 = 1`, `d_i >= 2` for `1 < i < k` and `d_k >= 1`:
//!
//! ```text
//! g_0 = 1,  g_1 = λ + 1,
//! g_i = (λ + 2 - d_i) g_{i-1} - (d_i - 1) g_{i-2}     (2 <= i <= k-1)
//! g_k = (λ + 2 - d_k) g_{k-1} - d_k g_{k-2}
//!
//! χ(L(B(d))) = (1 / (λ + 2)) · Π_{l=1..k} g_l^{σ_l}
//! ```
//!
//! For `d_k >= 2` the smallest eigenvalue is the smallest zero of `g_{k-1}`
//! with multiplicity `d_k - 1`; `g_{k-1}` does not involve `d_k`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{BigRational, IntPoly, PolyError, RootInterval, SturmChain};

/// Refinement rounds before two roots are declared inseparable.
const MAX_REFINEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("need at least two levels (k >= 2), got k = {0}")]
    TooFewLevels(usize),
    #[error("a prefix needs at least one entry")]
    EmptyPrefix,
    #[error("d_1 must equal 1 (got {0})")]
    FirstNotOne(usize),
    #[error("d_{index} must be at least 2 (got {value})")]
    InnerTooSmall { index: usize, value: usize },
    #[error("d_k must be at least 1 (got 0)")]
    LastZero,
    #[error("tree too large: edge count overflows 64 bits")]
    TooLarge,
    #[error("cannot parse degree list {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BetheError {
    #[error(transparent)]
    InvalidDegrees(#[from] DegreeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("d_k = 1 is outside the d_k >= 2 hypothesis; isolate the expanded polynomial instead")]
    DkTooSmall,
    #[error("multiplicity check failed: {0}")]
    MultiplicityMismatch(String),
    #[error("interlacing violated: {0}")]
    InterlacingViolation(String),
    #[error("g_(k-1) differs across d_k: {0}")]
    ConstancyViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A validated degree sequence `(d_1, ..., d_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

fn check_prefix(d: &[usize]) -> Result<(), DegreeError> {
    if d.is_empty() {
        return Err(DegreeError::EmptyPrefix);
    }
    if d[0] != 1 {
        return Err(DegreeError::FirstNotOne(d[0]));
    }
    for (i, &v) in d.iter().enumerate().skip(1) {
        if v < 2 {
            return Err(DegreeError::InnerTooSmall {
                index: i + 1,
                value: v,
            });
        }
    }
    Ok(())
}

impl DegreeSequence {
    pub fn new(d: Vec<usize>) -> Result<Self, DegreeError> {
        if d.len() < 2 {
            return Err(DegreeError::TooFewLevels(d.len()));
        }
        check_prefix(&d[..d.len() - 1])?;
        if *d.last().unwrap() == 0 {
            return Err(DegreeError::LastZero);
        }
        let seq = DegreeSequence(d);
        seq.checked_multiplicities().ok_or(DegreeError::TooLarge)?;
        Ok(seq)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `d_i`, 1-based.
    pub fn d(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn dk(&self) -> usize {
        self.d(self.k())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn prefix(&self) -> DegreePrefix {
        DegreePrefix(self.0[..self.k() - 1].to_vec())
    }

    /// The same sequence with `d_i` replaced.
    pub fn with_entry(&self, i: usize, value: usize) -> Result<DegreeSequence, DegreeError> {
        let mut d = self.0.clone();
        d[i - 1] = value;
        DegreeSequence::new(d)
    }

    fn checked_multiplicities(&self) -> Option<Vec<u64>> {
        let k = self.k();
        let mut m = vec![0u64; k + 1];
        m[k] = 1;
        let mut prod = self.dk() as u64;
        m[k - 1] = prod;
        for l in (0..k - 1).rev() {
            prod = prod.checked_mul(self.d(l + 1) as u64 - 1)?;
            m[l] = prod;
        }
        m[1..k]
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))?;
        Some(m)
    }

    pub fn level_multiplicities(&self) -> LevelMultiplicities {
        level_multiplicities(self)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, d: &[usize]) -> fmt::Result {
    for (i, v) in d.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<usize>, DegreeError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| DegreeError::Parse(s.to_string()))
}

impl FromStr for DegreeSequence {
    type Err = DegreeError;
    fn from_str(s: &str) -> Result<Self, DegreeError> {
        DegreeSequence::new(parse_list(s)?)
    }
}

/// `(d_1, ..., d_{k-1})`: a degree sequence waiting for its root degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreePrefix(Vec<usize>);

impl DegreePrefix {
    pub fn new(d: Vec<usize>) -> Result<Self, DegreeError> {
        check_prefix(&d)?;
        Ok(DegreePrefix(d))
    }

    pub fn with_last(&self, dk: usize) -> Result<DegreeSequence, DegreeError> {
        let mut d = self.0.clone();
        d.push(dk);
        DegreeSequence::new(d)
    }

    /// `(d_1, ..., d_{k-1}, 1)`.
    pub fn capped(&self) -> DegreeSequence {
        self.with_last(1)
            .expect("a valid prefix capped with 1 is valid")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for DegreePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for DegreePrefix {
    type Err = DegreeError;
    fn from_str(s: &str) -> Result<Self, DegreeError> {
        DegreePrefix::new(parse_list(s)?)
    }
}

/// `m_0..m_k` and `σ_0..σ_k`.
///
/// `m_l = d_k Π_{i=l+1}^{k-1} (d_i - 1)` for `l < k`, `m_k = 1`;
/// `σ_l = m_l - m_{l+1}` for `l < k`, `σ_k = 1`. Since `d_1 = 1`,
/// `m_0 = 0` and `σ_0 = -m_1`; only `σ_1..σ_k` enter the product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelMultiplicities {
    pub m: Vec<u64>,
    pub sigma: Vec<i64>,
}

impl LevelMultiplicities {
    /// `Σ_{l=1}^{k-1} m_l`, the edge count of the tree and vertex count of
    /// its line graph.
    pub fn edge_count(&self) -> u64 {
        let k = self.m.len() - 1;
        self.m[1..k].iter().sum()
    }

    /// `σ_l` for `l >= 1`, which is never negative.
    pub fn exponent(&self, l: usize) -> u64 {
        debug_assert!(l >= 1);
        self.sigma[l] as u64
    }
}

pub fn level_multiplicities(d: &DegreeSequence) -> LevelMultiplicities {
    let k = d.k();
    let m = d
        .checked_multiplicities()
        .expect("validated at construction");
    let mut sigma: Vec<i64> = (0..k).map(|l| m[l] as i64 - m[l + 1] as i64).collect();
    sigma.push(1);
    LevelMultiplicities { m, sigma }
}

/// `g_0, ..., g_k` for a degree sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GPolySequence {
    pub g: Vec<IntPoly>,
}

impl GPolySequence {
    pub fn get(&self, i: usize) -> &IntPoly {
        &self.g[i]
    }

    pub fn k(&self) -> usize {
        self.g.len() - 1
    }
}

pub fn g_polynomials(d: &DegreeSequence) -> GPolySequence {
    let k = d.k();
    let mut g = vec![IntPoly::one(), IntPoly::x_plus(1)];
    for i in 2..=k {
        let di = d.d(i) as i64;
        // the last step uses d_k instead of d_k - 1, even when k = 2
        let back = if i == k { di } else { di - 1 };
        let next = &(&IntPoly::x_plus(2 - di) * &g[i - 1]) - &g[i - 2].scale_i64(back);
        g.push(next);
    }
    GPolySequence { g }
}

/// `Π (g_l)^{σ_l} / (λ + 2)`, kept factored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredCharPoly {
    pub degrees: DegreeSequence,
    /// `(g_l, σ_l)` for `l = 1..k`; zero exponents are kept.
    pub factors: Vec<(IntPoly, u64)>,
}

impl FactoredCharPoly {
    pub fn divisor() -> IntPoly {
        IntPoly::x_plus(2)
    }

    pub fn numerator(&self) -> IntPoly {
        self.factors
            .iter()
            .filter(|(_, e)| *e > 0)
            .fold(IntPoly::one(), |acc, (g, e)| &acc * &g.pow(*e))
    }

    pub fn expand(&self) -> Result<IntPoly, PolyError> {
        self.numerator().exact_div(&Self::divisor())
    }

    /// `Σ σ_l · l - 1`.
    pub fn expanded_degree(&self) -> u64 {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, (_, e))| (i as u64 + 1) * e)
            .sum::<u64>()
            - 1
    }
}

impl Serialize for FactoredCharPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            poly: &'a IntPoly,
            exp: u64,
        }
        #[derive(Serialize)]
        struct Raw<'a> {
            factors: Vec<Factor<'a>>,
            divisor: &'static str,
            degrees: &'a DegreeSequence,
        }
        Raw {
            factors: self
                .factors
                .iter()
                .map(|(poly, exp)| Factor { poly, exp: *exp })
                .collect(),
            divisor: "lambda+2",
            degrees: &self.degrees,
        }
        .serialize(serializer)
    }
}

pub fn char_poly_factored(d: &DegreeSequence) -> FactoredCharPoly {
    let g = g_polynomials(d);
    let lm = level_multiplicities(d);
    let factors = (1..=d.k())
        .map(|l| (g.g[l].clone(), lm.exponent(l)))
        .collect();
    FactoredCharPoly {
        degrees: d.clone(),
        factors,
    }
}

/// Characteristic polynomial of `L(B(d))`, expanded.
pub fn char_poly_expanded(d: &DegreeSequence) -> Result<IntPoly, BetheError> {
    Ok(char_poly_factored(d).expand()?)
}

/// `g_k + d_k (g_{k-1} + g_{k-2})`, which equals `(λ + 2) g_{k-1}`.
///
/// For `k = 2` the formula reads `g_2 + d_2 (g_1 + g_0)` with `g_0 = 1`;
/// no special case is needed.
pub fn critical_factor(d: &DegreeSequence) -> IntPoly {
    let g = g_polynomials(d);
    let k = d.k();
    &g.g[k] + &(&g.g[k - 1] + &g.g[k - 2]).scale_i64(d.dk() as i64)
}

/// [`critical_factor`] divided by `λ + 2`: the factor of `χ_H + χ_{H-e}`
/// that carries the smallest eigenvalue.
pub fn critical_factor_reduced(d: &DegreeSequence) -> Result<IntPoly, BetheError> {
    Ok(critical_factor(d).exact_div(&IntPoly::x_plus(2))?)
}

fn require_dk_at_least_two(d: &DegreeSequence) -> Result<(), BetheError> {
    if d.dk() < 2 {
        return Err(BetheError::DkTooSmall);
    }
    Ok(())
}

/// Isolating interval for `λ_min(L(B(d)))`, the smallest zero of `g_{k-1}`.
pub fn smallest_eigenvalue(
    d: &DegreeSequence,
    eps: &BigRational,
) -> Result<RootInterval, BetheError> {
    require_dk_at_least_two(d)?;
    let g = g_polynomials(d);
    Ok(SturmChain::new(g.get(d.k() - 1))?.isolate_smallest(eps)?)
}

/// Smallest root of the expanded characteristic polynomial and its
/// multiplicity. Works for every `d_k`, including 1.
pub fn smallest_eigenvalue_from_expansion(
    d: &DegreeSequence,
    eps: &BigRational,
) -> Result<(RootInterval, u64), BetheError> {
    let chi = char_poly_expanded(d)?;
    let iv = SturmChain::new(&chi)?.isolate_smallest(eps)?;
    let mult = root_multiplicity(&chi, &iv)?;
    Ok((iv, mult))
}

/// Multiplicity of the root of `p` isolated by `iv`, by walking
/// `p, gcd(p, p'), gcd(p', p''), ...`.
pub fn root_multiplicity(p: &IntPoly, iv: &RootInterval) -> Result<u64, PolyError> {
    let mut current = p.clone();
    let mut mult = 0;
    while current.degree() > Some(0) && SturmChain::new(&current)?.count_in(iv) == 1 {
        mult += 1;
        current = current.gcd(&current.derivative());
    }
    Ok(mult)
}

/// Refine `iv` (an isolating interval of `target`'s base polynomial) until
/// `other` has no root in it. `None` if the isolated root is a root of
/// `other`.
fn separate_from(
    target: &SturmChain,
    iv: &RootInterval,
    other: &IntPoly,
) -> Result<Option<RootInterval>, PolyError> {
    let common = target.base().gcd(other);
    if common.degree() > Some(0) && SturmChain::new(&common)?.count_in(iv) > 0 {
        return Ok(None);
    }
    let other_chain = SturmChain::new(other)?;
    let mut iv = iv.clone();
    while other_chain.count_in(&iv) > 0 {
        let half = iv.width() / BigRational::from_integer(2.into());
        iv = target.refine(&iv, &half)?;
    }
    Ok(Some(iv))
}

/// Returns `d_k - 1` after certifying that it is the multiplicity of the
/// smallest eigenvalue: `σ_{k-1} = d_k - 1`, and the smallest zero of
/// `g_{k-1}` is a zero of neither `g_k / (λ + 2)` nor `g_1, ..., g_{k-2}`.
pub fn smallest_eigenvalue_multiplicity(d: &DegreeSequence) -> Result<u64, BetheError> {
    require_dk_at_least_two(d)?;
    let k = d.k();
    let lm = level_multiplicities(d);
    let expected = d.dk() as u64 - 1;
    if lm.sigma[k - 1] != expected as i64 {
        return Err(BetheError::MultiplicityMismatch(format!(
            "σ_(k-1) = {} but d_k - 1 = {expected}",
            lm.sigma[k - 1]
        )));
    }
    let g = g_polynomials(d);
    let chain = SturmChain::new(g.get(k - 1))?;
    let iv = chain.isolate_smallest(&crate::poly::default_eps())?;
    let gk_reduced = g.get(k).exact_div(&IntPoly::x_plus(2))?;
    let others = std::iter::once(("g_k/(λ+2)".to_string(), &gk_reduced))
        .chain((1..k - 1).map(|l| (format!("g_{l}"), g.get(l))));
    for (name, f) in others {
        if f.degree() == Some(0) {
            continue;
        }
        if separate_from(&chain, &iv, f)?.is_none() {
            return Err(BetheError::MultiplicityMismatch(format!(
                "smallest zero of g_(k-1) is also a zero of {name}"
            )));
        }
    }
    Ok(expected)
}

/// Isolating intervals for `γ_1 > γ_2 > ... > γ_k = -2` (smallest zeros
/// of `g_1..g_k`) and for `β`, the second smallest zero of `g_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interlacing {
    /// `gammas[i - 1]` isolates `γ_i`.
    pub gammas: Vec<RootInterval>,
    pub beta: RootInterval,
}

/// Refine two isolating intervals until `lower` is certainly below `upper`.
fn order_pair(
    lower_chain: &SturmChain,
    lower: &mut RootInterval,
    upper_chain: &SturmChain,
    upper: &mut RootInterval,
) -> Result<bool, PolyError> {
    for _ in 0..MAX_REFINEMENTS {
        if lower.certainly_below(upper) {
            return Ok(true);
        }
        if upper.hi <= lower.lo && !upper.is_point() && !lower.is_point() {
            return Ok(false);
        }
        let half = |iv: &RootInterval| iv.width() / BigRational::from_integer(2.into());
        if !lower.is_point() {
            *lower = lower_chain.refine(lower, &half(lower))?;
        }
        if !upper.is_point() {
            *upper = upper_chain.refine(upper, &half(upper))?;
        }
    }
    Ok(lower.certainly_below(upper))
}

pub fn verify_interlacing(
    d: &DegreeSequence,
    eps: &BigRational,
) -> Result<Interlacing, BetheError> {
    let k = d.k();
    let g = g_polynomials(d);
    let minus_two = BigRational::from_integer((-2).into());
    let gk_chain = SturmChain::new(g.get(k))?;
    if g.get(k).sign_at(&minus_two) != 0 {
        return Err(BetheError::InterlacingViolation("g_k(-2) != 0".into()));
    }
    if gk_chain.count_at_most(&minus_two) != 1 {
        return Err(BetheError::InterlacingViolation(
            "g_k has a zero below -2".into(),
        ));
    }

    let mut chains = Vec::with_capacity(k);
    let mut gammas = Vec::with_capacity(k);
    for i in 1..k {
        let chain = SturmChain::new(g.get(i))?;
        gammas.push(chain.isolate_smallest(eps)?);
        chains.push(chain);
    }
    chains.push(gk_chain.clone());
    gammas.push(RootInterval::point(minus_two));

    // γ_{i+1} < γ_i, walking down from the top so refinements propagate.
    for i in (0..k - 1).rev() {
        let (head, tail) = gammas.split_at_mut(i + 1);
        if !order_pair(&chains[i + 1], &mut tail[0], &chains[i], &mut head[i])? {
            return Err(BetheError::InterlacingViolation(format!(
                "cannot separate γ_{} from γ_{}",
                i + 2,
                i + 1
            )));
        }
    }
    // refinement of γ_i may have happened after its lower neighbour was checked
    for i in 0..k - 1 {
        if !gammas[i + 1].certainly_below(&gammas[i]) {
            return Err(BetheError::InterlacingViolation(format!(
                "γ_{} not below γ_{}",
                i + 2,
                i + 1
            )));
        }
    }

    let mut beta = gk_chain.isolate_nth(1, eps)?;
    let mut gamma_km1 = gammas[k - 2].clone();
    if !order_pair(&chains[k - 2], &mut gamma_km1, &gk_chain, &mut beta)? {
        return Err(BetheError::InterlacingViolation("β <= γ_(k-1)".into()));
    }
    Ok(Interlacing { gammas, beta })
}

/// Every `g_i`, `1 <= i <= k`, has only simple zeros.
pub fn verify_simple_zeros(d: &DegreeSequence) -> bool {
    g_polynomials(d).g[1..].iter().all(IntPoly::is_squarefree)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub dk: usize,
    pub lambda_min: RootInterval,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyScan {
    pub prefix: DegreePrefix,
    /// The shared `g_{k-1}`.
    pub g_km1: IntPoly,
    pub rows: Vec<FamilyRow>,
}

/// `λ_min(L(B(prefix, d_k)))` for each `d_k` in the range, asserting that
/// `g_{k-1}` is literally the same polynomial on every row.
pub fn family_scan(
    prefix: &DegreePrefix,
    dk_range: RangeInclusive<usize>,
    eps: &BigRational,
) -> Result<FamilyScan, BetheError> {
    let mut g_km1: Option<IntPoly> = None;
    let mut rows = Vec::new();
    for dk in dk_range {
        let d = prefix.with_last(dk)?;
        require_dk_at_least_two(&d)?;
        let g = g_polynomials(&d);
        let current = g.get(d.k() - 1);
        match &g_km1 {
            None => g_km1 = Some(current.clone()),
            Some(first) if first != current => {
                return Err(BetheError::ConstancyViolation(format!(
                    "d_k = {dk}: {current} vs {first}"
                )))
            }
            _ => {}
        }
        rows.push(FamilyRow {
            dk,
            lambda_min: smallest_eigenvalue(&d, eps)?,
            multiplicity: smallest_eigenvalue_multiplicity(&d)?,
        });
    }
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if !a.lambda_min.overlaps(&b.lambda_min) {
                return Err(BetheError::ConstancyViolation(format!(
                    "intervals for d_k = {} and {} are disjoint",
                    a.dk, b.dk
                )));
            }
        }
    }
    let g_km1 = g_km1.ok_or_else(|| BetheError::Precondition("empty d_k range".into()))?;
    Ok(FamilyScan {
        prefix: prefix.clone(),
        g_km1,
        rows,
    })
}

/// Whether changing `d_{k-1}` to `alt_dk1` moves the smallest eigenvalue:
/// `true` once the two isolating intervals are disjoint, `false` if the
/// two `g_{k-1}` share their smallest zero or no separation is reached.
pub fn verify_dk1_dependence(
    d: &DegreeSequence,
    alt_dk1: usize,
    eps: &BigRational,
) -> Result<bool, BetheError> {
    let k = d.k();
    if k < 3 {
        return Err(BetheError::Precondition("need k >= 3".into()));
    }
    require_dk_at_least_two(d)?;
    if alt_dk1 < 2 || alt_dk1 == d.d(k - 1) {
        return Err(BetheError::Precondition(format!(
            "alternative d_(k-1) = {alt_dk1} must be >= 2 and differ from {}",
            d.d(k - 1)
        )));
    }
    let alt = d.with_entry(k - 1, alt_dk1)?;
    let p1 = g_polynomials(d).g[k - 1].clone();
    let p2 = g_polynomials(&alt).g[k - 1].clone();
    let (c1, c2) = (SturmChain::new(&p1)?, SturmChain::new(&p2)?);
    let mut eps = eps.clone();
    let mut iv1 = c1.isolate_smallest(&eps)?;
    let mut iv2 = c2.isolate_smallest(&eps)?;
    let common = p1.gcd(&p2);
    let common_chain = (common.degree() > Some(0))
        .then(|| SturmChain::new(&common))
        .transpose()?;
    for _ in 0..MAX_REFINEMENTS {
        if !iv1.overlaps(&iv2) {
            return Ok(true);
        }
        if let Some(cc) = &common_chain {
            if cc.count_in(&iv1) > 0 && cc.count_in(&iv2) > 0 {
                return Ok(false);
            }
        }
        eps /= BigRational::from_integer(2.into());
        iv1 = c1.refine(&iv1, &eps)?;
        iv2 = c2.refine(&iv2, &eps)?;
    }
    Ok(!iv1.overlaps(&iv2))
}

/// `λ_min` of a sequence whether or not `d_k >= 2`: the `g_{k-1}` route when
/// it applies, otherwise root isolation on the expanded polynomial.
pub fn lambda_min_any(
    d: &DegreeSequence,
    eps: &BigRational,
) -> Result<(RootInterval, u64), BetheError> {
    if d.dk() >= 2 {
        Ok((
            smallest_eigenvalue(d, eps)?,
            smallest_eigenvalue_multiplicity(d)?,
        ))
    } else {
        smallest_eigenvalue_from_expansion(d, eps)
    }
}

impl FamilyScan {
    /// Every interval contains the same point, so the spread is zero.
    pub fn is_constant(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].lambda_min == w[1].lambda_min)
    }
}
