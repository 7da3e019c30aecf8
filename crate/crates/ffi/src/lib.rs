//! C ABI for `bethe-spectra`.
//!
//! Conventions:
//! * every fallible function returns a [`BsStatus`] and writes its result
//!   through an out-pointer only on `BS_OK`;
//! * objects are opaque handles released with their `*_free` function;
//! * strings returned through `char **` are owned by the caller and
//!   released with [`bs_string_free`];
//! * after a non-OK status, [`bs_last_error`] describes the failure. The
//!   message is per thread and lives until the next failing call there.
//!
//! Panics never cross the boundary; they surface as `BS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bethe_spectra::bethe::{char_poly_expanded, char_poly_factored, g_polynomials, DegreeSequence};
use bethe_spectra::cli::{self, verify, CliError};
use bethe_spectra::poly::{default_eps, parse_rational, BigRational, IntPoly};
use rand::SeedableRng;

/// Status codes shared by every entry point.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    BS_OK = 0,
    BS_NULL_POINTER = 1,
    BS_INVALID_UTF8 = 2,
    BS_INVALID_INPUT = 3,
    /// A checked property does not hold.
    BS_CHECK_FAILED = 4,
    /// The value does not fit the requested C type.
    BS_OUT_OF_RANGE = 5,
    BS_PANIC = 6,
}

/// A validated degree sequence `(d_1, ..., d_k)`.
pub struct BsDegrees {
    inner: DegreeSequence,
}

/// An integer polynomial with arbitrary-precision coefficients.
pub struct BsPoly {
    inner: IntPoly,
}

/// Smallest eigenvalue of `L(B(d))`: an isolating interval rounded
/// outward to doubles, a 12-digit approximation, and the multiplicity.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BsLambdaMin {
    pub lo: f64,
    pub hi: f64,
    pub approx: f64,
    pub multiplicity: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(BsStatus, String);

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let status = if e.code == cli::EXIT_FAILURE {
            BsStatus::BS_CHECK_FAILED
        } else {
            BsStatus::BS_INVALID_INPUT
        };
        Fail(status, e.message)
    }
}

fn invalid(msg: impl ToString) -> Fail {
    Fail(BsStatus::BS_INVALID_INPUT, msg.to_string())
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BsStatus::BS_OK,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            BsStatus::BS_PANIC
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(BsStatus::BS_NULL_POINTER, format!("{what} is NULL")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(BsStatus::BS_NULL_POINTER, format!("{what} is NULL")))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BsStatus::BS_NULL_POINTER, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BsStatus::BS_INVALID_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn read_eps(p: *const c_char) -> Result<BigRational, Fail> {
    if p.is_null() {
        return Ok(default_eps());
    }
    let e = parse_rational(read_str(p, "eps")?).map_err(invalid)?;
    if e <= BigRational::from_integer(0.into()) {
        return Err(invalid("eps must be positive"));
    }
    Ok(e)
}

fn give_string(s: String, out: &mut *mut c_char) -> Result<(), Fail> {
    *out = CString::new(s).map_err(invalid)?.into_raw();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last non-OK status on this thread (empty if none).
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a degree sequence from `k` entries.
///
/// # Safety
/// `d` must point to `k` readable `size_t`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_degrees_new(
    d: *const usize,
    k: usize,
    out: *mut *mut BsDegrees,
) -> BsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if d.is_null() && k > 0 {
            return Err(Fail(BsStatus::BS_NULL_POINTER, "d is NULL".into()));
        }
        let slice = if k == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(d, k)
        };
        let inner = DegreeSequence::new(slice.to_vec()).map_err(invalid)?;
        *out = Box::into_raw(Box::new(BsDegrees { inner }));
        Ok(())
    })
}

/// Parse a comma-separated list such as `"1,3,4"`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_degrees_parse(s: *const c_char, out: *mut *mut BsDegrees) -> BsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inner: DegreeSequence = read_str(s, "s")?.parse().map_err(invalid)?;
        *out = Box::into_raw(Box::new(BsDegrees { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from `bs_degrees_new`/`bs_degrees_parse`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_degrees_free(d: *mut BsDegrees) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of levels `k`, or 0 for NULL.
///
/// # Safety
/// `d` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_degrees_levels(d: *const BsDegrees) -> usize {
    d.as_ref().map_or(0, |d| d.inner.k())
}

/// Expanded characteristic polynomial of `L(B(d))`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_char_poly(d: *const BsDegrees, out: *mut *mut BsPoly) -> BsStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = out_ptr(out, "out")?;
        let inner = char_poly_expanded(&d.inner).map_err(invalid)?;
        *out = Box::into_raw(Box::new(BsPoly { inner }));
        Ok(())
    })
}

/// `g_i` for `0 <= i <= k`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_g_poly(
    d: *const BsDegrees,
    i: usize,
    out: *mut *mut BsPoly,
) -> BsStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = out_ptr(out, "out")?;
        let k = d.inner.k();
        if i > k {
            return Err(Fail(
                BsStatus::BS_OUT_OF_RANGE,
                format!("i = {i} exceeds k = {k}"),
            ));
        }
        let inner = g_polynomials(&d.inner).get(i).clone();
        *out = Box::into_raw(Box::new(BsPoly { inner }));
        Ok(())
    })
}

/// Factored characteristic polynomial as JSON:
/// `{"factors":[{"poly":{"coeffs":[...]},"exp":n},...],"divisor":"lambda+2","degrees":[...]}`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_char_poly_factored_json(
    d: *const BsDegrees,
    out: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = out_ptr(out, "out")?;
        let json = serde_json::to_string(&char_poly_factored(&d.inner)).map_err(invalid)?;
        give_string(json, out)
    })
}

/// # Safety
/// `p` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_free(p: *mut BsPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or -1 for the zero polynomial or NULL.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_degree(p: *const BsPoly) -> i64 {
    p.as_ref()
        .and_then(|p| p.inner.degree())
        .map_or(-1, |d| d as i64)
}

/// Coefficient of `λ^i` as an `int64_t`; `BS_OUT_OF_RANGE` if it does not fit.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_coeff_i64(p: *const BsPoly, i: usize, out: *mut i64) -> BsStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let out = out_ptr(out, "out")?;
        let c = p.inner.coeff(i);
        *out = i64::try_from(&c).map_err(|_| {
            Fail(
                BsStatus::BS_OUT_OF_RANGE,
                format!("coefficient {c} exceeds int64_t"),
            )
        })?;
        Ok(())
    })
}

/// Coefficient of `λ^i` as a decimal string.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_coeff_string(
    p: *const BsPoly,
    i: usize,
    out: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let out = out_ptr(out, "out")?;
        give_string(p.inner.coeff(i).to_string(), out)
    })
}

/// `{"coeffs": ["c_0", "c_1", ...]}`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_to_json(p: *const BsPoly, out: *mut *mut c_char) -> BsStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let out = out_ptr(out, "out")?;
        give_string(serde_json::to_string(&p.inner).map_err(invalid)?, out)
    })
}

/// Human-readable form such as `λ^3 - 3λ - 2`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_poly_to_string(p: *const BsPoly, out: *mut *mut c_char) -> BsStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let out = out_ptr(out, "out")?;
        give_string(p.inner.to_string(), out)
    })
}

/// Certified smallest eigenvalue of `L(B(d))`. `eps` is the isolation
/// width as `"p/q"` or a decimal; NULL selects `2^-40`.
///
/// # Safety
/// `d` must be a live handle, `eps` NULL or a NUL-terminated string, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_lambda_min(
    d: *const BsDegrees,
    eps: *const c_char,
    out: *mut BsLambdaMin,
) -> BsStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = out_ptr(out, "out")?;
        let eps = read_eps(eps)?;
        let r = cli::lambda_min(&d.inner, &eps)?;
        let approx: f64 = r.approx.parse().map_err(invalid)?;
        *out = BsLambdaMin {
            lo: round_down(&r.interval.lo),
            hi: round_up(&r.interval.hi),
            approx,
            multiplicity: r.multiplicity,
        };
        Ok(())
    })
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn round_down(r: &BigRational) -> f64 {
    let x = to_f64(r);
    if BigRational::from_float(x).is_some_and(|y| &y > r) {
        x.next_down()
    } else {
        x
    }
}

fn round_up(r: &BigRational) -> f64 {
    let x = to_f64(r);
    if BigRational::from_float(x).is_some_and(|y| &y < r) {
        x.next_up()
    } else {
        x
    }
}

/// The `lambda-min` report as JSON, with exact interval endpoints.
///
/// # Safety
/// As for [`bs_lambda_min`], with `out` a writable `char *`.
#[no_mangle]
pub unsafe extern "C" fn bs_lambda_min_json(
    d: *const BsDegrees,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = out_ptr(out, "out")?;
        let eps = read_eps(eps)?;
        let r = cli::lambda_min(&d.inner, &eps)?;
        give_string(serde_json::to_string(&r).map_err(invalid)?, out)
    })
}

/// Family scan over `d_k` in `dk_lo..=dk_hi` as CSV. `BS_CHECK_FAILED` if
/// `g_(k-1)` is not constant.
///
/// # Safety
/// `prefix` must be a NUL-terminated string such as `"1,3"`, `eps` NULL or
/// a NUL-terminated string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_family_csv(
    prefix: *const c_char,
    dk_lo: usize,
    dk_hi: usize,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let prefix = read_str(prefix, "prefix")?.parse().map_err(invalid)?;
        let range = cli::parse_dk_range(&format!("{dk_lo}..{dk_hi}"))?;
        let eps = read_eps(eps)?;
        let scan = cli::family(&prefix, range, &eps)?;
        give_string(cli::family_csv(&scan)?, out)
    })
}

/// Corona comparison for `K_n ⊗ K_q`, `K_n ⊗ K_(q-1)` and `L(B(1,q,n))`
/// as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_corona_check_json(
    n: usize,
    q: usize,
    out: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let r = cli::corona_check(n, q)?;
        give_string(serde_json::to_string(&r).map_err(invalid)?, out)
    })
}

/// Randomized invariant sweep. Returns `BS_CHECK_FAILED` with the failing
/// check and reproducer in [`bs_last_error`] if any check fails.
///
/// # Safety
/// `passed_checks` must be NULL or writable; it receives the total number
/// of passed checks.
#[no_mangle]
pub unsafe extern "C" fn bs_verify(
    seed: u64,
    trials: u64,
    max_size: usize,
    passed_checks: *mut u64,
) -> BsStatus {
    guard(|| {
        if max_size > cli::MAX_GRAPH_SIZE {
            return Err(invalid(format!(
                "max_size must be at most {}",
                cli::MAX_GRAPH_SIZE
            )));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = verify::run_verify(&mut rng, trials, max_size, verify::Faults::default());
        if let Some(n) = passed_checks.as_mut() {
            *n = r.checks.iter().map(|c| c.passed).sum();
        }
        match r.failure {
            None => Ok(()),
            Some(f) => Err(Fail(
                BsStatus::BS_CHECK_FAILED,
                format!("{}: {} (reproducer: {})", f.check, f.detail, f.reproducer),
            )),
        }
    })
}
