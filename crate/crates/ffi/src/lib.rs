//! C ABI over `s3knots`.
//!
//! Every fallible call returns an [`S3Status`] and writes its result through
//! an out-pointer. Objects are opaque handles that the caller releases with
//! the matching `*_free`. On failure the message is kept per thread and can
//! be copied out with [`s3k_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use s3knots::braid::{alexander_from_braid, transverse_invariants, BraidError, BraidWord, LaurentPolynomial};
use s3knots::cabling::{cable_braid, CablingError};
use s3knots::kirby::{blow_down, blow_up, det, handle_slide, signature, FramedLink, KirbyError};
use s3knots::knotalg::{geodesic_length, KnotAlgError};
use s3knots::lorenz::{template_braid, LorenzError, SymbolWord};
use s3knots::s3flow::{
    check_reeb_conditions, detect_closed_orbit, integrate_flow, FlowError, FlowField, PointR4, TrajectoryS3,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S3Status {
    Ok = 0,
    NullPointer = 1,
    /// Malformed input: bad UTF-8, JSON, or out-of-range arguments.
    Parameter = 2,
    /// Valid input outside the domain of the operation.
    Domain = 3,
    Internal = 4,
    Panic = 5,
}

pub struct S3Braid(BraidWord);
pub struct S3Polynomial(LaurentPolynomial);
pub struct S3FramedLink(FramedLink);
pub struct S3Trajectory(TrajectoryS3);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct S3TransverseInvariants {
    pub exponent_sum: i64,
    pub strands: i64,
    pub self_linking: i64,
    pub writhe: i64,
    pub components: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct S3ReebCheck {
    pub alpha: f64,
    pub defect: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(S3Status, String);

type Outcome = Result<(), Failure>;

fn fail(status: S3Status, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        let s = match e {
            BraidError::Parameter(_) => S3Status::Parameter,
            BraidError::Domain(_) => S3Status::Domain,
            BraidError::Internal(_) => S3Status::Internal,
        };
        fail(s, e.to_string())
    }
}

impl From<CablingError> for Failure {
    fn from(e: CablingError) -> Self {
        match e {
            CablingError::Braid(b) => b.into(),
            CablingError::Parameter(_) => fail(S3Status::Parameter, e.to_string()),
            CablingError::Domain(_) => fail(S3Status::Domain, e.to_string()),
        }
    }
}

impl From<KirbyError> for Failure {
    fn from(e: KirbyError) -> Self {
        let s = match e {
            KirbyError::Parameter(_) => S3Status::Parameter,
            KirbyError::Invalid(_) | KirbyError::Framing { .. } => S3Status::Domain,
        };
        fail(s, e.to_string())
    }
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        let s = match e {
            FlowError::OffSphere(_) => S3Status::Domain,
            FlowError::Parameter(_) => S3Status::Parameter,
        };
        fail(s, e.to_string())
    }
}

impl From<LorenzError> for Failure {
    fn from(e: LorenzError) -> Self {
        fail(S3Status::Parameter, e.to_string())
    }
}

impl From<KnotAlgError> for Failure {
    fn from(e: KnotAlgError) -> Self {
        let s = match e {
            KnotAlgError::Parameter(_) | KnotAlgError::Parse(_) => S3Status::Parameter,
            KnotAlgError::Domain(_) | KnotAlgError::Overflow(_) => S3Status::Domain,
        };
        fail(s, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("NUL bytes replaced"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Outcome) -> S3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            S3Status::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("panic: {msg}")));
            S3Status::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(S3Status::NullPointer, format!("{name} is null")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(S3Status::NullPointer, format!("{name} is null")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(S3Status::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(S3Status::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(S3Status::Parameter, format!("{name} is not UTF-8")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Copies `src` into `buf` (at most `cap` items) and returns `src.len()`.
unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, cap: usize) -> usize {
    if !buf.is_null() {
        let n = src.len().min(cap);
        ptr::copy_nonoverlapping(src.as_ptr(), buf, n);
    }
    src.len()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn s3k_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message, NUL-terminated and
/// truncated to `cap` bytes. Returns the full message length without the
/// terminator, or 0 when the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn s3k_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => {
            if !buf.is_null() && cap > 0 {
                *buf = 0;
            }
            0
        }
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && cap > 0 {
                let n = bytes.len().min(cap - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn s3k_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Braid on `strands` strands from signed generator indices (`k` for
/// `σ_k`, `-k` for its inverse).
///
/// # Safety
/// `letters` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_new(
    strands: u32,
    letters: *const i64,
    len: usize,
    out_braid: *mut *mut S3Braid,
) -> S3Status {
    guard(|| {
        let out_braid = out(out_braid, "out_braid")?;
        let b = BraidWord::from_signed(strands, slice(letters, len, "letters")?)?;
        *out_braid = boxed(S3Braid(b));
        Ok(())
    })
}

/// Braid from its JSON wire form `{"n": strands, "w": [letters]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_braid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_from_json(json: *const c_char, out_braid: *mut *mut S3Braid) -> S3Status {
    guard(|| {
        let out_braid = out(out_braid, "out_braid")?;
        let b: BraidWord =
            serde_json::from_str(text(json, "json")?).map_err(|e| fail(S3Status::Parameter, e.to_string()))?;
        *out_braid = boxed(S3Braid(b));
        Ok(())
    })
}

/// JSON wire form of `braid`; release with [`s3k_string_free`].
///
/// # Safety
/// `braid` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_to_json(braid: *const S3Braid, out_json: *mut *mut c_char) -> S3Status {
    guard(|| {
        let out_json = out(out_json, "out_json")?;
        let b = borrow(braid, "braid")?;
        let s = serde_json::to_string(&b.0).map_err(|e| fail(S3Status::Internal, e.to_string()))?;
        *out_json = CString::new(s).map_err(|e| fail(S3Status::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `braid` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_free(braid: *mut S3Braid) {
    release(braid);
}

/// Number of strands, or 0 for a null handle.
///
/// # Safety
/// `braid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_strands(braid: *const S3Braid) -> u32 {
    braid.as_ref().map_or(0, |b| b.0.strands())
}

/// Copies the signed letters into `buf` (at most `cap`) and returns the
/// word length.
///
/// # Safety
/// `braid` must be null or a live handle; `buf` must be null or valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_letters(braid: *const S3Braid, buf: *mut i64, cap: usize) -> usize {
    match braid.as_ref() {
        Some(b) => copy_out(&b.0.to_signed(), buf, cap),
        None => 0,
    }
}

/// # Safety
/// `braid` must be a live handle; `out_inv` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_invariants(braid: *const S3Braid, out_inv: *mut S3TransverseInvariants) -> S3Status {
    guard(|| {
        let out_inv = out(out_inv, "out_inv")?;
        let t = transverse_invariants(&borrow(braid, "braid")?.0);
        *out_inv = S3TransverseInvariants {
            exponent_sum: t.e,
            strands: t.n,
            self_linking: t.beta,
            writhe: t.w,
            components: t.components as u64,
        };
        Ok(())
    })
}

/// Alexander polynomial of the closure, which must be a knot.
///
/// # Safety
/// `braid` must be a live handle; `out_poly` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_braid_alexander(braid: *const S3Braid, out_poly: *mut *mut S3Polynomial) -> S3Status {
    guard(|| {
        let out_poly = out(out_poly, "out_poly")?;
        let p = alexander_from_braid(&borrow(braid, "braid")?.0)?;
        *out_poly = boxed(S3Polynomial(p));
        Ok(())
    })
}

/// `(p, q)` cable of the knot closing `base`, in the Seifert framing.
///
/// # Safety
/// `base` must be a live handle; `out_braid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_cable_braid(
    base: *const S3Braid,
    p: i64,
    q: i64,
    out_braid: *mut *mut S3Braid,
) -> S3Status {
    guard(|| {
        let out_braid = out(out_braid, "out_braid")?;
        let b = cable_braid(&borrow(base, "base")?.0, p, q)?;
        *out_braid = boxed(S3Braid(b));
        Ok(())
    })
}

/// Template braid of a periodic Lorenz orbit given as an `L`/`R` word.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out_braid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_lorenz_braid(word: *const c_char, out_braid: *mut *mut S3Braid) -> S3Status {
    guard(|| {
        let out_braid = out(out_braid, "out_braid")?;
        let w: SymbolWord = text(word, "word")?.parse()?;
        *out_braid = boxed(S3Braid(template_braid(&w)?.braid));
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn s3k_polynomial_free(poly: *mut S3Polynomial) {
    release(poly);
}

/// Exponent of the first stored coefficient.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn s3k_polynomial_lowest(poly: *const S3Polynomial) -> i64 {
    poly.as_ref().map_or(0, |p| p.0.lowest())
}

/// Copies coefficients in ascending exponent order and returns their count.
///
/// # Safety
/// `poly` must be null or a live handle; `buf` must be null or valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn s3k_polynomial_coeffs(poly: *const S3Polynomial, buf: *mut i64, cap: usize) -> usize {
    match poly.as_ref() {
        Some(p) => copy_out(p.0.coeffs(), buf, cap),
        None => 0,
    }
}

/// Framed link from a row-major symmetric `n x n` linking matrix.
///
/// # Safety
/// `matrix` must be valid for `n * n` reads; `out_link` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_new(n: usize, matrix: *const i64, out_link: *mut *mut S3FramedLink) -> S3Status {
    guard(|| {
        let out_link = out(out_link, "out_link")?;
        let len = n.checked_mul(n).ok_or_else(|| fail(S3Status::Parameter, "n * n overflows"))?;
        let flat = slice(matrix, len, "matrix")?;
        let rows = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        *out_link = boxed(S3FramedLink(FramedLink::from_matrix(if n == 0 { Vec::new() } else { rows })?));
        Ok(())
    })
}

/// # Safety
/// `link` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_free(link: *mut S3FramedLink) {
    release(link);
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `link` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_len(link: *const S3FramedLink) -> usize {
    link.as_ref().map_or(0, |l| l.0.len())
}

/// Copies the row-major linking matrix and returns `n * n`.
///
/// # Safety
/// `link` must be null or a live handle; `buf` must be null or valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_matrix(link: *const S3FramedLink, buf: *mut i64, cap: usize) -> usize {
    match link.as_ref() {
        Some(l) => copy_out(&l.0.matrix().concat(), buf, cap),
        None => 0,
    }
}

/// Determinant of the linking matrix; `DOMAIN` if it does not fit in 64 bits.
///
/// # Safety
/// `link` must be a live handle; `out_det` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_det(link: *const S3FramedLink, out_det: *mut i64) -> S3Status {
    guard(|| {
        let out_det = out(out_det, "out_det")?;
        let d = det(borrow(link, "link")?.0.matrix());
        *out_det = i64::try_from(d).map_err(|_| fail(S3Status::Domain, format!("determinant {d} overflows i64")))?;
        Ok(())
    })
}

/// # Safety
/// `link` must be a live handle; `out_sig` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_signature(link: *const S3FramedLink, out_sig: *mut i64) -> S3Status {
    guard(|| {
        let out_sig = out(out_sig, "out_sig")?;
        *out_sig = signature(borrow(link, "link")?.0.matrix());
        Ok(())
    })
}

/// Adds a `sign`-framed unknot; writes a new handle.
///
/// # Safety
/// `link` must be a live handle; `out_link` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_blow_up(
    link: *const S3FramedLink,
    sign: i8,
    out_link: *mut *mut S3FramedLink,
) -> S3Status {
    guard(|| {
        let out_link = out(out_link, "out_link")?;
        *out_link = boxed(S3FramedLink(blow_up(&borrow(link, "link")?.0, sign)?));
        Ok(())
    })
}

/// Removes the ±1-framed component `index` (0-based); writes a new handle.
///
/// # Safety
/// `link` must be a live handle; `out_link` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_blow_down(
    link: *const S3FramedLink,
    index: usize,
    out_link: *mut *mut S3FramedLink,
) -> S3Status {
    guard(|| {
        let out_link = out(out_link, "out_link")?;
        *out_link = boxed(S3FramedLink(blow_down(&borrow(link, "link")?.0, index)?));
        Ok(())
    })
}

/// Slides component `i` over component `j` (0-based); `sign` picks the band.
///
/// # Safety
/// `link` must be a live handle; `out_link` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_link_slide(
    link: *const S3FramedLink,
    i: usize,
    j: usize,
    sign: i8,
    out_link: *mut *mut S3FramedLink,
) -> S3Status {
    guard(|| {
        let out_link = out(out_link, "out_link")?;
        *out_link = boxed(S3FramedLink(handle_slide(&borrow(link, "link")?.0, i, j, sign)?));
        Ok(())
    })
}

/// Integrates the flow with angular speeds `1/r1`, `1/r2` from `x0`
/// (`x1, y1, x2, y2` on the unit sphere). `r1 = r2 = 1` is the Reeb flow.
///
/// # Safety
/// `x0` must be valid for 4 reads; `out_traj` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_flow_integrate(
    x0: *const f64,
    r1: f64,
    r2: f64,
    dt: f64,
    steps: usize,
    out_traj: *mut *mut S3Trajectory,
) -> S3Status {
    guard(|| {
        let out_traj = out(out_traj, "out_traj")?;
        let p = slice(x0, 4, "x0")?;
        let field = if r1 == 1.0 && r2 == 1.0 { FlowField::Standard } else { FlowField::Weighted { r1, r2 } };
        let t = integrate_flow(PointR4::new(p[0], p[1], p[2], p[3]), field, dt, steps)?;
        *out_traj = boxed(S3Trajectory(t));
        Ok(())
    })
}

/// # Safety
/// `traj` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn s3k_trajectory_free(traj: *mut S3Trajectory) {
    release(traj);
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `traj` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn s3k_trajectory_len(traj: *const S3Trajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.0.len())
}

/// Writes sample `k` as `t, x1, y1, x2, y2, h, F` into `out7`.
///
/// # Safety
/// `traj` must be a live handle; `out7` must be valid for 7 writes.
#[no_mangle]
pub unsafe extern "C" fn s3k_trajectory_sample(traj: *const S3Trajectory, k: usize, out7: *mut f64) -> S3Status {
    guard(|| {
        let t = &borrow(traj, "traj")?.0;
        if out7.is_null() {
            return Err(fail(S3Status::NullPointer, "out7 is null"));
        }
        if k >= t.len() {
            return Err(fail(S3Status::Parameter, format!("sample {k} out of range 0..{}", t.len())));
        }
        let p = t.points[k];
        let row = [t.times[k], p.x1, p.y1, p.x2, p.y2, t.energy[k], t.bott[k]];
        ptr::copy_nonoverlapping(row.as_ptr(), out7, 7);
        Ok(())
    })
}

/// Largest deviations of `h` and `F` from their initial values.
///
/// # Safety
/// `traj` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_trajectory_drift(
    traj: *const S3Trajectory,
    out_energy: *mut f64,
    out_bott: *mut f64,
) -> S3Status {
    guard(|| {
        let t = &borrow(traj, "traj")?.0;
        let (e, b) = (out(out_energy, "out_energy")?, out(out_bott, "out_bott")?);
        *e = t.max_energy_drift();
        *b = t.max_bott_drift();
        Ok(())
    })
}

/// First return time to within `eps` of the start; `DOMAIN` if the
/// trajectory never closes.
///
/// # Safety
/// `traj` must be a live handle; `out_period` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_trajectory_period(traj: *const S3Trajectory, eps: f64, out_period: *mut f64) -> S3Status {
    guard(|| {
        let out_period = out(out_period, "out_period")?;
        *out_period = detect_closed_orbit(&borrow(traj, "traj")?.0, eps)
            .ok_or_else(|| fail(S3Status::Domain, "no closed orbit detected"))?;
        Ok(())
    })
}

/// `alpha(Reeb)` and the `d alpha` defect at a point of the unit sphere.
///
/// # Safety
/// `p` must be valid for 4 reads; `out_check` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_reeb_check(p: *const f64, out_check: *mut S3ReebCheck) -> S3Status {
    guard(|| {
        let out_check = out(out_check, "out_check")?;
        let p = slice(p, 4, "p")?;
        let c = check_reeb_conditions(PointR4::new(p[0], p[1], p[2], p[3]))?;
        *out_check = S3ReebCheck { alpha: c.alpha_value, defect: c.d_alpha_defect };
        Ok(())
    })
}

/// Closed geodesic length `2 arccosh(|x|/2)` for a hyperbolic trace.
///
/// # Safety
/// `out_length` must be writable.
#[no_mangle]
pub unsafe extern "C" fn s3k_geodesic_length(trace: f64, out_length: *mut f64) -> S3Status {
    guard(|| {
        let out_length = out(out_length, "out_length")?;
        *out_length = geodesic_length(trace)?;
        Ok(())
    })
}
