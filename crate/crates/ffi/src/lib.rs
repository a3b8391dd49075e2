//! C ABI for `flat-torus`.
//!
//! Conventions:
//! - every fallible function returns an [`FtStatus`] and writes results
//!   through out-pointers, which are left untouched on failure;
//! - the message for the last failure on the calling thread is available from
//!   [`ft_last_error_message`];
//! - objects are opaque handles created by `*_new` and released by the
//!   matching `*_free` (passing NULL to a `*_free` is a no-op);
//! - strings returned by the library are released with [`ft_string_free`].
//!
//! Points of the upper half-plane are passed as `(re, im)` pairs.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use flat_torus::halfplane::{geodesic_point, poincare_distance, reduce_to_fundamental_domain};
use flat_torus::metrics::{full_report, MetricReport};
use flat_torus::torus::{curve_length, systole, torus_distance};
use flat_torus::{CurveClass, Error, HPoint, MarkedTorus, MetricKind, Normalization, PiecewiseStretchMap};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidPoint = 2,
    Parse = 3,
    InvalidArgument = 4,
    InvalidFamily = 5,
    NotPrimitive = 6,
    CoincidentPoints = 7,
    OutsideDomain = 8,
    Utf8 = 9,
    Panic = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtNormalization {
    UnitArea = 0,
    UnitGenerator = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtMetric {
    Lambda = 0,
    Teich = 1,
    Kappa = 2,
    KappaPrime = 3,
    Sorvali = 4,
    SkappaPrime = 5,
    Wp = 6,
    Poincare = 7,
}

/// Numeric fields of a metric report, in CSV column order.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtReportField {
    Lambda = 0,
    Teich = 1,
    KappaEnumerated = 2,
    KappaGap = 3,
    KappaPrimeFwd = 4,
    KappaPrimeRev = 5,
    SorvaliD = 6,
    SKappaPrime = 7,
    Wp = 8,
    Poincare = 9,
}

/// A marked flat torus.
pub struct FtTorus(MarkedTorus);

/// A member of the piecewise-linear extremal family.
pub struct FtStretchMap(PiecewiseStretchMap);

/// Every distance between two points.
pub struct FtReport(MetricReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FtStatus {
    match e {
        Error::InvalidPoint { .. } => FtStatus::InvalidPoint,
        Error::Parse(_) => FtStatus::Parse,
        Error::InvalidFamily(_) => FtStatus::InvalidFamily,
        Error::NotPrimitive(..) | Error::ZeroClass => FtStatus::NotPrimitive,
        Error::CoincidentPoints => FtStatus::CoincidentPoints,
        Error::OutsideDomain(..) => FtStatus::OutsideDomain,
        Error::InvalidArgument(_) | Error::ParameterOutOfRange(_) => FtStatus::InvalidArgument,
        _ => FtStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
    Utf8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type FfiResult<T> = std::result::Result<T, Failure>;

// Runs `f`, converting errors and panics into a status plus a thread-local
// message.
fn guard<F: FnOnce() -> FfiResult<()>>(f: F) -> FtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FtStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("null pointer passed for `{name}`"));
            FtStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Utf8)) => {
            set_last_error("string argument is not valid UTF-8".into());
            FtStatus::Utf8
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {what}"));
            FtStatus::Panic
        }
    }
}

fn point(re: f64, im: f64) -> FfiResult<HPoint> {
    Ok(HPoint::new(re, im)?)
}

unsafe fn out<'a, T>(ptr: *mut T, name: &'static str) -> FfiResult<&'a mut T> {
    ptr.as_mut().ok_or(Failure::Null(name))
}

unsafe fn handle<'a, T>(ptr: *const T, name: &'static str) -> FfiResult<&'a T> {
    ptr.as_ref().ok_or(Failure::Null(name))
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the last failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a literal such as `0.5+0.866i`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_parse_point(text: *const c_char, re: *mut f64, im: *mut f64) -> FtStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| Failure::Utf8)?;
        let p: HPoint = s.parse()?;
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        *re = p.re();
        *im = p.im();
        Ok(())
    })
}

/// Hyperbolic distance in the upper half-plane.
///
/// # Safety
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_poincare_distance(re1: f64, im1: f64, re2: f64, im2: f64, result: *mut f64) -> FtStatus {
    guard(|| {
        let d = poincare_distance(point(re1, im1)?, point(re2, im2)?);
        *out(result, "result")? = d;
        Ok(())
    })
}

/// One distance between two points; `bound` is the enumeration bound `N`
/// used by the curve-ratio metrics (ignored by the others, must be >= 1).
///
/// # Safety
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_distance(
    metric: FtMetric,
    re1: f64,
    im1: f64,
    re2: f64,
    im2: f64,
    bound: u32,
    result: *mut f64,
) -> FtStatus {
    guard(|| {
        let kind = match metric {
            FtMetric::Lambda => MetricKind::Lambda,
            FtMetric::Teich => MetricKind::Teich,
            FtMetric::Kappa => MetricKind::Kappa,
            FtMetric::KappaPrime => MetricKind::KappaPrime,
            FtMetric::Sorvali => MetricKind::Sorvali,
            FtMetric::SkappaPrime => MetricKind::SkappaPrime,
            FtMetric::Wp => MetricKind::Wp,
            FtMetric::Poincare => MetricKind::Poincare,
        };
        if bound == 0 {
            return Err(Error::InvalidArgument("enumeration bound N must be >= 1".into()).into());
        }
        let d = kind.distance(point(re1, im1)?, point(re2, im2)?, bound)?;
        *out(result, "result")? = d;
        Ok(())
    })
}

/// Point at parameter `t ∈ [0, 1]` of the geodesic from `z1` to `z2`.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_geodesic_point(
    re1: f64,
    im1: f64,
    re2: f64,
    im2: f64,
    t: f64,
    re: *mut f64,
    im: *mut f64,
) -> FtStatus {
    guard(|| {
        let p = geodesic_point(point(re1, im1)?, point(re2, im2)?, t)?;
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        *re = p.re();
        *im = p.im();
        Ok(())
    })
}

/// Moves `z` into the modular fundamental domain. `matrix` receives the
/// entries `a, b, c, d` of the SL(2, Z) element taking `z` there.
///
/// # Safety
/// `re` and `im` must be writable; `matrix` must point to 4 writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn ft_reduce(z_re: f64, z_im: f64, re: *mut f64, im: *mut f64, matrix: *mut i64) -> FtStatus {
    guard(|| {
        let (w, m) = reduce_to_fundamental_domain(point(z_re, z_im)?);
        let (re, im) = (out(re, "re")?, out(im, "im")?);
        if matrix.is_null() {
            return Err(Failure::Null("matrix"));
        }
        *re = w.re();
        *im = w.im();
        std::slice::from_raw_parts_mut(matrix, 4).copy_from_slice(&m.entries());
        Ok(())
    })
}

/// # Safety
/// `torus` must be writable; the handle it receives is released with
/// [`ft_torus_free`].
#[no_mangle]
pub unsafe extern "C" fn ft_torus_new(
    re: f64,
    im: f64,
    normalization: FtNormalization,
    torus: *mut *mut FtTorus,
) -> FtStatus {
    guard(|| {
        let norm = match normalization {
            FtNormalization::UnitArea => Normalization::UnitArea,
            FtNormalization::UnitGenerator => Normalization::UnitGenerator,
        };
        let t = MarkedTorus::new(point(re, im)?, norm);
        *out(torus, "torus")? = into_handle(FtTorus(t));
        Ok(())
    })
}

/// # Safety
/// `torus` must be NULL or a handle from [`ft_torus_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_torus_free(torus: *mut FtTorus) {
    if !torus.is_null() {
        drop(Box::from_raw(torus));
    }
}

/// Generators `ω₁, ω₂` as `(re, im)` pairs: `omegas[0..4] = ω₁.re, ω₁.im, ω₂.re, ω₂.im`.
///
/// # Safety
/// `torus` must be a live handle; `omegas` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ft_torus_generators(torus: *const FtTorus, omegas: *mut f64) -> FtStatus {
    guard(|| {
        let t = &handle(torus, "torus")?.0;
        if omegas.is_null() {
            return Err(Failure::Null("omegas"));
        }
        let (a, b) = (t.omega1(), t.omega2());
        std::slice::from_raw_parts_mut(omegas, 4).copy_from_slice(&[a.re, a.im, b.re, b.im]);
        Ok(())
    })
}

/// Length of the closed geodesic in the primitive class `(m, n)`.
///
/// # Safety
/// `torus` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_torus_curve_length(torus: *const FtTorus, m: i64, n: i64, result: *mut f64) -> FtStatus {
    guard(|| {
        let t = &handle(torus, "torus")?.0;
        let len = curve_length(t, CurveClass::primitive(m, n)?);
        *out(result, "result")? = len;
        Ok(())
    })
}

/// Shortest essential closed curve: its class and length.
///
/// # Safety
/// `torus` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_torus_systole(
    torus: *const FtTorus,
    m: *mut i64,
    n: *mut i64,
    length: *mut f64,
) -> FtStatus {
    guard(|| {
        let (class, len) = systole(&handle(torus, "torus")?.0);
        let (m, n, length) = (out(m, "m")?, out(n, "n")?, out(length, "length")?);
        *m = class.m();
        *n = class.n();
        *length = len;
        Ok(())
    })
}

/// Flat distance between two points of the quotient torus.
///
/// # Safety
/// `torus` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_torus_distance(
    torus: *const FtTorus,
    x_re: f64,
    x_im: f64,
    y_re: f64,
    y_im: f64,
    result: *mut f64,
) -> FtStatus {
    guard(|| {
        let t = &handle(torus, "torus")?.0;
        let d = torus_distance(t, Complex64::new(x_re, x_im), Complex64::new(y_re, y_im));
        *out(result, "result")? = d;
        Ok(())
    })
}

/// # Safety
/// `map` must be writable; the handle it receives is released with
/// [`ft_stretch_map_free`].
#[no_mangle]
pub unsafe extern "C" fn ft_stretch_map_new(r: f64, eps: f64, delta: f64, map: *mut *mut FtStretchMap) -> FtStatus {
    guard(|| {
        let f = PiecewiseStretchMap::new(r, eps, delta)?;
        *out(map, "map")? = into_handle(FtStretchMap(f));
        Ok(())
    })
}

/// # Safety
/// `map` must be NULL or a handle from [`ft_stretch_map_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_stretch_map_free(map: *mut FtStretchMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Image of `(x, y)` in the unit square.
///
/// # Safety
/// `map` must be a live handle; `u` and `v` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_stretch_map_evaluate(
    map: *const FtStretchMap,
    x: f64,
    y: f64,
    u: *mut f64,
    v: *mut f64,
) -> FtStatus {
    guard(|| {
        let (a, b) = handle(map, "map")?.0.evaluate(x, y)?;
        let (u, v) = (out(u, "u")?, out(v, "v")?);
        *u = a;
        *v = b;
        Ok(())
    })
}

/// Lipschitz constant, quasiconformal distortion, and whether the member is
/// the affine map.
///
/// # Safety
/// `map` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_stretch_map_constants(
    map: *const FtStretchMap,
    lipschitz: *mut f64,
    qc_distortion: *mut f64,
    affine: *mut bool,
) -> FtStatus {
    guard(|| {
        let f = &handle(map, "map")?.0;
        let (l, k, a) = (out(lipschitz, "lipschitz")?, out(qc_distortion, "qc_distortion")?, out(affine, "affine")?);
        *l = f.lipschitz_constant();
        *k = f.qc_distortion();
        *a = f.is_affine(1e-12);
        Ok(())
    })
}

/// Computes every distance between two points.
///
/// # Safety
/// `report` must be writable; the handle it receives is released with
/// [`ft_report_free`].
#[no_mangle]
pub unsafe extern "C" fn ft_report_new(
    re1: f64,
    im1: f64,
    re2: f64,
    im2: f64,
    bound: u32,
    report: *mut *mut FtReport,
) -> FtStatus {
    guard(|| {
        let r = full_report(point(re1, im1)?, point(re2, im2)?, bound)?;
        *out(report, "report")? = into_handle(FtReport(r));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a handle from [`ft_report_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_report_free(report: *mut FtReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_report_get(report: *const FtReport, field: FtReportField, result: *mut f64) -> FtStatus {
    guard(|| {
        let values = handle(report, "report")?.0.csv_values();
        *out(result, "result")? = values[field as usize];
        Ok(())
    })
}

/// Witness class of the curve-ratio estimate.
///
/// # Safety
/// `report` must be a live handle; `m` and `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_report_kappa_witness(report: *const FtReport, m: *mut i64, n: *mut i64) -> FtStatus {
    guard(|| {
        let r = &handle(report, "report")?.0;
        let class = r
            .kappa_witness
            .ok_or_else(|| Failure::Lib(Error::InvalidArgument("report has no curve-ratio witness".into())))?;
        let (m, n) = (out(m, "m")?, out(n, "n")?);
        *m = class.m();
        *n = class.n();
        Ok(())
    })
}

/// The report as JSON; release the string with [`ft_string_free`].
///
/// # Safety
/// `report` must be a live handle; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_report_to_json(report: *const FtReport, json: *mut *mut c_char) -> FtStatus {
    guard(|| {
        let text = handle(report, "report")?.0.to_json();
        let c = CString::new(text).expect("JSON has no NUL bytes");
        *out(json, "json")? = c.into_raw();
        Ok(())
    })
}
