//! C ABI over the levelset analyses.
//!
//! Measures are parsed from the same JSON the CLI accepts and held
//! behind opaque handles; every analysis returns a JSON report as a
//! newly allocated C string. All functions return a status code, never
//! unwind, and leave a per-thread error message readable through
//! [`ls_last_error`]. Strings handed out must be released with
//! [`ls_string_free`], measures with [`ls_measure_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use levelset_core::error::Error;
use levelset_core::measure::{parse_candidate_json, parse_measure_json, MeasureInput};
use levelset_core::report::{
    analyze, bullies_report, check_document, range_report, relations_report, AnalysisOptions,
    CheckMode, Part,
};
use levelset_core::{EnumerationConfig, Strategy};

/// Status of an FFI call. Nonzero values match the CLI exit codes
/// where one exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed JSON, a bad rational, or an invalid measure.
    InvalidInput = 2,
    /// An enumeration exceeded the configured atom bound.
    ResourceLimit = 3,
    /// Internal failure, including a caught panic.
    Internal = 70,
}

/// Enumeration strategy selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStrategy {
    Auto = 0,
    Direct = 1,
    MeetInMiddle = 2,
}

/// Which part of a signed measure a bully query addresses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsPart {
    Abs = 0,
    Positive = 1,
    Negative = 2,
}

/// Candidate check mode: equal measures force equal values (level),
/// or the ordering of measures as well (order).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsCheckMode {
    Level = 0,
    Order = 1,
}

/// Analysis options; obtain defaults from [`ls_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LsOptions {
    /// Cap on the number of atoms enumerations will touch.
    pub max_atoms: u32,
    pub strategy: LsStrategy,
    /// Recompute along brute-force paths and fail on disagreement.
    pub oracle: bool,
}

/// An opaque parsed measure.
pub struct LsMeasure {
    inner: MeasureInput,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("nul stripped");
    });
}

fn status_of(e: &Error) -> LsStatus {
    remember_error(&e.to_string());
    match e {
        Error::InvalidInput(_) | Error::InsufficientMass { .. } | Error::LevelConflict(_) => {
            LsStatus::InvalidInput
        }
        Error::ResourceLimit { .. } => LsStatus::ResourceLimit,
        Error::Internal(_) => LsStatus::Internal,
    }
}

fn guarded(body: impl FnOnce() -> LsStatus) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            remember_error("caught a panic at the FFI boundary");
            LsStatus::Internal
        }
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, LsStatus> {
    if text.is_null() {
        remember_error("null string argument");
        return Err(LsStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        remember_error("string argument is not valid UTF-8");
        LsStatus::InvalidInput
    })
}

fn config_from(opts: *const LsOptions) -> EnumerationConfig {
    if opts.is_null() {
        return EnumerationConfig::default();
    }
    let opts = unsafe { &*opts };
    EnumerationConfig {
        max_atoms: opts.max_atoms as usize,
        strategy: match opts.strategy {
            LsStrategy::Auto => Strategy::Auto,
            LsStrategy::Direct => Strategy::Direct,
            LsStrategy::MeetInMiddle => Strategy::MeetInMiddle,
        },
    }
}

fn oracle_from(opts: *const LsOptions) -> bool {
    if opts.is_null() {
        false
    } else {
        unsafe { (*opts).oracle }
    }
}

fn hand_out(json: String, out: *mut *mut c_char) -> LsStatus {
    let c = CString::new(json).expect("serde_json emits no NUL");
    unsafe {
        *out = c.into_raw();
    }
    LsStatus::Ok
}

/// Version of the library as a static string; do not free.
#[no_mangle]
pub extern "C" fn ls_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Default options: atom bound 30, automatic strategy, no oracle.
#[no_mangle]
pub extern "C" fn ls_options_default() -> LsOptions {
    LsOptions {
        max_atoms: levelset_core::DEFAULT_MAX_ATOMS as u32,
        strategy: LsStrategy::Auto,
        oracle: false,
    }
}

/// The last error message raised on this thread, as a NUL-terminated
/// string owned by the library. Valid until the next failing call on
/// the same thread; do not free.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a measure from JSON (`{"atoms": [...], "kappa": "..."}` or
/// `{"signed_atoms": [...]}`), storing an owned handle in `*out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success the caller owns the handle and must release it
/// with [`ls_measure_free`].
#[no_mangle]
pub unsafe extern "C" fn ls_measure_parse_json(
    json: *const c_char,
    out: *mut *mut LsMeasure,
) -> LsStatus {
    guarded(|| {
        if out.is_null() {
            remember_error("null output argument");
            return LsStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_measure_json(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LsMeasure { inner }));
                LsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a measure handle. Null is ignored.
///
/// # Safety
/// `measure` must have come from [`ls_measure_parse_json`] and not
/// have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ls_measure_free(measure: *mut LsMeasure) {
    if !measure.is_null() {
        drop(Box::from_raw(measure));
    }
}

/// Number of atoms in the measure (signed measures count all atoms).
///
/// # Safety
/// `measure` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_measure_atom_count(measure: *const LsMeasure) -> usize {
    if measure.is_null() {
        return 0;
    }
    match &(*measure).inner {
        MeasureInput::Positive(m) => m.atom_count(),
        MeasureInput::Signed(m) => m.atom_count(),
    }
}

/// Full analysis (range, bullies, uniqueness certificate) as a JSON
/// report in `*out`.
///
/// # Safety
/// `measure` must be a live handle; `out` must be valid; `options` may
/// be null for defaults. The returned string must be released with
/// [`ls_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ls_analyze_json(
    measure: *const LsMeasure,
    options: *const LsOptions,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        if measure.is_null() || out.is_null() {
            remember_error("null argument");
            return LsStatus::NullPointer;
        }
        let opts = AnalysisOptions {
            config: config_from(options),
            oracle: oracle_from(options),
            candidate: None,
        };
        match analyze(&(*measure).inner, &opts) {
            Ok(report) => hand_out(
                serde_json::to_string(&report).expect("reports serialize"),
                out,
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Range report (subset sums, intervals) as JSON in `*out`.
///
/// # Safety
/// As [`ls_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn ls_range_json(
    measure: *const LsMeasure,
    options: *const LsOptions,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        if measure.is_null() || out.is_null() {
            remember_error("null argument");
            return LsStatus::NullPointer;
        }
        match range_report(&(*measure).inner, &config_from(options)) {
            Ok(report) => hand_out(
                serde_json::to_string(&report).expect("reports serialize"),
                out,
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Bully report as JSON in `*out`. `part` selects the positive or
/// negative part of a signed measure; use `Abs` for positive measures
/// and for the total-variation view.
///
/// # Safety
/// As [`ls_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn ls_bullies_json(
    measure: *const LsMeasure,
    part: LsPart,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        if measure.is_null() || out.is_null() {
            remember_error("null argument");
            return LsStatus::NullPointer;
        }
        let part = match part {
            LsPart::Abs => Part::Abs,
            LsPart::Positive => Part::Positive,
            LsPart::Negative => Part::Negative,
        };
        let selected = match &(*measure).inner {
            MeasureInput::Positive(_) => None,
            MeasureInput::Signed(_) => Some(part),
        };
        match bullies_report(&(*measure).inner, selected) {
            Ok(report) => hand_out(
                serde_json::to_string(&report).expect("reports serialize"),
                out,
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Relation enumeration (vectors, rank, basis) as JSON in `*out`.
///
/// # Safety
/// As [`ls_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn ls_relations_json(
    measure: *const LsMeasure,
    options: *const LsOptions,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        if measure.is_null() || out.is_null() {
            remember_error("null argument");
            return LsStatus::NullPointer;
        }
        match relations_report(&(*measure).inner, &config_from(options)) {
            Ok(report) => hand_out(
                serde_json::to_string(&report).expect("reports serialize"),
                out,
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Checks a candidate (`{"atoms": [...], "slope": "p/q"}`, values
/// aligned with the measure's atoms largest-first) and writes the
/// check report as JSON to `*out`.
///
/// # Safety
/// As [`ls_analyze_json`]; `candidate_json` must be a valid
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ls_check_json(
    measure: *const LsMeasure,
    candidate_json: *const c_char,
    mode: LsCheckMode,
    options: *const LsOptions,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        if measure.is_null() || out.is_null() {
            remember_error("null argument");
            return LsStatus::NullPointer;
        }
        let text = match read_str(candidate_json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let candidate = match parse_candidate_json(text) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let mode = match mode {
            LsCheckMode::Level => CheckMode::Level,
            LsCheckMode::Order => CheckMode::Order,
        };
        let opts = AnalysisOptions {
            config: config_from(options),
            oracle: oracle_from(options),
            candidate: None,
        };
        match check_document(&(*measure).inner, &candidate, mode, &opts) {
            Ok(doc) => hand_out(
                serde_json::to_string(&doc).expect("reports serialize"),
                out,
            ),
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by a `*_json` function of this library
/// and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
