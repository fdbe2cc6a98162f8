//! C interface to `trigonal`. Objects are opaque handles released by the
//! matching `*_free`; every call returns a [`TrigonalStatus`] and leaves a
//! message for [`trigonal_last_error`] on failure. Strings handed out must be
//! released with [`trigonal_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trigonal::catalog::{build_entry, verify};
use trigonal::coset::{census, congruence_skeleton, export_skeleton, ExportFormat, Skeleton};
use trigonal::invariants::{
    alexander_polynomial, component_count, invariants_report, isotrivial_quotient, maximal_uniform_quotient, JClass, MonodromyData,
};
use trigonal::Error;

#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigonalStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Invalid = 3,
    BudgetExceeded = 4,
    NotFound = 5,
    RankDeficient = 6,
    Validation = 7,
    AssemblyFailed = 8,
    VerifyFailed = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrigonalCensus {
    pub index: u64,
    pub cusps: u64,
    pub genus: i64,
    pub torsion_free: bool,
    pub contains_minus_id: bool,
}

pub struct TrigonalMonodromy(MonodromyData);

pub struct TrigonalSkeleton(Skeleton);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TrigonalStatus {
    match e {
        Error::Parse(_) => TrigonalStatus::Parse,
        Error::Invalid(_) => TrigonalStatus::Invalid,
        Error::BudgetExceeded(_) => TrigonalStatus::BudgetExceeded,
        Error::NotFound(_) => TrigonalStatus::NotFound,
        Error::RankDeficient => TrigonalStatus::RankDeficient,
        Error::Validation(_) => TrigonalStatus::Validation,
        Error::AssemblyFailed(_) => TrigonalStatus::AssemblyFailed,
    }
}

struct Fail(TrigonalStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TrigonalStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrigonalStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            TrigonalStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TrigonalStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(TrigonalStatus::Parse, format!("{what} is not UTF-8")))
}

fn null(what: &str) -> Fail {
    Fail(TrigonalStatus::NullPointer, format!("{what} is null"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| Fail(TrigonalStatus::Invalid, "interior nul".into()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn trigonal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn trigonal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"B1;B2;..."` with optional slopes `"W1;W2;..."` (may be null).
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_monodromy_parse(
    braids: *const c_char,
    d: u64,
    slopes: *const c_char,
    out: *mut *mut TrigonalMonodromy,
) -> TrigonalStatus {
    guard(|| {
        let b = str_arg(braids, "braids")?;
        let s = if slopes.is_null() { None } else { Some(str_arg(slopes, "slopes")?) };
        if out.is_null() {
            return Err(null("out"));
        }
        let md = MonodromyData::parse(b, d, s)?;
        *out = Box::into_raw(Box::new(TrigonalMonodromy(md)));
        Ok(())
    })
}

/// # Safety
/// `h` must come from `trigonal_monodromy_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn trigonal_monodromy_free(h: *mut TrigonalMonodromy) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn trigonal_monodromy_validate(h: *const TrigonalMonodromy, strict: bool) -> TrigonalStatus {
    guard(|| {
        let md = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        md.validate(strict)?;
        Ok(())
    })
}

/// Invariant factors of the maximal uniform dihedral quotient. `factors`
/// receives at most `cap` entries; `len` is always set to the true count.
///
/// # Safety
/// `h` must be a live handle, `factors` writable for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn trigonal_uniform_quotient(
    h: *const TrigonalMonodromy,
    free_rank: *mut u64,
    factors: *mut u64,
    cap: usize,
    len: *mut usize,
) -> TrigonalStatus {
    guard(|| {
        let md = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        if free_rank.is_null() || len.is_null() || (cap > 0 && factors.is_null()) {
            return Err(null("output"));
        }
        let q = maximal_uniform_quotient(md);
        let fs = q.factors_u64();
        *free_rank = q.free_rank as u64;
        *len = fs.len();
        if fs.len() > cap {
            return Err(Fail(TrigonalStatus::BufferTooSmall, format!("need {} slots", fs.len())));
        }
        if !fs.is_empty() {
            ptr::copy_nonoverlapping(fs.as_ptr(), factors, fs.len());
        }
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_component_count(h: *const TrigonalMonodromy, out: *mut u32) -> TrigonalStatus {
    guard(|| {
        let md = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        *out.as_mut().ok_or_else(|| null("out"))? = component_count(md) as u32;
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_alexander_polynomial(h: *const TrigonalMonodromy, out: *mut *mut c_char) -> TrigonalStatus {
    guard(|| {
        let md = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        put_string(out, alexander_polynomial(md)?.to_string())
    })
}

/// Full invariant report as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_invariants_json(h: *const TrigonalMonodromy, out: *mut *mut c_char) -> TrigonalStatus {
    guard(|| {
        let md = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        put_string(out, invariants_report(md).to_string())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_skeleton_new(m: u64, n: u64, out: *mut *mut TrigonalSkeleton) -> TrigonalStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(TrigonalSkeleton(congruence_skeleton(m, n)?)));
        Ok(())
    })
}

/// # Safety
/// `h` must come from `trigonal_skeleton_new` or be null.
#[no_mangle]
pub unsafe extern "C" fn trigonal_skeleton_free(h: *mut TrigonalSkeleton) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_skeleton_census(h: *const TrigonalSkeleton, out: *mut TrigonalCensus) -> TrigonalStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        let c = census(s);
        *out.as_mut().ok_or_else(|| null("out"))? = TrigonalCensus {
            index: c.index as u64,
            cusps: c.cusps() as u64,
            genus: c.genus,
            torsion_free: c.torsion_free,
            contains_minus_id: c.contains_minus_id.unwrap_or(false),
        };
        Ok(())
    })
}

/// `format`: 0 for DOT, 1 for JSON.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_skeleton_export(h: *const TrigonalSkeleton, format: i32, out: *mut *mut c_char) -> TrigonalStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.0;
        let f = match format {
            0 => ExportFormat::Dot,
            1 => ExportFormat::Json,
            _ => return Err(Fail(TrigonalStatus::Invalid, format!("unknown format {format}"))),
        };
        put_string(out, export_skeleton(s, f))
    })
}

/// Builds and verifies one catalog entry; the JSON report is written to
/// `out` in both the passing and failing case.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_catalog_verify(m: u64, n: u64, out: *mut *mut c_char) -> TrigonalStatus {
    guard(|| {
        let r = verify(&build_entry(m, n)?);
        put_string(out, r.to_json().to_string())?;
        if r.passed() {
            Ok(())
        } else {
            Err(Fail(TrigonalStatus::VerifyFailed, format!("{} failed verification", r.entry)))
        }
    })
}

/// `j`: 0 for j = 0, 1 for j = 1, 2 for generic. Writes the group as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trigonal_isotrivial_quotient(j: i32, r: u64, out: *mut *mut c_char) -> TrigonalStatus {
    guard(|| {
        let jc = match j {
            0 => JClass::Zero,
            1 => JClass::One,
            2 => JClass::Generic,
            _ => return Err(Fail(TrigonalStatus::Invalid, format!("unknown j class {j}"))),
        };
        let q = isotrivial_quotient(jc, r);
        put_string(out, serde_json::json!({"rank": q.free_rank, "factors": q.factors_u64()}).to_string())
    })
}
