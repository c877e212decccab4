//! C ABI for `dualpair`.
//!
//! Instances are opaque handles built from JSON documents. Every call returns a
//! [`DpStatus`]; reports come back as JSON strings owned by the caller and
//! released with [`dp_string_free`]. After a failing call,
//! [`dp_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dualpair::instance::InstanceDocument;
use dualpair::labcli::{self, Opened};
use dualpair::theoremlab::{self, MineConfig, SuiteConfig};
use dualpair::{Caps, Error};

/// Result codes of every `dp_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Input = 3,
    Contract = 4,
    CapExceeded = 5,
    RingAxiom = 6,
    Balance = 7,
    Unsupported = 8,
    Hypothesis = 9,
    Internal = 10,
    Panic = 11,
}

/// A validated instance document.
pub struct DpInstance {
    opened: Opened,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DpStatus {
    match e {
        Error::Contract(_) => DpStatus::Contract,
        Error::CapExceeded { .. } => DpStatus::CapExceeded,
        Error::RingAxiom { .. } => DpStatus::RingAxiom,
        Error::Balance(_) => DpStatus::Balance,
        Error::Unsupported(_) => DpStatus::Unsupported,
        Error::Hypothesis(_) => DpStatus::Hypothesis,
        Error::Internal(_) => DpStatus::Internal,
        Error::Input(_) => DpStatus::Input,
    }
}

struct Failure(DpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Res<DpStatus>) -> DpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            DpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Failure(DpStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(DpStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Res<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn instance<'a>(h: *const DpInstance) -> Res<&'a DpInstance> {
    h.as_ref()
        .ok_or_else(|| Failure(DpStatus::NullArgument, "instance is null".into()))
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Res<DpStatus> {
    if out.is_null() {
        return Err(Failure(DpStatus::NullArgument, "output pointer is null".into()));
    }
    let json = serde_json::to_string_pretty(value).map_err(|e| Failure(DpStatus::Internal, e.to_string()))?;
    let c = CString::new(json).map_err(|e| Failure(DpStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(DpStatus::Ok)
}

unsafe fn caps_arg(p: *const c_char) -> Res<Caps> {
    match opt_text(p, "caps")? {
        Some(t) => Ok(labcli::parse_caps(t)?),
        None => Ok(Caps::default()),
    }
}

/// Parses and validates an instance document given as JSON. On success `*out`
/// holds a handle to release with [`dp_instance_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_instance_from_json(json: *const c_char, out: *mut *mut DpInstance) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(DpStatus::NullArgument, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let doc = InstanceDocument::from_json(text(json, "json")?)?;
        let opened = Opened::new(doc, "instance".into())?;
        *out = Box::into_raw(Box::new(DpInstance { opened }));
        Ok(DpStatus::Ok)
    })
}

/// Releases an instance handle; null is ignored.
///
/// # Safety
/// `h` must come from [`dp_instance_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dp_instance_free(h: *mut DpInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The document behind a handle, re-serialized.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_instance_to_json(h: *const DpInstance, out: *mut *mut c_char) -> DpStatus {
    guard(|| write_json(out, &instance(h)?.opened.document))
}

/// Closures, perps, density and completion of a pairing (`pairing` may be
/// null for `P` or the only pairing).
///
/// # Safety
/// `h` must be a live handle, `pairing` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dp_analyze(h: *const DpInstance, pairing: *const c_char, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let r = labcli::analyze_report(&instance(h)?.opened, opt_text(pairing, "pairing")?)?;
        write_json(out, &r)
    })
}

/// The α-condition verdict of a pairing, with a witness when it fails.
///
/// # Safety
/// As for [`dp_analyze`].
#[no_mangle]
pub unsafe extern "C" fn dp_alpha(h: *const DpInstance, pairing: *const c_char, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let r = labcli::alpha_report(&instance(h)?.opened, opt_text(pairing, "pairing")?)?;
        write_json(out, &r)
    })
}

/// Checks one registry entry (or every applicable one when `theorem` is null).
///
/// # Safety
/// As for [`dp_analyze`].
#[no_mangle]
pub unsafe extern "C" fn dp_check(h: *const DpInstance, theorem: *const c_char, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let r = labcli::check_report(&instance(h)?.opened, opt_text(theorem, "theorem")?)?;
        write_json(out, &r)
    })
}

/// Runs a named suite. `rings` is null or a list such as `"4,6"`; `caps` is
/// null or accepted in any form the command line takes.
///
/// # Safety
/// String arguments must be null (where allowed) or NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dp_run_suite(
    suite: *const c_char,
    rings: *const c_char,
    seed: u64,
    caps: *const c_char,
    out: *mut *mut c_char,
) -> DpStatus {
    guard(|| {
        let cfg = SuiteConfig {
            rings: opt_text(rings, "rings")?.map(labcli::parse_rings).transpose()?,
            caps: caps_arg(caps)?,
            ..SuiteConfig::new(text(suite, "suite")?, seed)
        };
        write_json(out, &theoremlab::run_suite(&cfg)?)
    })
}

/// Searches for counterexamples to `theorem` with the comma-separated
/// hypotheses in `dropped` removed.
///
/// # Safety
/// As for [`dp_run_suite`].
#[no_mangle]
pub unsafe extern "C" fn dp_mine(
    theorem: *const c_char,
    dropped: *const c_char,
    rings: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> DpStatus {
    guard(|| {
        let dropped: Vec<String> = text(dropped, "dropped")?
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mut cfg = MineConfig {
            seed,
            ..MineConfig::default()
        };
        if let Some(r) = opt_text(rings, "rings")? {
            cfg.rings = labcli::parse_rings(r)?;
        }
        write_json(out, &theoremlab::mine_counterexamples(text(theorem, "theorem")?, &dropped, &cfg)?)
    })
}

/// Predicate table for the given rings (null for the default list). Rings
/// whose predicates could not be decided carry a note.
///
/// # Safety
/// As for [`dp_run_suite`].
#[no_mangle]
pub unsafe extern "C" fn dp_ring_table(rings: *const c_char, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let specs = match opt_text(rings, "rings")? {
            Some(r) => labcli::parse_rings(r)?,
            None => labcli::default_rings(),
        };
        let (report, _) = labcli::ring_table(&specs, Caps::default())?;
        write_json(out, &report)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from a `dp_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread (empty after a success).
/// The pointer stays valid until the next `dp_*` call on the thread.
#[no_mangle]
pub extern "C" fn dp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
