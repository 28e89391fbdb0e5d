//! C ABI over the document layer.
//!
//! Handles are opaque pointers to parsed documents; every entry point
//! returns a status code and stores the message of the last failure in a
//! thread-local slot read back through `hocat_last_error`.  Strings
//! returned to the caller are owned by the caller and released with
//! `hocat_string_free`; handles are released with `hocat_document_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use hocat::doc::{self, Document};
use hocat::{Budget, Error};

/// Status codes shared by every entry point.  `Ok` and `Fail` are the two
/// successful outcomes of a property check: the property holds, or it
/// fails and a witness is available.  The remaining codes are errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HocatStatus {
    HocatOk = 0,
    HocatFail = 1,
    HocatInvalid = 2,
    HocatPrecondition = 3,
    HocatInfinite = 4,
    HocatBudget = 5,
    HocatNullArgument = 6,
}

/// Document kinds, mirroring the `kind` field of the JSON format.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HocatKind {
    HocatKindSset = 0,
    HocatKindFincat = 1,
    HocatKindScat = 2,
    HocatKindBisset = 3,
    HocatKindNsset = 4,
    HocatKindHammock = 5,
    HocatKindLocpair = 6,
}

/// Opaque handle to a parsed document.
pub struct HocatDocument {
    inner: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    // interior NULs cannot come from our own error messages, but truncate
    // defensively rather than panic across the FFI boundary
    let clean: String = msg.chars().take_while(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
}

fn error_status(e: &Error) -> HocatStatus {
    set_error(&e.to_string());
    match e {
        Error::BudgetExceeded(_) => HocatStatus::HocatBudget,
        Error::Invalid(_) => HocatStatus::HocatInvalid,
        Error::Infinite(_) => HocatStatus::HocatInfinite,
        Error::Precondition(_) => HocatStatus::HocatPrecondition,
    }
}

fn null_arg(which: &str) -> HocatStatus {
    set_error(&format!("null argument: {which}"));
    HocatStatus::HocatNullArgument
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).unwrap().into_raw()
}

/// Message of the most recent failure on this thread.  The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn hocat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.  NULL is ignored.
#[no_mangle]
pub extern "C" fn hocat_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Parses a UTF-8 JSON document.  On success `*out` owns a new handle.
#[no_mangle]
pub extern "C" fn hocat_document_parse(
    text: *const c_char,
    out: *mut *mut HocatDocument,
) -> HocatStatus {
    if text.is_null() {
        return null_arg("text");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("document text is not valid UTF-8");
            return HocatStatus::HocatInvalid;
        }
    };
    match doc::parse_document(text) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(HocatDocument { inner })) };
            HocatStatus::HocatOk
        }
        Err(e) => error_status(&e),
    }
}

/// Releases a document handle.  NULL is ignored.
#[no_mangle]
pub extern "C" fn hocat_document_free(d: *mut HocatDocument) {
    if !d.is_null() {
        unsafe { drop(Box::from_raw(d)) };
    }
}

/// Kind of the document behind a handle.  NULL maps to sset; check the
/// handle before calling.
#[no_mangle]
pub extern "C" fn hocat_document_kind(d: *const HocatDocument) -> HocatKind {
    if d.is_null() {
        return HocatKind::HocatKindSset;
    }
    match unsafe { &(*d).inner } {
        Document::Sset { .. } => HocatKind::HocatKindSset,
        Document::Fincat { .. } => HocatKind::HocatKindFincat,
        Document::Scat { .. } => HocatKind::HocatKindScat,
        Document::Bisset { .. } => HocatKind::HocatKindBisset,
        Document::Nsset { .. } => HocatKind::HocatKindNsset,
        Document::Hammock { .. } => HocatKind::HocatKindHammock,
        Document::Locpair { .. } => HocatKind::HocatKindLocpair,
    }
}

/// Canonical serialization of the document: identical handles emit
/// byte-identical text.  Returns NULL only for a NULL handle.
#[no_mangle]
pub extern "C" fn hocat_document_emit(d: *const HocatDocument) -> *mut c_char {
    if d.is_null() {
        null_arg("document");
        return ptr::null_mut();
    }
    to_c_string(doc::emit_document(unsafe { &(*d).inner }))
}

fn rebuild(d: &Document) -> hocat::Result<()> {
    match d {
        Document::Sset { payload, .. } => doc::sset_from_doc(payload).map(|_| ()),
        Document::Fincat { payload, .. } => doc::fincat_from_doc(payload).map(|_| ()),
        Document::Scat { payload, .. } => doc::scat_from_doc(payload).map(|_| ()),
        Document::Bisset { payload, .. } => doc::bisset_from_doc(payload).map(|_| ()),
        Document::Nsset { payload, .. } => doc::nsset_from_doc(payload).map(|_| ()),
        Document::Hammock { payload, .. } => doc::hammock_from_doc(payload).map(|_| ()),
        Document::Locpair { payload, .. } => doc::locpair_from_doc(payload).map(|_| ()),
    }
}

/// Full semantic validation of the payload: ids resolve, simplicial and
/// category identities hold.
#[no_mangle]
pub extern "C" fn hocat_document_validate(d: *const HocatDocument) -> HocatStatus {
    if d.is_null() {
        return null_arg("document");
    }
    match rebuild(unsafe { &(*d).inner }) {
        Ok(()) => HocatStatus::HocatOk,
        Err(e) => error_status(&e),
    }
}

fn as_sset(d: *const HocatDocument) -> Result<hocat::SSet, HocatStatus> {
    if d.is_null() {
        return Err(null_arg("document"));
    }
    match unsafe { &(*d).inner } {
        Document::Sset { payload, .. } => {
            doc::sset_from_doc(payload).map_err(|e| error_status(&e))
        }
        _ => {
            set_error("expected an sset document");
            Err(HocatStatus::HocatPrecondition)
        }
    }
}

fn as_fincat(d: *const HocatDocument) -> Result<hocat::fincat::FinCat, HocatStatus> {
    if d.is_null() {
        return Err(null_arg("document"));
    }
    match unsafe { &(*d).inner } {
        Document::Fincat { payload, .. } => {
            doc::fincat_from_doc(payload).map_err(|e| error_status(&e))
        }
        _ => {
            set_error("expected a fincat document");
            Err(HocatStatus::HocatPrecondition)
        }
    }
}

fn emit_out(out: *mut *mut HocatDocument, inner: Document) -> HocatStatus {
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = Box::into_raw(Box::new(HocatDocument { inner })) };
    HocatStatus::HocatOk
}

fn horn_witness(
    target: &hocat::SSet,
    w: &hocat::quasi::HornInstance,
    witness: *mut *mut c_char,
) {
    if witness.is_null() {
        return;
    }
    let json = serde_json::json!({
        "type": "horn",
        "n": w.n,
        "i": w.i,
        "images": doc::smap_to_doc(target, &w.horn_map),
    });
    unsafe { *witness = to_c_string(json.to_string()) };
}

/// Nerve of a fincat document, truncated at `max_dim`; `*out` owns the
/// resulting sset document.
#[no_mangle]
pub extern "C" fn hocat_nerve(
    d: *const HocatDocument,
    max_dim: u32,
    out: *mut *mut HocatDocument,
) -> HocatStatus {
    let c = match as_fincat(d) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let nv = hocat::nerve::nerve(&c, max_dim as usize);
    match doc::sset_to_doc(&nv.sset) {
        Ok(payload) => emit_out(
            out,
            Document::Sset {
                format_version: doc::FORMAT_VERSION,
                payload,
            },
        ),
        Err(e) => error_status(&e),
    }
}

/// Kan check on an sset document up to `max_dim`.  `Fail` means some horn
/// has no filler; if `witness` is non-NULL it receives the failing horn
/// as a JSON string.
#[no_mangle]
pub extern "C" fn hocat_is_kan(
    d: *const HocatDocument,
    max_dim: u32,
    budget_limit: u64,
    witness: *mut *mut c_char,
) -> HocatStatus {
    let s = match as_sset(d) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let mut budget = Budget::new(budget_limit);
    match hocat::quasi::is_kan(&s, max_dim as usize, &mut budget) {
        Ok(None) => HocatStatus::HocatOk,
        Ok(Some(w)) => {
            horn_witness(&s, &w, witness);
            set_error(&format!("horn ({}, {}) has no filler", w.n, w.i));
            HocatStatus::HocatFail
        }
        Err(e) => error_status(&e),
    }
}

/// Inner-horn check on an sset document up to `max_dim`, with the same
/// conventions as `hocat_is_kan`.
#[no_mangle]
pub extern "C" fn hocat_is_quasicategory(
    d: *const HocatDocument,
    max_dim: u32,
    budget_limit: u64,
    witness: *mut *mut c_char,
) -> HocatStatus {
    let s = match as_sset(d) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let mut budget = Budget::new(budget_limit);
    match hocat::quasi::is_quasicategory(&s, max_dim as usize, &mut budget) {
        Ok(None) => HocatStatus::HocatOk,
        Ok(Some(w)) => {
            horn_witness(&s, &w, witness);
            set_error(&format!("inner horn ({}, {}) has no filler", w.n, w.i));
            HocatStatus::HocatFail
        }
        Err(e) => error_status(&e),
    }
}

/// Strict Segal check on an sset document, all p up to the document's
/// dimension.  `Fail` leaves the failing level in the error message.
#[no_mangle]
pub extern "C" fn hocat_is_strict_segal(d: *const HocatDocument) -> HocatStatus {
    let s = match as_sset(d) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match hocat::nerve::is_strict_segal(&s, s.max_dim()) {
        Ok(None) => HocatStatus::HocatOk,
        Ok(Some((p, _))) => {
            set_error(&format!("Segal map at level {p} is not a bijection"));
            HocatStatus::HocatFail
        }
        Err(e) => error_status(&e),
    }
}

/// Fundamental category of a quasi-category document; `*out` owns the
/// resulting fincat document.
#[no_mangle]
pub extern "C" fn hocat_ho_category(
    d: *const HocatDocument,
    budget_limit: u64,
    out: *mut *mut HocatDocument,
) -> HocatStatus {
    let s = match as_sset(d) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let mut budget = Budget::new(budget_limit);
    match hocat::quasi::ho_category(&s, &mut budget)
        .and_then(|c| doc::fincat_to_doc(&c))
    {
        Ok(payload) => emit_out(
            out,
            Document::Fincat {
                format_version: doc::FORMAT_VERSION,
                payload,
            },
        ),
        Err(e) => error_status(&e),
    }
}

/// Number of path components of an sset document, written to `*out`.
#[no_mangle]
pub extern "C" fn hocat_pi0_count(d: *const HocatDocument, out: *mut u64) -> HocatStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let s = match as_sset(d) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let classes = hocat::bisset::pi0_classes(&s);
    let count = classes.iter().collect::<std::collections::BTreeSet<_>>().len();
    unsafe { *out = count as u64 };
    HocatStatus::HocatOk
}
