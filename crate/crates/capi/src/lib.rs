//! C interface for the bicyclic-monoid-extension library.
//!
//! Every function in this crate follows the same conventions:
//!
//! * Fallible functions return a [`BomegaStatus`]; `BOMEGA_STATUS_OK` means
//!   every non-null out-parameter was written.  On any other status the
//!   out-parameters are left null/zeroed and a description of the failure is
//!   available from [`bomega_last_error`].
//! * Handles (`BomegaFamily`, `BomegaElement`, `BomegaEndo`) are opaque
//!   pointers owned by the caller; release them with the matching `_free`
//!   function.  Freeing null is a no-op.
//! * Strings returned as `char*` are NUL-terminated UTF-8 owned by the
//!   caller; release them with [`bomega_string_free`].  The only exception is
//!   [`bomega_version`], which returns a static string that must not be freed.
//! * The error message storage is thread-local, so calls from different
//!   threads do not race on it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bomega::classify::enumerate_monoid_endos;
use bomega::{
    normalize_bicyclic_word, Element, EndoSpec, OmegaClosedFamily, SearchBounds,
};

/// Result code returned by every fallible function of this library.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BomegaStatus {
    /// The call succeeded and all out-parameters were written.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A text argument could not be parsed (element, family, word or
    /// endomorphism syntax).
    Parse = 3,
    /// The arguments parsed but were rejected by the algebra: an element
    /// outside its monoid, a family that is not ω-closed, a restriction that
    /// does not stay inside the subfamily, out-of-range search bounds, …
    Domain = 4,
    /// An unexpected internal failure; details via `bomega_last_error`.
    Internal = 5,
}

/// A validated ω-closed family of inductive subsets (an opaque handle).
pub struct BomegaFamily(OmegaClosedFamily);

/// An element of an extended bicyclic monoid (an opaque handle).
pub struct BomegaElement(Element);

/// A monoid-endomorphism description (an opaque handle).
pub struct BomegaEndo(EndoSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl std::fmt::Display) {
    let text = message.to_string().replace('\0', " ");
    let stored = CString::new(text).expect("nul bytes were removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Runs a closure, translating panics into `Internal` instead of letting
/// them unwind across the C boundary (which would abort the process).
fn guard(body: impl FnOnce() -> BomegaStatus) -> BomegaStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            set_last_error(format!("internal panic: {}", panic_text(payload.as_ref())));
            BomegaStatus::Internal
        }
    }
}

/// Like [`guard`], for functions that return an owned string or null.
fn guard_string(body: impl FnOnce() -> *mut c_char) -> *mut c_char {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(ptr) => ptr,
        Err(payload) => {
            set_last_error(format!("internal panic: {}", panic_text(payload.as_ref())));
            std::ptr::null_mut()
        }
    }
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> &str {
    payload
        .downcast_ref::<&str>()
        .copied()
        .or_else(|| payload.downcast_ref::<String>().map(String::as_str))
        .unwrap_or("unknown panic")
}

/// Moves a Rust string to the C heap; the caller frees it with
/// `bomega_string_free`.
fn export_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .expect("nul bytes were removed")
        .into_raw()
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, BomegaStatus> {
    if ptr.is_null() {
        set_last_error(format!("{what} must not be null"));
        return Err(BomegaStatus::NullPointer);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(text) => Ok(text),
        Err(_) => {
            set_last_error(format!("{what} is not valid UTF-8"));
            Err(BomegaStatus::InvalidUtf8)
        }
    }
}

unsafe fn read_ref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, BomegaStatus> {
    if ptr.is_null() {
        set_last_error(format!("{what} must not be null"));
        Err(BomegaStatus::NullPointer)
    } else {
        Ok(&*ptr)
    }
}

/// Checks an out-parameter and pre-fills it with `empty` so the slot is in a
/// defined state even if a later step fails.
unsafe fn prepare_out<T>(ptr: *mut T, empty: T, what: &str) -> Result<(), BomegaStatus> {
    if ptr.is_null() {
        set_last_error(format!("{what} must not be null"));
        Err(BomegaStatus::NullPointer)
    } else {
        ptr.write(empty);
        Ok(())
    }
}

macro_rules! ffi_try {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

fn parse_status(error: bomega::ParseError) -> BomegaStatus {
    set_last_error(error);
    BomegaStatus::Parse
}

fn domain_status(error: impl std::fmt::Display) -> BomegaStatus {
    set_last_error(error);
    BomegaStatus::Domain
}

// --------------------------------------------------------------------------
// Library plumbing
// --------------------------------------------------------------------------

/// Returns the library version as a static string (do **not** free it).
#[no_mangle]
pub extern "C" fn bomega_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns a copy of the message for the most recent failure on this thread,
/// or null when the latest call succeeded.  Free the copy with
/// `bomega_string_free`.
#[no_mangle]
pub extern "C" fn bomega_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => message.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string previously returned by this library.  Null is ignored.
///
/// # Safety
///
/// `text` must be null or a pointer obtained from this library that has not
/// been freed before.
#[no_mangle]
pub unsafe extern "C" fn bomega_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

// --------------------------------------------------------------------------
// Families
// --------------------------------------------------------------------------

/// Parses a family description such as `"0,1,2"` or `"0,1,empty"` and
/// validates ω-closure.  On success `*out` owns the new handle.
///
/// # Safety
///
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_parse(
    text: *const c_char,
    out: *mut *mut BomegaFamily,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let text = ffi_try!(read_str(text, "text"));
        match text.parse::<OmegaClosedFamily>() {
            Ok(family) => {
                out.write(Box::into_raw(Box::new(BomegaFamily(family))));
                BomegaStatus::Ok
            }
            Err(error) => parse_status(error),
        }
    })
}

/// Formats a family in the same comma-separated syntax the parser accepts.
/// Returns an owned string, or null on failure.
///
/// # Safety
///
/// `family` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_format(family: *const BomegaFamily) -> *mut c_char {
    guard_string(|| match read_ref(family, "family") {
        Ok(family) => export_string(family.0.to_string()),
        Err(_) => std::ptr::null_mut(),
    })
}

/// Writes the shift-normalized copy of `family` (least lower bound moved to
/// zero) to `*out` and the amount subtracted from every bound to `*shift`.
///
/// # Safety
///
/// `family` must be null or a live handle; `out` and `shift` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_normalize(
    family: *const BomegaFamily,
    out: *mut *mut BomegaFamily,
    shift: *mut u64,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        ffi_try!(prepare_out(shift, 0, "shift"));
        let family = ffi_try!(read_ref(family, "family"));
        let (normalized, offset) = family.0.normalized();
        out.write(Box::into_raw(Box::new(BomegaFamily(normalized))));
        shift.write(offset);
        BomegaStatus::Ok
    })
}

/// Sets `*out` to whether `element` belongs to the monoid over `family`.
///
/// # Safety
///
/// `family` and `element` must be null or live handles; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_contains(
    family: *const BomegaFamily,
    element: *const BomegaElement,
    out: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, false, "out"));
        let family = ffi_try!(read_ref(family, "family"));
        let element = ffi_try!(read_ref(element, "element"));
        out.write(family.0.contains_element(element.0));
        BomegaStatus::Ok
    })
}

/// Writes the multiplicative identity of the monoid over `family` to `*out`.
///
/// # Safety
///
/// `family` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_identity(
    family: *const BomegaFamily,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let family = ffi_try!(read_ref(family, "family"));
        out.write(Box::into_raw(Box::new(BomegaElement(family.0.identity()))));
        BomegaStatus::Ok
    })
}

/// Releases a family handle.  Null is ignored.
///
/// # Safety
///
/// `family` must be null or a live handle that has not been freed before.
#[no_mangle]
pub unsafe extern "C" fn bomega_family_free(family: *mut BomegaFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

// --------------------------------------------------------------------------
// Elements
// --------------------------------------------------------------------------

/// Creates the element `(i, j, lower_bound)`.
///
/// # Safety
///
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_triple(
    i: u64,
    j: u64,
    lower_bound: u64,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        out.write(Box::into_raw(Box::new(BomegaElement(Element::triple(
            i,
            j,
            lower_bound,
        )))));
        BomegaStatus::Ok
    })
}

/// Creates the absorbing zero element.
///
/// # Safety
///
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_zero(out: *mut *mut BomegaElement) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        out.write(Box::into_raw(Box::new(BomegaElement(Element::zero()))));
        BomegaStatus::Ok
    })
}

/// Parses an element written as `"(i,j,b)"` or `"zero"`.
///
/// # Safety
///
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_parse(
    text: *const c_char,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let text = ffi_try!(read_str(text, "text"));
        match text.parse::<Element>() {
            Ok(element) => {
                out.write(Box::into_raw(Box::new(BomegaElement(element))));
                BomegaStatus::Ok
            }
            Err(error) => parse_status(error),
        }
    })
}

/// Formats an element as `"(i,j,b)"` or `"zero"`.  Returns an owned string,
/// or null on failure.
///
/// # Safety
///
/// `element` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_format(element: *const BomegaElement) -> *mut c_char {
    guard_string(|| match read_ref(element, "element") {
        Ok(element) => export_string(element.0.to_string()),
        Err(_) => std::ptr::null_mut(),
    })
}

/// Decomposes an element.  For the zero element `*is_zero` is set to true and
/// the numeric slots are zeroed; otherwise `*i`, `*j` and `*lower_bound`
/// receive the triple components.
///
/// # Safety
///
/// `element` must be null or a live handle; the remaining pointers must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_parts(
    element: *const BomegaElement,
    is_zero: *mut bool,
    i: *mut u64,
    j: *mut u64,
    lower_bound: *mut u64,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(is_zero, false, "is_zero"));
        ffi_try!(prepare_out(i, 0, "i"));
        ffi_try!(prepare_out(j, 0, "j"));
        ffi_try!(prepare_out(lower_bound, 0, "lower_bound"));
        let element = ffi_try!(read_ref(element, "element"));
        match element.0 {
            Element::Zero => is_zero.write(true),
            Element::Triple { i: a, j: b, set } => {
                i.write(a);
                j.write(b);
                lower_bound.write(set.lower_bound());
            }
        }
        BomegaStatus::Ok
    })
}

/// Sets `*out` to whether two elements are equal.
///
/// # Safety
///
/// `left` and `right` must be null or live handles; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_eq(
    left: *const BomegaElement,
    right: *const BomegaElement,
    out: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, false, "out"));
        let left = ffi_try!(read_ref(left, "left"));
        let right = ffi_try!(read_ref(right, "right"));
        out.write(left.0 == right.0);
        BomegaStatus::Ok
    })
}

/// Releases an element handle.  Null is ignored.
///
/// # Safety
///
/// `element` must be null or a live handle that has not been freed before.
#[no_mangle]
pub unsafe extern "C" fn bomega_element_free(element: *mut BomegaElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

// --------------------------------------------------------------------------
// Monoid operations
// --------------------------------------------------------------------------

/// Multiplies two elements of the monoid over `family`; both factors must
/// belong to it.
///
/// # Safety
///
/// `family`, `left` and `right` must be null or live handles; `out` must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_multiply(
    family: *const BomegaFamily,
    left: *const BomegaElement,
    right: *const BomegaElement,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let family = ffi_try!(read_ref(family, "family"));
        let left = ffi_try!(read_ref(left, "left"));
        let right = ffi_try!(read_ref(right, "right"));
        match family.0.multiply(left.0, right.0) {
            Ok(product) => {
                out.write(Box::into_raw(Box::new(BomegaElement(product))));
                BomegaStatus::Ok
            }
            Err(error) => domain_status(error),
        }
    })
}

/// Writes the inverse-semigroup inverse of `element` to `*out`.
///
/// # Safety
///
/// `element` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_invert(
    element: *const BomegaElement,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let element = ffi_try!(read_ref(element, "element"));
        out.write(Box::into_raw(Box::new(BomegaElement(element.0.invert()))));
        BomegaStatus::Ok
    })
}

/// Sets `*out` to whether `element` is idempotent.
///
/// # Safety
///
/// `element` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_is_idempotent(
    element: *const BomegaElement,
    out: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, false, "out"));
        let element = ffi_try!(read_ref(element, "element"));
        out.write(element.0.is_idempotent());
        BomegaStatus::Ok
    })
}

/// Sets `*out` to whether `left ≼ right` in the natural partial order of the
/// monoid over `family`; both elements must belong to it.
///
/// # Safety
///
/// `family`, `left` and `right` must be null or live handles; `out` must be
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_natural_leq(
    family: *const BomegaFamily,
    left: *const BomegaElement,
    right: *const BomegaElement,
    out: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, false, "out"));
        let family = ffi_try!(read_ref(family, "family"));
        let left = ffi_try!(read_ref(left, "left"));
        let right = ffi_try!(read_ref(right, "right"));
        match family.0.natural_leq(left.0, right.0) {
            Ok(answer) => {
                out.write(answer);
                BomegaStatus::Ok
            }
            Err(error) => domain_status(error),
        }
    })
}

/// Rewrites a word over the alphabet `{q, p}` to its normal form `q^k p^l`
/// using the relation `pq = 1`, writing the exponents to `*k` and `*l`.
///
/// # Safety
///
/// `word` must be null or a NUL-terminated string; `k` and `l` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_word_normalize(
    word: *const c_char,
    k: *mut u64,
    l: *mut u64,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(k, 0, "k"));
        ffi_try!(prepare_out(l, 0, "l"));
        let word = ffi_try!(read_str(word, "word"));
        match normalize_bicyclic_word(word) {
            Ok(normal) => {
                k.write(normal.k);
                l.write(normal.l);
                BomegaStatus::Ok
            }
            Err(error) => {
                set_last_error(error);
                BomegaStatus::Parse
            }
        }
    })
}

// --------------------------------------------------------------------------
// Endomorphisms
// --------------------------------------------------------------------------

/// Parses an endomorphism description: a named form such as
/// `"alpha_bracket:2"`, `"alpha:2,1"` or `"beta:2,1"`, or a JSON object with
/// a `"kind"` field (`"table"` carries explicit generator images).
///
/// # Safety
///
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_parse(
    text: *const c_char,
    out: *mut *mut BomegaEndo,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let text = ffi_try!(read_str(text, "text"));
        match text.parse::<EndoSpec>() {
            Ok(spec) => {
                out.write(Box::into_raw(Box::new(BomegaEndo(spec))));
                BomegaStatus::Ok
            }
            Err(error) => parse_status(error),
        }
    })
}

/// Formats an endomorphism in the same syntax the parser accepts (named
/// forms stay compact; tables render as one-line JSON).  Returns an owned
/// string, or null on failure.
///
/// # Safety
///
/// `endo` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_format(endo: *const BomegaEndo) -> *mut c_char {
    guard_string(|| match read_ref(endo, "endo") {
        Ok(endo) => export_string(endo.0.to_string()),
        Err(_) => std::ptr::null_mut(),
    })
}

/// Serializes an endomorphism as a JSON object tagged by `"kind"`.  Returns
/// an owned string, or null on failure.
///
/// # Safety
///
/// `endo` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_to_json(endo: *const BomegaEndo) -> *mut c_char {
    guard_string(|| match read_ref(endo, "endo") {
        Ok(endo) => match serde_json::to_value(&endo.0) {
            Ok(value) => export_string(value.to_string()),
            Err(error) => {
                set_last_error(error);
                std::ptr::null_mut()
            }
        },
        Err(_) => std::ptr::null_mut(),
    })
}

/// Writes the domain family of `endo` to `*out`.
///
/// # Safety
///
/// `endo` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_family(
    endo: *const BomegaEndo,
    out: *mut *mut BomegaFamily,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let endo = ffi_try!(read_ref(endo, "endo"));
        out.write(Box::into_raw(Box::new(BomegaFamily(endo.0.family()))));
        BomegaStatus::Ok
    })
}

/// Applies `endo` to an element of its domain monoid.
///
/// # Safety
///
/// `endo` and `element` must be null or live handles; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_apply(
    endo: *const BomegaEndo,
    element: *const BomegaElement,
    out: *mut *mut BomegaElement,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let endo = ffi_try!(read_ref(endo, "endo"));
        let element = ffi_try!(read_ref(element, "element"));
        match endo.0.apply(element.0) {
            Ok(image) => {
                out.write(Box::into_raw(Box::new(BomegaElement(image))));
                BomegaStatus::Ok
            }
            Err(error) => domain_status(error),
        }
    })
}

/// Composes two endomorphisms of the same monoid: the result applies `first`
/// and then `second`.
///
/// # Safety
///
/// `first` and `second` must be null or live handles; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_compose(
    first: *const BomegaEndo,
    second: *const BomegaEndo,
    out: *mut *mut BomegaEndo,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let first = ffi_try!(read_ref(first, "first"));
        let second = ffi_try!(read_ref(second, "second"));
        match EndoSpec::compose(&first.0, &second.0) {
            Ok(composed) => {
                out.write(Box::into_raw(Box::new(BomegaEndo(composed))));
                BomegaStatus::Ok
            }
            Err(error) => domain_status(error),
        }
    })
}

/// Restricts `endo` to the monoid over a subfamily; fails if some generator
/// image leaves that monoid.
///
/// # Safety
///
/// `endo` and `subfamily` must be null or live handles; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_restrict(
    endo: *const BomegaEndo,
    subfamily: *const BomegaFamily,
    out: *mut *mut BomegaEndo,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, std::ptr::null_mut(), "out"));
        let endo = ffi_try!(read_ref(endo, "endo"));
        let subfamily = ffi_try!(read_ref(subfamily, "subfamily"));
        match endo.0.restrict_to(&subfamily.0) {
            Ok(restricted) => {
                out.write(Box::into_raw(Box::new(BomegaEndo(restricted))));
                BomegaStatus::Ok
            }
            Err(error) => domain_status(error),
        }
    })
}

/// Sets `*out` to whether `endo` maps the identity to itself.
///
/// # Safety
///
/// `endo` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_preserves_identity(
    endo: *const BomegaEndo,
    out: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, false, "out"));
        let endo = ffi_try!(read_ref(endo, "endo"));
        out.write(endo.0.preserves_identity());
        BomegaStatus::Ok
    })
}

/// Checks multiplicativity of `endo` on all pairs from the window of
/// elements with coordinates at most `window`.  `*holds` receives the
/// verdict; when it is false and `witness` is non-null, `*witness` receives
/// an owned description of the first failing pair (otherwise null).
///
/// # Safety
///
/// `endo` must be null or a live handle; `holds` and `witness` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_check_homomorphism(
    endo: *const BomegaEndo,
    window: u64,
    holds: *mut bool,
    witness: *mut *mut c_char,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(holds, false, "holds"));
        if !witness.is_null() {
            witness.write(std::ptr::null_mut());
        }
        let endo = ffi_try!(read_ref(endo, "endo"));
        match endo.0.check_homomorphism_on_window(window) {
            None => holds.write(true),
            Some(found) => {
                holds.write(false);
                if !witness.is_null() {
                    witness.write(export_string(found.to_string()));
                }
            }
        }
        BomegaStatus::Ok
    })
}

/// Checks injectivity of `endo` on the window of elements with coordinates
/// at most `window`.  `*holds` receives the verdict; when it is false and
/// `witness` is non-null, `*witness` receives an owned description of the
/// first colliding pair (otherwise null).
///
/// # Safety
///
/// `endo` must be null or a live handle; `holds` and `witness` must be null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_check_injective(
    endo: *const BomegaEndo,
    window: u64,
    holds: *mut bool,
    witness: *mut *mut c_char,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(holds, false, "holds"));
        if !witness.is_null() {
            witness.write(std::ptr::null_mut());
        }
        let endo = ffi_try!(read_ref(endo, "endo"));
        match endo.0.check_injective_on_window(window) {
            None => holds.write(true),
            Some(found) => {
                holds.write(false);
                if !witness.is_null() {
                    witness.write(export_string(found.to_string()));
                }
            }
        }
        BomegaStatus::Ok
    })
}

/// Writes to `*out` the number of fixed points of `endo` among the non-zero
/// elements with coordinates at most `window`.
///
/// # Safety
///
/// `endo` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_fixed_point_count(
    endo: *const BomegaEndo,
    window: u64,
    out: *mut u64,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out, 0, "out"));
        let endo = ffi_try!(read_ref(endo, "endo"));
        out.write(endo.0.fixed_points_in_window(window).len() as u64);
        BomegaStatus::Ok
    })
}

/// Releases an endomorphism handle.  Null is ignored.
///
/// # Safety
///
/// `endo` must be null or a live handle that has not been freed before.
#[no_mangle]
pub unsafe extern "C" fn bomega_endo_free(endo: *mut BomegaEndo) {
    if !endo.is_null() {
        drop(Box::from_raw(endo));
    }
}

// --------------------------------------------------------------------------
// Classification
// --------------------------------------------------------------------------

/// Runs the bounded search for injective monoid endomorphisms of the monoid
/// over `family`, with generator images drawn from coordinates at most
/// `image_bound` and homomorphism/injectivity checks on the window of size
/// `window`.  On success `*out_json` receives the full report as an owned
/// JSON string (candidates, prune counters, timings).
///
/// # Safety
///
/// `family` must be null or a live handle; `out_json` must be null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_classify_json(
    family: *const BomegaFamily,
    image_bound: u64,
    window: u64,
    out_json: *mut *mut c_char,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(out_json, std::ptr::null_mut(), "out_json"));
        let family = ffi_try!(read_ref(family, "family"));
        let bounds = match SearchBounds::new(image_bound, window) {
            Ok(bounds) => bounds,
            Err(error) => return domain_status(error),
        };
        let report = match enumerate_monoid_endos(&family.0, bounds) {
            Ok(report) => report,
            Err(error) => return domain_status(error),
        };
        match serde_json::to_value(&report) {
            Ok(value) => {
                out_json.write(export_string(value.to_string()));
                BomegaStatus::Ok
            }
            Err(error) => {
                set_last_error(error);
                BomegaStatus::Internal
            }
        }
    })
}

/// Runs the bundled small-scale verification suite (three-set classification,
/// composition table, non-extension of the two-set maps, fixed-point counts)
/// at the given bounds and writes the overall verdict to `*pass`.
///
/// # Safety
///
/// `pass` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bomega_verify_theorems(
    image_bound: u64,
    window: u64,
    max_k: u64,
    pass: *mut bool,
) -> BomegaStatus {
    guard(|| {
        ffi_try!(prepare_out(pass, false, "pass"));
        let bounds = match SearchBounds::new(image_bound, window) {
            Ok(bounds) => bounds,
            Err(error) => return domain_status(error),
        };
        let classification = match bomega::verify_classification_f3(bounds) {
            Ok(outcome) => outcome.pass,
            Err(error) => return domain_status(error),
        };
        let non_extension = match bomega::verify_non_extension(bounds) {
            Ok(outcome) => outcome.pass,
            Err(error) => return domain_status(error),
        };
        let composition = bomega::verify_composition_monoid(max_k);
        let fixed_points = bomega::verify_fixed_point_criterion(max_k, window);
        pass.write(classification && non_extension && composition && fixed_points);
        BomegaStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    /// Convenience wrapper: run `body` with a fresh C string.
    fn with_cstr<R>(text: &str, body: impl FnOnce(*const c_char) -> R) -> R {
        let owned = CString::new(text).unwrap();
        body(owned.as_ptr())
    }

    fn parse_family(text: &str) -> *mut BomegaFamily {
        let mut family = ptr::null_mut();
        let status = with_cstr(text, |ptr| unsafe { bomega_family_parse(ptr, &mut family) });
        assert_eq!(status, BomegaStatus::Ok);
        assert!(!family.is_null());
        family
    }

    fn parse_element(text: &str) -> *mut BomegaElement {
        let mut element = ptr::null_mut();
        let status = with_cstr(text, |ptr| unsafe { bomega_element_parse(ptr, &mut element) });
        assert_eq!(status, BomegaStatus::Ok);
        assert!(!element.is_null());
        element
    }

    fn parse_endo(text: &str) -> *mut BomegaEndo {
        let mut endo = ptr::null_mut();
        let status = with_cstr(text, |ptr| unsafe { bomega_endo_parse(ptr, &mut endo) });
        assert_eq!(status, BomegaStatus::Ok);
        assert!(!endo.is_null());
        endo
    }

    /// Takes ownership of an exported string and returns it as Rust text.
    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let text = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
        bomega_string_free(ptr);
        text
    }

    unsafe fn take_last_error() -> String {
        take_string(bomega_last_error())
    }

    #[test]
    fn version_is_a_static_string() {
        let version = bomega_version();
        assert!(!version.is_null());
        let text = unsafe { CStr::from_ptr(version) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn family_round_trip_and_normalize() {
        unsafe {
            let family = parse_family("0,1,2");
            assert_eq!(take_string(bomega_family_format(family)), "0,1,2");

            let shifted = parse_family("1,2");
            let mut normalized = ptr::null_mut();
            let mut shift = u64::MAX;
            assert_eq!(
                bomega_family_normalize(shifted, &mut normalized, &mut shift),
                BomegaStatus::Ok
            );
            assert_eq!(shift, 1);
            assert_eq!(take_string(bomega_family_format(normalized)), "0,1");

            bomega_family_free(normalized);
            bomega_family_free(shifted);
            bomega_family_free(family);
        }
    }

    #[test]
    fn family_parse_rejects_non_omega_closed_input() {
        unsafe {
            let mut family = ptr::null_mut();
            let status = with_cstr("0,2", |ptr| bomega_family_parse(ptr, &mut family));
            assert_eq!(status, BomegaStatus::Parse);
            assert!(family.is_null());
            let message = take_last_error();
            assert!(message.contains("not ω-closed"), "unexpected message: {message}");
        }
    }

    #[test]
    fn multiply_matches_the_worked_product() {
        unsafe {
            let family = parse_family("0,1,2");
            let left = parse_element("(1,1,0)");
            let right = parse_element("(0,0,2)");
            let mut product = ptr::null_mut();
            assert_eq!(
                bomega_multiply(family, left, right, &mut product),
                BomegaStatus::Ok
            );
            assert_eq!(take_string(bomega_element_format(product)), "(1,1,1)");

            let mut is_zero = true;
            let (mut i, mut j, mut bound) = (0, 0, 0);
            assert_eq!(
                bomega_element_parts(product, &mut is_zero, &mut i, &mut j, &mut bound),
                BomegaStatus::Ok
            );
            assert!(!is_zero);
            assert_eq!((i, j, bound), (1, 1, 1));

            bomega_element_free(product);
            bomega_element_free(right);
            bomega_element_free(left);
            bomega_family_free(family);
        }
    }

    #[test]
    fn multiply_rejects_elements_outside_the_family() {
        unsafe {
            let family = parse_family("0,1");
            let left = parse_element("(0,0,2)");
            let right = parse_element("(0,0,0)");
            let mut product = ptr::null_mut();
            assert_eq!(
                bomega_multiply(family, left, right, &mut product),
                BomegaStatus::Domain
            );
            assert!(product.is_null());
            assert!(take_last_error().contains("does not belong"));
            bomega_element_free(right);
            bomega_element_free(left);
            bomega_family_free(family);
        }
    }

    #[test]
    fn invert_idempotent_and_order_queries_work() {
        unsafe {
            let family = parse_family("0,1,2");
            let element = parse_element("(2,1,0)");

            let mut inverse = ptr::null_mut();
            assert_eq!(bomega_invert(element, &mut inverse), BomegaStatus::Ok);
            assert_eq!(take_string(bomega_element_format(inverse)), "(1,2,0)");

            let mut idempotent = true;
            assert_eq!(
                bomega_is_idempotent(element, &mut idempotent),
                BomegaStatus::Ok
            );
            assert!(!idempotent);

            let below = parse_element("(0,0,1)");
            let mut identity = ptr::null_mut();
            assert_eq!(bomega_family_identity(family, &mut identity), BomegaStatus::Ok);
            assert_eq!(take_string(bomega_element_format(identity)), "(0,0,0)");
            let mut leq = false;
            assert_eq!(
                bomega_natural_leq(family, below, identity, &mut leq),
                BomegaStatus::Ok
            );
            assert!(leq);
            let mut geq = true;
            assert_eq!(
                bomega_natural_leq(family, identity, below, &mut geq),
                BomegaStatus::Ok
            );
            assert!(!geq);

            let mut contains = false;
            assert_eq!(
                bomega_family_contains(family, below, &mut contains),
                BomegaStatus::Ok
            );
            assert!(contains);

            bomega_element_free(identity);
            bomega_element_free(below);
            bomega_element_free(inverse);
            bomega_element_free(element);
            bomega_family_free(family);
        }
    }

    #[test]
    fn zero_element_reports_itself() {
        unsafe {
            let mut zero = ptr::null_mut();
            assert_eq!(bomega_element_zero(&mut zero), BomegaStatus::Ok);
            assert_eq!(take_string(bomega_element_format(zero)), "zero");
            let mut is_zero = false;
            let (mut i, mut j, mut bound) = (7, 7, 7);
            assert_eq!(
                bomega_element_parts(zero, &mut is_zero, &mut i, &mut j, &mut bound),
                BomegaStatus::Ok
            );
            assert!(is_zero);
            assert_eq!((i, j, bound), (0, 0, 0));

            let parsed = parse_element("zero");
            let mut equal = false;
            assert_eq!(bomega_element_eq(zero, parsed, &mut equal), BomegaStatus::Ok);
            assert!(equal);
            bomega_element_free(parsed);
            bomega_element_free(zero);
        }
    }

    #[test]
    fn word_normalization_applies_the_bicyclic_relation() {
        unsafe {
            let (mut k, mut l) = (9, 9);
            let status = with_cstr("qpqqppqp", |word| bomega_word_normalize(word, &mut k, &mut l));
            assert_eq!(status, BomegaStatus::Ok);
            assert_eq!((k, l), (2, 2));

            let status = with_cstr("qqpqp", |word| bomega_word_normalize(word, &mut k, &mut l));
            assert_eq!(status, BomegaStatus::Ok);
            assert_eq!((k, l), (2, 1));

            let status = with_cstr("qxp", |word| bomega_word_normalize(word, &mut k, &mut l));
            assert_eq!(status, BomegaStatus::Parse);
        }
    }

    #[test]
    fn endo_apply_compose_and_restrict() {
        unsafe {
            let doubler = parse_endo("alpha_bracket:2");
            assert_eq!(take_string(bomega_endo_format(doubler)), "alpha_bracket:2");

            let mut domain = ptr::null_mut();
            assert_eq!(bomega_endo_family(doubler, &mut domain), BomegaStatus::Ok);
            assert_eq!(take_string(bomega_family_format(domain)), "0,1,2");
            bomega_family_free(domain);

            let top = parse_element("(1,2,2)");
            let mut image = ptr::null_mut();
            assert_eq!(bomega_endo_apply(doubler, top, &mut image), BomegaStatus::Ok);
            assert_eq!(take_string(bomega_element_format(image)), "(3,5,2)");
            bomega_element_free(image);
            bomega_element_free(top);

            let mut squared = ptr::null_mut();
            assert_eq!(
                bomega_endo_compose(doubler, doubler, &mut squared),
                BomegaStatus::Ok
            );
            assert_eq!(take_string(bomega_endo_format(squared)), "alpha_bracket:4");

            let two_sets = parse_family("1,2");
            let mut restricted = ptr::null_mut();
            assert_eq!(
                bomega_endo_restrict(doubler, two_sets, &mut restricted),
                BomegaStatus::Ok
            );
            let rendered = take_string(bomega_endo_format(restricted));
            assert!(rendered.contains("\"kind\":\"table\""), "got: {rendered}");
            bomega_endo_free(restricted);

            let mut preserves = false;
            assert_eq!(
                bomega_endo_preserves_identity(doubler, &mut preserves),
                BomegaStatus::Ok
            );
            assert!(preserves);

            bomega_family_free(two_sets);
            bomega_endo_free(squared);
            bomega_endo_free(doubler);
        }
    }

    #[test]
    fn endo_restriction_failure_reports_the_offender() {
        unsafe {
            // beta:2,1 sends level-one generators outside the monoid over {[1)}.
            let endo = parse_endo("beta:2,1");
            let narrow = parse_family("1");
            let mut restricted = ptr::null_mut();
            assert_eq!(
                bomega_endo_restrict(endo, narrow, &mut restricted),
                BomegaStatus::Domain
            );
            assert!(restricted.is_null());
            assert!(!take_last_error().is_empty());
            bomega_family_free(narrow);
            bomega_endo_free(endo);
        }
    }

    #[test]
    fn endo_window_checks_report_witnesses() {
        unsafe {
            let good = parse_endo("alpha:2,1");
            let mut holds = false;
            let mut witness = ptr::null_mut();
            assert_eq!(
                bomega_endo_check_homomorphism(good, 6, &mut holds, &mut witness),
                BomegaStatus::Ok
            );
            assert!(holds);
            assert!(witness.is_null());
            assert_eq!(
                bomega_endo_check_injective(good, 6, &mut holds, &mut witness),
                BomegaStatus::Ok
            );
            assert!(holds);
            assert!(witness.is_null());
            bomega_endo_free(good);

            // Sending both pair generators to the identity collapses every
            // level onto its idempotent image, so the induced map cannot be
            // injective.
            let broken = parse_endo(
                r#"{"kind":"table","family":{"bounds":[0,1]},
                    "images":{"plus":{"i":0,"j":0,"set":0},
                              "minus":{"i":0,"j":0,"set":0},
                              "e":{"0":{"i":0,"j":0,"set":0},
                                   "1":{"i":0,"j":0,"set":1}}}}"#,
            );
            assert_eq!(
                bomega_endo_check_injective(broken, 4, &mut holds, &mut witness),
                BomegaStatus::Ok
            );
            assert!(!holds);
            let text = take_string(witness);
            assert!(text.contains("share the image"), "got: {text}");
            bomega_endo_free(broken);
        }
    }

    #[test]
    fn endo_fixed_points_count_the_identity_window() {
        unsafe {
            let identity_map = parse_endo("alpha_bracket:1");
            let mut count = 0;
            assert_eq!(
                bomega_endo_fixed_point_count(identity_map, 2, &mut count),
                BomegaStatus::Ok
            );
            // The window of the three-set family at n = 2 holds 3 levels × 3
            // × 3 coordinate choices, all fixed by the identity map.
            assert_eq!(count, 27);
            bomega_endo_free(identity_map);
        }
    }

    #[test]
    fn endo_json_round_trips_through_parse() {
        unsafe {
            let original = parse_endo("beta:3,2");
            let json = take_string(bomega_endo_to_json(original));
            assert!(json.contains("\"kind\":\"beta\""), "got: {json}");
            let reparsed = parse_endo(&json);
            assert_eq!(take_string(bomega_endo_format(reparsed)), "beta:3,2");
            bomega_endo_free(reparsed);
            bomega_endo_free(original);
        }
    }

    #[test]
    fn classify_reports_the_two_set_candidates() {
        unsafe {
            let family = parse_family("0,1");
            let mut json = ptr::null_mut();
            assert_eq!(
                bomega_classify_json(family, 2, 4, &mut json),
                BomegaStatus::Ok
            );
            let text = take_string(json);
            let value: serde_json::Value = serde_json::from_str(&text).unwrap();
            let candidates = value["candidates"].as_array().unwrap();
            assert_eq!(candidates.len(), 4);
            assert!(value["prunedCounts"].is_object());
            assert!(value["elapsed_ms"].is_u64());
            bomega_family_free(family);
        }
    }

    #[test]
    fn verify_theorems_passes_at_small_bounds() {
        unsafe {
            let mut pass = false;
            assert_eq!(bomega_verify_theorems(2, 4, 4, &mut pass), BomegaStatus::Ok);
            assert!(pass);
        }
    }

    #[test]
    fn null_and_invalid_arguments_are_rejected() {
        unsafe {
            // Null out-parameter.
            assert_eq!(
                with_cstr("0,1", |ptr| bomega_family_parse(ptr, ptr::null_mut())),
                BomegaStatus::NullPointer
            );
            // Null input string.
            let mut family = ptr::null_mut();
            assert_eq!(
                bomega_family_parse(ptr::null(), &mut family),
                BomegaStatus::NullPointer
            );
            assert!(take_last_error().contains("must not be null"));
            // Invalid UTF-8 input.
            let bytes: &[u8] = &[0xff, 0xfe, 0x00];
            assert_eq!(
                bomega_family_parse(bytes.as_ptr() as *const c_char, &mut family),
                BomegaStatus::InvalidUtf8
            );
            // Null handles.
            let mut formatted = bomega_family_format(ptr::null());
            assert!(formatted.is_null());
            formatted = bomega_element_format(ptr::null());
            assert!(formatted.is_null());
            // Garbage element text.
            let mut element = ptr::null_mut();
            assert_eq!(
                with_cstr("(1,2", |ptr| bomega_element_parse(ptr, &mut element)),
                BomegaStatus::Parse
            );
            // Out-of-range search bounds.
            let family = parse_family("0,1");
            let mut json = ptr::null_mut();
            assert_eq!(
                bomega_classify_json(family, 0, 4, &mut json),
                BomegaStatus::Domain
            );
            assert!(json.is_null());
            bomega_family_free(family);
            // Frees tolerate null.
            bomega_family_free(ptr::null_mut());
            bomega_element_free(ptr::null_mut());
            bomega_endo_free(ptr::null_mut());
            bomega_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn last_error_is_cleared_by_successful_calls() {
        unsafe {
            let mut element = ptr::null_mut();
            assert_eq!(
                with_cstr("nonsense", |ptr| bomega_element_parse(ptr, &mut element)),
                BomegaStatus::Parse
            );
            assert!(!take_last_error().is_empty());

            let ok = parse_element("(0,0,0)");
            bomega_element_free(ok);
            let error = bomega_last_error();
            assert!(error.is_null());
            bomega_string_free(error);
        }
    }
}
