//! C ABI over the κ-Minkowski calculus.
//!
//! Every function returns a [`KmkStatus`]; results come back through
//! out-pointers holding opaque handles that the caller releases with the
//! matching `_free`. On any non-OK status a thread-local description is
//! available from [`kmk_last_error_message`]. The build script runs
//! cbindgen and keeps `include/kmink.h` in sync with this file.

use kmink::calculus::{check_calculus, deformed_box, exterior_d, FormLabel, OneForm};
use kmink::ordered::OrderedElement;
use kmink::parse::parse_element;
use kmink::symmetry::{
    act_generator, check_invariance, check_leibniz, check_relations, dispersion_residual,
    solve_k0, BoostSign, Generator, Momentum,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

/// Outcome of a call. Anything but OK leaves a message readable through
/// `kmk_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KmkStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The expression failed to parse or evaluate.
    Syntax = 3,
    /// The operator name is not one of P0..P3, M1..M3, N1..N3, box.
    UnknownOperator = 4,
    /// A numeric or range argument was outside its domain.
    Domain = 5,
    /// The dispersion solver found no positive root to bracket.
    NoRoot = 6,
}

/// Basis one-form labels: the four frame directions and the extra form.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KmkForm {
    T0 = 0,
    T1 = 1,
    T2 = 2,
    T3 = 3,
    Tau = 4,
}

/// Verification suites runnable through `kmk_check`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KmkSuite {
    /// Commutation relations of the symmetry algebra.
    Relations = 0,
    /// Differential-calculus identities and classical limits.
    Calculus = 1,
    /// Invariance of the box operator.
    Invariance = 2,
    /// Twisted Leibniz rules on monomial pairs.
    Leibniz = 3,
}

/// Opaque handle to a normally ordered algebra element.
pub struct KmkElement(OrderedElement);

/// Opaque handle to a one-form with normally ordered coefficients.
pub struct KmkOneForm(OneForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: KmkStatus, message: &str) -> KmkStatus {
    let bytes: Vec<u8> = message.bytes().filter(|&b| b != 0).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(bytes).expect("interior NULs filtered");
    });
    status
}

/// Description of the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same thread;
/// copy the string if it must outlive that.
#[no_mangle]
pub extern "C" fn kmk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, KmkStatus> {
    if ptr.is_null() {
        return Err(fail(KmkStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(KmkStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn give_element(out: *mut *mut KmkElement, value: OrderedElement) -> KmkStatus {
    unsafe { *out = Box::into_raw(Box::new(KmkElement(value))) };
    KmkStatus::Ok
}

/// Parse an expression over x0..x3, i, k and normally order it.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_parse(src: *const c_char, out: *mut *mut KmkElement) -> KmkStatus {
    if out.is_null() {
        return fail(KmkStatus::NullArgument, "null out pointer");
    }
    let src = match read_str(src) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match parse_element(src) {
        Ok(e) => give_element(out, e.normal_order()),
        Err(message) => fail(KmkStatus::Syntax, &message),
    }
}

/// Release an element handle; a null pointer is ignored.
///
/// # Safety
/// `e` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_free(e: *mut KmkElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Deep-copy an element handle.
///
/// # Safety
/// `e` must be a live element handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_clone(
    e: *const KmkElement,
    out: *mut *mut KmkElement,
) -> KmkStatus {
    if e.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    give_element(out, (*e).0.clone())
}

/// Render an element in its canonical text form; the result reparses
/// through `kmk_parse` to an equal element. Free it with `kmk_string_free`.
///
/// # Safety
/// `e` must be a live element handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_to_string(
    e: *const KmkElement,
    out: *mut *mut c_char,
) -> KmkStatus {
    if e.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    let text = (*e).0.to_string();
    let c = CString::new(text).expect("canonical forms contain no NUL");
    *out = c.into_raw();
    KmkStatus::Ok
}

/// Release a string produced by this library; a null pointer is ignored.
///
/// # Safety
/// `s` must have come from `kmk_element_to_string` and not been freed.
#[no_mangle]
pub unsafe extern "C" fn kmk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sum of two elements.
///
/// # Safety
/// `a` and `b` must be live element handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_add(
    a: *const KmkElement,
    b: *const KmkElement,
    out: *mut *mut KmkElement,
) -> KmkStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    give_element(out, &(*a).0 + &(*b).0)
}

/// Noncommutative product of two elements (the star product on
/// normally ordered representatives).
///
/// # Safety
/// `a` and `b` must be live element handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_mul(
    a: *const KmkElement,
    b: *const KmkElement,
    out: *mut *mut KmkElement,
) -> KmkStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    give_element(out, (*a).0.star(&(*b).0))
}

/// Exact equality of two elements, written to `out`.
///
/// # Safety
/// `a` and `b` must be live element handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_element_eq(
    a: *const KmkElement,
    b: *const KmkElement,
    out: *mut bool,
) -> KmkStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    *out = (*a).0 == (*b).0;
    KmkStatus::Ok
}

fn resolve_operator(name: &str) -> Option<Result<Generator, ()>> {
    if name.eq_ignore_ascii_case("box") {
        return Some(Err(()));
    }
    Generator::ALL
        .iter()
        .find(|g| g.name().eq_ignore_ascii_case(name))
        .map(|g| Ok(*g))
}

/// Apply a symmetry generator (`"P0"`..`"N3"`, case-insensitive) or the
/// invariant `"box"` operator to an element.
///
/// # Safety
/// `name` must be NUL-terminated, `e` a live element handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kmk_apply(
    name: *const c_char,
    e: *const KmkElement,
    out: *mut *mut KmkElement,
) -> KmkStatus {
    if e.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    let name = match read_str(name) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match resolve_operator(name) {
        Some(Ok(g)) => give_element(out, act_generator(g, &(*e).0, BoostSign::default())),
        Some(Err(())) => give_element(out, deformed_box(&(*e).0)),
        None => fail(
            KmkStatus::UnknownOperator,
            &format!("unknown operator {name:?}; expected P0..P3, M1..M3, N1..N3 or box"),
        ),
    }
}

/// Exterior derivative of an element as a five-component one-form.
///
/// # Safety
/// `e` must be a live element handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_exterior_d(
    e: *const KmkElement,
    out: *mut *mut KmkOneForm,
) -> KmkStatus {
    if e.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    *out = Box::into_raw(Box::new(KmkOneForm(exterior_d(&(*e).0))));
    KmkStatus::Ok
}

/// Release a one-form handle; a null pointer is ignored.
///
/// # Safety
/// `w` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn kmk_oneform_free(w: *mut KmkOneForm) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Extract one basis coefficient of a one-form as a fresh element.
///
/// # Safety
/// `w` must be a live one-form handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmk_oneform_coeff(
    w: *const KmkOneForm,
    label: KmkForm,
    out: *mut *mut KmkElement,
) -> KmkStatus {
    if w.is_null() || out.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    let label = match label {
        KmkForm::T0 => FormLabel::T0,
        KmkForm::T1 => FormLabel::T1,
        KmkForm::T2 => FormLabel::T2,
        KmkForm::T3 => FormLabel::T3,
        KmkForm::Tau => FormLabel::Tau,
    };
    give_element(out, (*w).0.coeff(label))
}

/// Run a verification suite on all monomials of total degree at most
/// `max_degree` (2..=10). `boost_sign` is -1 for the shipped convention or
/// +1 for the variant that breaks the boost–momentum sector; the calculus
/// suite ignores it. Writes the number of failed and total cases; the
/// status reports only call errors, not identity failures.
///
/// # Safety
/// `failed` and `total` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kmk_check(
    suite: KmkSuite,
    max_degree: u32,
    boost_sign: i32,
    failed: *mut u32,
    total: *mut u32,
) -> KmkStatus {
    if failed.is_null() || total.is_null() {
        return fail(KmkStatus::NullArgument, "null argument");
    }
    if !(2..=10).contains(&max_degree) {
        return fail(KmkStatus::Domain, "max_degree must lie in 2..=10");
    }
    let sign = match boost_sign {
        -1 => BoostSign::Negative,
        1 => BoostSign::Positive,
        _ => return fail(KmkStatus::Domain, "boost_sign must be -1 or +1"),
    };
    let report = match suite {
        KmkSuite::Relations => check_relations(max_degree, sign),
        KmkSuite::Calculus => check_calculus(max_degree),
        KmkSuite::Invariance => check_invariance(max_degree, sign),
        KmkSuite::Leibniz => check_leibniz(max_degree, sign),
    };
    let (passed, all) = report.tally();
    *failed = (all - passed) as u32;
    *total = all as u32;
    KmkStatus::Ok
}

fn read_kvec(kvec: *const f64) -> Result<[f64; 3], KmkStatus> {
    if kvec.is_null() {
        return Err(fail(KmkStatus::NullArgument, "null kvec pointer"));
    }
    let v = unsafe { [*kvec, *kvec.add(1), *kvec.add(2)] };
    if v.iter().any(|x| !x.is_finite()) {
        return Err(fail(KmkStatus::Domain, "kvec components must be finite"));
    }
    Ok(v)
}

fn check_scales(kappa: f64, mass: f64) -> Result<(), KmkStatus> {
    if !kappa.is_finite() || kappa <= 0.0 {
        return Err(fail(KmkStatus::Domain, "kappa must be positive"));
    }
    if !mass.is_finite() || mass < 0.0 {
        return Err(fail(KmkStatus::Domain, "mass must be nonnegative"));
    }
    Ok(())
}

/// Value of the deformed mass-shell function at momentum (`k0`, `kvec`).
///
/// # Safety
/// `kvec` must point to three doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kmk_dispersion_residual(
    kappa: f64,
    mass: f64,
    kvec: *const f64,
    k0: f64,
    out: *mut f64,
) -> KmkStatus {
    if out.is_null() {
        return fail(KmkStatus::NullArgument, "null out pointer");
    }
    let kvec = match read_kvec(kvec) {
        Ok(v) => v,
        Err(status) => return status,
    };
    if let Err(status) = check_scales(kappa, mass) {
        return status;
    }
    if !k0.is_finite() {
        return fail(KmkStatus::Domain, "k0 must be finite");
    }
    match dispersion_residual(&Momentum { k0, kvec }, kappa, mass) {
        Ok(r) => {
            *out = r;
            KmkStatus::Ok
        }
        Err(e) => fail(KmkStatus::Domain, &e.to_string()),
    }
}

/// Nonnegative root of the deformed mass shell in the time component.
///
/// # Safety
/// `kvec` must point to three doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kmk_solve_k0(
    kappa: f64,
    mass: f64,
    kvec: *const f64,
    out: *mut f64,
) -> KmkStatus {
    if out.is_null() {
        return fail(KmkStatus::NullArgument, "null out pointer");
    }
    let kvec = match read_kvec(kvec) {
        Ok(v) => v,
        Err(status) => return status,
    };
    if let Err(status) = check_scales(kappa, mass) {
        return status;
    }
    match solve_k0(kvec, kappa, mass) {
        Ok(root) => {
            *out = root;
            KmkStatus::Ok
        }
        Err(e) => fail(KmkStatus::NoRoot, &e.to_string()),
    }
}
