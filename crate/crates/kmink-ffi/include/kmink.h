#ifndef KMINK_H
#define KMINK_H

/* Generated by cbindgen from kmink-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Basis one-form labels: the four frame directions and the extra form.
typedef enum KmkForm {
  KMK_FORM_T0 = 0,
  KMK_FORM_T1 = 1,
  KMK_FORM_T2 = 2,
  KMK_FORM_T3 = 3,
  KMK_FORM_TAU = 4,
} KmkForm;

// Outcome of a call. Anything but OK leaves a message readable through
// `kmk_last_error_message`.
typedef enum KmkStatus {
  // Success.
  KMK_STATUS_OK = 0,
  // A required pointer argument was null.
  KMK_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  KMK_STATUS_INVALID_UTF8 = 2,
  // The expression failed to parse or evaluate.
  KMK_STATUS_SYNTAX = 3,
  // The operator name is not one of P0..P3, M1..M3, N1..N3, box.
  KMK_STATUS_UNKNOWN_OPERATOR = 4,
  // A numeric or range argument was outside its domain.
  KMK_STATUS_DOMAIN = 5,
  // The dispersion solver found no positive root to bracket.
  KMK_STATUS_NO_ROOT = 6,
} KmkStatus;

// Verification suites runnable through `kmk_check`.
typedef enum KmkSuite {
  // Commutation relations of the symmetry algebra.
  KMK_SUITE_RELATIONS = 0,
  // Differential-calculus identities and classical limits.
  KMK_SUITE_CALCULUS = 1,
  // Invariance of the box operator.
  KMK_SUITE_INVARIANCE = 2,
  // Twisted Leibniz rules on monomial pairs.
  KMK_SUITE_LEIBNIZ = 3,
} KmkSuite;

// Opaque handle to a normally ordered algebra element.
typedef struct KmkElement KmkElement;

// Opaque handle to a one-form with normally ordered coefficients.
typedef struct KmkOneForm KmkOneForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the most recent failure on this thread.
//
// The pointer stays valid until the next failing call on the same thread;
// copy the string if it must outlive that.
const char *kmk_last_error_message(void);

// Parse an expression over x0..x3, i, k and normally order it.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum KmkStatus kmk_parse(const char *src, struct KmkElement **out);

// Release an element handle; a null pointer is ignored.
//
// # Safety
// `e` must have come from this library and not been freed before.
void kmk_element_free(struct KmkElement *e);

// Deep-copy an element handle.
//
// # Safety
// `e` must be a live element handle and `out` a valid pointer.
enum KmkStatus kmk_element_clone(const struct KmkElement *e, struct KmkElement **out);

// Render an element in its canonical text form; the result reparses
// through `kmk_parse` to an equal element. Free it with `kmk_string_free`.
//
// # Safety
// `e` must be a live element handle and `out` a valid pointer.
enum KmkStatus kmk_element_to_string(const struct KmkElement *e, char **out);

// Release a string produced by this library; a null pointer is ignored.
//
// # Safety
// `s` must have come from `kmk_element_to_string` and not been freed.
void kmk_string_free(char *s);

// Sum of two elements.
//
// # Safety
// `a` and `b` must be live element handles and `out` a valid pointer.
enum KmkStatus kmk_element_add(const struct KmkElement *a,
                               const struct KmkElement *b,
                               struct KmkElement **out);

// Noncommutative product of two elements (the star product on
// normally ordered representatives).
//
// # Safety
// `a` and `b` must be live element handles and `out` a valid pointer.
enum KmkStatus kmk_element_mul(const struct KmkElement *a,
                               const struct KmkElement *b,
                               struct KmkElement **out);

// Exact equality of two elements, written to `out`.
//
// # Safety
// `a` and `b` must be live element handles and `out` a valid pointer.
enum KmkStatus kmk_element_eq(const struct KmkElement *a, const struct KmkElement *b, bool *out);

// Apply a symmetry generator (`"P0"`..`"N3"`, case-insensitive) or the
// invariant `"box"` operator to an element.
//
// # Safety
// `name` must be NUL-terminated, `e` a live element handle, `out` valid.
enum KmkStatus kmk_apply(const char *name, const struct KmkElement *e, struct KmkElement **out);

// Exterior derivative of an element as a five-component one-form.
//
// # Safety
// `e` must be a live element handle and `out` a valid pointer.
enum KmkStatus kmk_exterior_d(const struct KmkElement *e, struct KmkOneForm **out);

// Release a one-form handle; a null pointer is ignored.
//
// # Safety
// `w` must have come from this library and not been freed before.
void kmk_oneform_free(struct KmkOneForm *w);

// Extract one basis coefficient of a one-form as a fresh element.
//
// # Safety
// `w` must be a live one-form handle and `out` a valid pointer.
enum KmkStatus kmk_oneform_coeff(const struct KmkOneForm *w,
                                 enum KmkForm label,
                                 struct KmkElement **out);

// Run a verification suite on all monomials of total degree at most
// `max_degree` (2..=10). `boost_sign` is -1 for the shipped convention or
// +1 for the variant that breaks the boost–momentum sector; the calculus
// suite ignores it. Writes the number of failed and total cases; the
// status reports only call errors, not identity failures.
//
// # Safety
// `failed` and `total` must be valid pointers.
enum KmkStatus kmk_check(enum KmkSuite suite,
                         uint32_t max_degree,
                         int32_t boost_sign,
                         uint32_t *failed,
                         uint32_t *total);

// Value of the deformed mass-shell function at momentum (`k0`, `kvec`).
//
// # Safety
// `kvec` must point to three doubles and `out` must be valid.
enum KmkStatus kmk_dispersion_residual(double kappa,
                                       double mass,
                                       const double *kvec,
                                       double k0,
                                       double *out);

// Nonnegative root of the deformed mass shell in the time component.
//
// # Safety
// `kvec` must point to three doubles and `out` must be valid.
enum KmkStatus kmk_solve_k0(double kappa, double mass, const double *kvec, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KMINK_H */
