/* Minimal C consumer: parse, reorder, differentiate, check, solve. */

#include "kmink.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

static void expect(int ok, const char *what) {
    printf("%s: %s\n", what, ok ? "ok" : "FAILED");
    if (!ok) {
        failures += 1;
    }
}

int main(void) {
    KmkElement *e = NULL;
    expect(kmk_parse("x1*x0", &e) == KMK_STATUS_OK, "parse x1*x0");

    char *s = NULL;
    expect(kmk_element_to_string(e, &s) == KMK_STATUS_OK, "render");
    expect(strcmp(s, ":x0*x1: - i/k :x1:") == 0, "canonical form");
    kmk_string_free(s);

    KmkOneForm *d = NULL;
    expect(kmk_exterior_d(e, &d) == KMK_STATUS_OK, "exterior derivative");
    KmkElement *c = NULL;
    expect(kmk_oneform_coeff(d, KMK_FORM_T1, &c) == KMK_STATUS_OK, "t1 coefficient");
    expect(kmk_element_to_string(c, &s) == KMK_STATUS_OK, "render coefficient");
    expect(strcmp(s, ":x0:") == 0, "t1 coefficient value");
    kmk_string_free(s);
    kmk_element_free(c);
    kmk_oneform_free(d);

    KmkElement *boxed = NULL;
    KmkElement *sq = NULL;
    expect(kmk_parse("x0^2", &sq) == KMK_STATUS_OK, "parse x0^2");
    expect(kmk_apply("box", sq, &boxed) == KMK_STATUS_OK, "apply box");
    expect(kmk_element_to_string(boxed, &s) == KMK_STATUS_OK, "render box");
    expect(strcmp(s, "1/4") == 0, "box value");
    kmk_string_free(s);
    kmk_element_free(boxed);
    kmk_element_free(sq);
    kmk_element_free(e);

    expect(kmk_parse("x4", &e) == KMK_STATUS_SYNTAX, "syntax error status");
    expect(strstr(kmk_last_error_message(), "syntax error") != NULL, "error message");

    uint32_t failed = 99;
    uint32_t total = 0;
    expect(kmk_check(KMK_SUITE_RELATIONS, 2, -1, &failed, &total) == KMK_STATUS_OK,
           "relations suite runs");
    expect(failed == 0 && total == 675, "relations suite passes");

    double kvec[3] = {0.0, 0.0, 0.0};
    double root = 0.0;
    expect(kmk_solve_k0(1.0, 1.0, kvec, &root) == KMK_STATUS_OK, "solve k0");
    expect(fabs(root - 2.0 * asinh(0.5)) < 1e-12, "rest-frame root");

    printf(failures == 0 ? "demo passed\n" : "demo FAILED\n");
    return failures == 0 ? 0 : 1;
}
