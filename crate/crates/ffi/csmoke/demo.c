/* Smoke test of the C interface: parse a measure, analyze it, check a
 * candidate, and exercise the error paths. Exits nonzero on the first
 * unexpected result. */

#include <stdio.h>
#include <string.h>

#include "levelset.h"

static int fail(const char *what) {
    fprintf(stderr, "FAIL %s: %s\n", what, ls_last_error());
    return 1;
}

int main(void) {
    printf("levelset %s\n", ls_version());

    LsMeasure *measure = NULL;
    if (ls_measure_parse_json("{\"atoms\":[\"1\",\"2\",\"4\",\"5\"],\"kappa\":\"0\"}",
                              &measure) != LsStatus_Ok) {
        return fail("parse");
    }
    if (ls_measure_atom_count(measure) != 4) {
        return fail("atom count");
    }

    char *report = NULL;
    if (ls_analyze_json(measure, NULL, &report) != LsStatus_Ok) {
        return fail("analyze");
    }
    if (strstr(report, "\"verdict\":\"non_unique\"") == NULL) {
        fprintf(stderr, "FAIL verdict missing in %s\n", report);
        return 1;
    }
    ls_string_free(report);

    char *check = NULL;
    if (ls_check_json(measure, "{\"atoms\":[\"7\",\"6\",\"2\",\"1\"]}",
                      LsCheckMode_Order, NULL, &check) != LsStatus_Ok) {
        return fail("check");
    }
    if (strstr(check, "\"holds\":true") == NULL) {
        fprintf(stderr, "FAIL check did not hold: %s\n", check);
        return 1;
    }
    ls_string_free(check);
    ls_measure_free(measure);

    /* Error paths: bad rational, then a null argument. */
    LsMeasure *bad = NULL;
    if (ls_measure_parse_json("{\"atoms\":[\"1/0\"]}", &bad) != LsStatus_InvalidInput) {
        return fail("bad rational accepted");
    }
    if (strlen(ls_last_error()) == 0) {
        return fail("no error message");
    }
    if (ls_measure_parse_json(NULL, &bad) != LsStatus_NullPointer) {
        return fail("null accepted");
    }

    printf("c smoke test passed\n");
    return 0;
}
