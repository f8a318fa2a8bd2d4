#include <stdio.h>
#include <string.h>

#include "wcover.h"

int main(void) {
    const char *instance =
        "{\"m\": 3, \"elements\": [{\"set\": [1, 2], \"weight\": \"3/2\"}, {\"set\": [3], \"weight\": \"2\"}]}";
    WcOracle *oracle = NULL;
    if (wc_oracle_from_json(instance, &oracle) != WC_STATUS_OK) {
        fprintf(stderr, "oracle: %s\n", wc_last_error());
        return 1;
    }
    char *report = NULL;
    if (wc_oracle_recover(oracle, 2, &report) != WC_STATUS_OK) {
        fprintf(stderr, "recover: %s\n", wc_last_error());
        return 1;
    }
    printf("%s\n", report);
    wc_string_free(report);

    WcOracle *hard = NULL;
    if (wc_oracle_fstar(4, 1, "25", &hard) != WC_STATUS_OK) {
        return 1;
    }
    WcStatus status = wc_oracle_recover(hard, 10, &report);
    printf("fstar: status %d, %s\n", (int)status, wc_last_error());

    wc_oracle_free(hard);
    wc_oracle_free(oracle);
    return status == WC_STATUS_INVALID_INPUT ? 0 : 1;
}
