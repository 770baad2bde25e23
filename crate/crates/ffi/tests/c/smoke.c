#include <stdio.h>
#include "nwe.h"

int main(void) {
    NweStateSet *set = NULL;
    size_t dims[] = {3, 3, 4};
    if (nwe_generate_general(dims, 3, &set) != NWE_STATUS_OK) {
        fprintf(stderr, "generate: %s\n", nwe_last_error_message());
        return 1;
    }
    size_t len = 0;
    bool certified = false;
    nwe_state_set_len(set, &len);
    nwe_verify_all(set, &certified);
    printf("%zu states, certified=%d\n", len, certified);
    if (nwe_generate_equal(2, 3, &set) != NWE_STATUS_INVALID_PARAMETER) {
        return 1;
    }
    printf("error: %s\n", nwe_last_error_message());
    nwe_state_set_free(set);
    return len == 9 && certified ? 0 : 1;
}
