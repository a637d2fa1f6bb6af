#include <stdio.h>
#include <string.h>

#include "rootspin.h"

int main(void) {
    RootspinSystem *g2 = NULL;
    if (rootspin_system_new('G', 2, &g2) != ROOTSPIN_STATUS_OK) {
        return 10;
    }
    if (rootspin_system_root_count(g2) != 6) {
        return 11;
    }
    RootspinCount count;
    if (rootspin_count(g2, ROOTSPIN_METHOD_BRUTE, 0, &count) != ROOTSPIN_STATUS_OK) {
        return 12;
    }
    uint64_t dim = 0;
    if (rootspin_invariant_dimension(g2, 0, &dim) != ROOTSPIN_STATUS_OK) {
        return 13;
    }
    const int8_t signs[6] = {1, 1, 1, -1, -1, 1};
    int64_t sum[2] = {7, 7};
    if (rootspin_signed_sum(g2, signs, 6, sum, 2) != ROOTSPIN_STATUS_OK) {
        return 14;
    }
    rootspin_system_free(g2);

    RootspinSystem *bad = NULL;
    if (rootspin_system_new('C', 2, &bad) != ROOTSPIN_STATUS_INVALID_INPUT) {
        return 15;
    }

    char *json = NULL;
    if (rootspin_analyze_json('E', 7, 0, &json) != ROOTSPIN_STATUS_OK) {
        return 16;
    }
    int e7_zero = strstr(json, "\"zero\":true") != NULL;
    rootspin_string_free(json);

    printf("count=%llu dim=%llu sum=%lld,%lld e7_zero=%d error=%s\n",
           (unsigned long long)count.lo, (unsigned long long)dim,
           (long long)sum[0], (long long)sum[1], e7_zero, rootspin_last_error());
    return 0;
}
