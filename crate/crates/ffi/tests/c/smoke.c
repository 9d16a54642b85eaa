#include <math.h>
#include <stdio.h>
#include <string.h>

#include "msewitness.h"

#define CHECK(cond)                                                      \
    do {                                                                 \
        if (!(cond)) {                                                   \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    mse_last_error_message());                           \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    /* |GHZ3><GHZ3| has entries 1/2 at the four corners */
    size_t dims[3] = {2, 2, 2};
    double re[64] = {0};
    re[0] = re[7] = re[56] = re[63] = 0.5;

    MseOperator *op = NULL;
    CHECK(mse_operator_new(dims, 3, re, NULL, &op) == MSE_STATUS_OK);
    CHECK(mse_operator_dim(op) == 8);

    MsePartition *part = NULL;
    CHECK(mse_partition_parse("1:2:3", 3, &part) == MSE_STATUS_OK);

    MseSolverConfig cfg = mse_solver_config_default();
    double f = 0.0;
    CHECK(mse_f_bound(op, part, &cfg, &f) == MSE_STATUS_OK);
    CHECK(fabs(f - 0.5) < 1e-10);

    MseWitness *w = NULL;
    CHECK(mse_witness_build(op, part, &cfg, &w) == MSE_STATUS_OK);

    const char *ghz = "{\"dims\":[2,2,2],\"re\":[0.7071067811865476,0,0,0,0,0,0,0.7071067811865476]}";
    MseDensity *rho = NULL;
    CHECK(mse_state_from_json(ghz, &rho) == MSE_STATUS_OK);

    MseVerdict v;
    CHECK(mse_witness_evaluate(w, rho, &v) == MSE_STATUS_OK);
    CHECK(fabs(v.value + 0.5) < 1e-9 && v.detected);

    MsePartition *bad = NULL;
    CHECK(mse_partition_parse("1:1,2", 2, &bad) == MSE_STATUS_INVALID_PARTITION);
    CHECK(strlen(mse_last_error_message()) > 0);

    char *json = NULL;
    CHECK(mse_witness_to_json(w, &json) == MSE_STATUS_OK);
    CHECK(strstr(json, "\"f_sup\"") != NULL);
    mse_string_free(json);

    mse_density_free(rho);
    mse_witness_free(w);
    mse_partition_free(part);
    mse_operator_free(op);
    puts("ok");
    return 0;
}
