#include <stdio.h>

#include "mixedwalk.h"

int main(void) {
    MwGraph *g = NULL;
    if (mw_graph_cycle(4, 1, &g) != MW_STATUS_OK) {
        fprintf(stderr, "%s\n", mw_last_error());
        return 1;
    }
    MwAngle eta = {MW_ANGLE_KIND_RATIONAL, 1, 2, 0.0};
    MwPeriodReport rep;
    MwStatus st = mw_period(g, eta, 0, 0.0, &rep);
    mw_graph_free(g);
    if (st != MW_STATUS_OK) {
        fprintf(stderr, "%s\n", mw_last_error());
        return 1;
    }
    if (!rep.periodic || rep.cross_check != MW_CROSS_CHECK_AGREE) {
        return 2;
    }
    printf("C_4^1 at pi/2: period %llu\n", (unsigned long long)rep.period);
    return 0;
}
