#include <math.h>
#include <stdio.h>

#include "cqt.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "check failed: %s (line %d)\n",      \
                    #cond, __LINE__);                            \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    CqtParams p = {1.0, 0.0, 65.0, 1.0};
    CqtRabi rabi;
    CHECK(cqt_rabi_frequencies(&p, &rabi) == CQT_STATUS_OK);
    CHECK(rabi.f == 130.0);

    CqtComplex row[CQT_N_MODES];
    CHECK(cqt_transfer_coefficients(&p, 4.4464, row) == CQT_STATUS_OK);
    double u6 = row[5].re * row[5].re + row[5].im * row[5].im;
    CHECK(u6 >= 0.999);

    CqtTransferResult r;
    CHECK(cqt_find_transfer_time(&p, 0.0, 10.0, 1e-4, &r) == CQT_STATUS_OK);
    CHECK(fabs(r.t_star - 4.4464) < 1e-3);

    CqtTrajectory *traj = NULL;
    CHECK(cqt_trajectory_new(&p, 5.0, 51, &traj) == CQT_STATUS_OK);
    CHECK(cqt_trajectory_len(traj) == 51);
    CqtTrajectoryPoint pt;
    CHECK(cqt_trajectory_get(traj, 50, &pt) == CQT_STATUS_OK);
    CHECK(fabs(pt.f_pop + pt.u2 + pt.u4 + pt.u6 - 1.0) < 1e-9);
    CHECK(cqt_trajectory_get(traj, 51, &pt) == CQT_STATUS_OUT_OF_RANGE);
    cqt_trajectory_free(traj);

    CqtParams bad = {1.0, 0.0, -1.0, 1.0};
    CHECK(cqt_rabi_frequencies(&bad, &rabi) == CQT_STATUS_INVALID_ARGUMENT);
    CHECK(cqt_last_error_message() != NULL);

    printf("t_star=%.6f quality=%.6f version=%s\n", r.t_star, r.quality, cqt_version());
    return 0;
}
