#pragma once

#include <utility>
#include <vector>

#include "wqed/dynamics.hpp"

namespace wqed::detail {

// d rho = -i(H_eff rho - rho H_eff^dag) + sum rate O rho O^dag ; d sink_l = rate_l Tr(K_l rho)
// Holds scratch buffers, so one instance per thread.
struct LindbladRhs {
    explicit LindbladRhs(const LindbladModel& m);

    // recycle=false drops the O rho O^dag feed (used by the jump hierarchy).
    void apply(const cplx* rho, cplx* drho, cplx* dsinks, bool recycle) const;

    Eigen::Index d;
    Mat heff;
    std::vector<std::pair<double, Mat>> jumps;   // rate, O
    std::vector<std::pair<double, Mat>> losses;  // rate, K^T
    mutable Mat t1, t2;
};

}  // namespace wqed::detail
