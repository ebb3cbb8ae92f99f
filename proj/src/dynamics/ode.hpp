#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "wqed/dynamics.hpp"

namespace wqed::detail {

// Dormand-Prince 5(4) with standard step-size control. rhs(t, y, dy).
template <class Rhs>
void dopri5(Rhs&& rhs, Vec& y, double t0, double t1, const OdeOptions& opt) {
    if (t1 <= t0) return;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Eigen::Index n = y.size();
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);

    rhs(t0, y, k1);
    double scale0 = opt.atol + opt.rtol * y.cwiseAbs().maxCoeff();
    double d1 = k1.cwiseAbs().maxCoeff();
    double h = (d1 > 0.0) ? 0.01 * scale0 / d1 : 1e-3 * (t1 - t0);
    h = std::clamp(h, 1e-12 * (t1 - t0), t1 - t0);

    double t = t0;
    std::size_t steps = 0;
    double err_prev = 1e-4;
    while (t < t1) {
        if (++steps > opt.max_steps) throw IntegrationError("dopri5: step budget exhausted at t=" + std::to_string(t));
        if (t + h > t1) h = t1 - t;
        if (h < 1e-15 * std::max(1.0, std::abs(t)))
            throw IntegrationError("dopri5: step size underflow at t=" + std::to_string(t));

        tmp = y + h * a21 * k1;
        rhs(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, tmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double en = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            en = std::max(en, std::abs(err(i)) / sc);
        }
        if (!std::isfinite(en)) {
            h *= 0.1;
            continue;
        }
        if (en <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);
            // PI controller
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            err_prev = std::max(en, 1e-4);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
        }
    }
}

}  // namespace wqed::detail
