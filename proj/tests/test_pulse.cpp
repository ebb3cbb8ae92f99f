#include <doctest.h>

#include "wqed/zeno.hpp"

using namespace wqed;

TEST_CASE("constant pulse reproduces the 3x3 result") {
    auto zp = ZenoParams::optimal(0, 100, 50.0);
    PulseShape s{{zp.omega}, {zp.T}};
    CHECK(pulse_success(zp, s) == doctest::Approx(zeno_numeric_success(zp)).epsilon(1e-10));
    PulseShape split{{zp.omega, zp.omega, zp.omega}, {zp.T / 3, zp.T / 3, zp.T / 3}};
    CHECK(pulse_success(zp, split) == doctest::Approx(pulse_success(zp, s)).epsilon(1e-10));
}

TEST_CASE("best constant pulse is at least the default drive") {
    auto zp = ZenoParams::optimal(0, 100, 50.0);
    auto [w, p] = best_constant_pulse(zp, zp.T);
    CHECK(p >= zeno_numeric_success(zp) - 1e-12);
    CHECK(w > 0.0);
}

TEST_CASE("shaped pulse beats the constant one at moderate Purcell factor") {
    auto zp = ZenoParams::optimal(0, 100, 50.0);
    auto r = optimize_pulse_shape(zp, 4);
    CHECK(r.ratio > 1.0);
    CHECK(r.p_pulse <= 1.0);
    CHECK(r.shape.omega.size() == 4);
    CHECK(r.shape.total() == doctest::Approx(zp.T));
}
