#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wqed/zeno.hpp"

using namespace wqed;

TEST_CASE("optimal drive parameters") {
    auto p = ZenoParams::optimal(0, 100, 100.0);
    CHECK(p.omega == doctest::Approx(std::sqrt(101.0 * 100.0)));
    CHECK(p.T * std::sqrt(1.0 / 101.0) * p.omega == doctest::Approx(std::numbers::pi));
    CHECK(p.dark_weight() == doctest::Approx(100.0 / 101.0));
    CHECK_THROWS_AS(ZenoParams::optimal(0, 0, 100.0).validate(), ConfigError);
}

TEST_CASE("dark state is not driven by the waveguide") {
    auto p = ZenoParams::optimal(2, 30, 50.0);
    auto z = zeno_model(p, 0.0);
    const Vec d = z.dark();
    for (const auto& j : z.model.jumps) CHECK((j.op * d).norm() < 1e-12);
}

TEST_CASE("closed-form success against the 3x3 propagator") {
    for (double P : {10.0, 100.0, 1000.0})
        for (long k : {0L, 1L, 5L}) {
            auto zp = ZenoParams::optimal(k, 100, P);
            CHECK(zeno_numeric_success(zp) == doctest::Approx(zeno_success_probability(k, 100, P)).epsilon(0.05));
        }
}

TEST_CASE("analytic and master-equation populations") {
    auto zp = ZenoParams::optimal(0, 100, 100.0);
    std::vector<double> t;
    for (int i = 0; i <= 40; ++i) t.push_back(zp.T * i / 40.0);
    auto a = zeno_analytic_populations(zp, t), n = zeno_numeric_populations(zp, t);
    double worst = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        worst = std::max({worst, std::abs(a.dark[i] - n.dark[i]), std::abs(a.target[i] - n.target[i])});
    CHECK(worst < 0.02);
}

TEST_CASE("jump probabilities close and obey bounds") {
    auto zp = ZenoParams::optimal(0, 100, 100.0);
    auto j = zeno_jump_probabilities(zp);
    CHECK(std::abs(j.closure) < 1e-8);
    CHECK(j.a1 <= std::numbers::pi / (2.0 * std::sqrt(100.0)) + 1e-12);
    CHECK(j.b1 <= j.bound_b1 + 1e-12);
    CHECK(j.a2 < 1e-6);
    CHECK(j.b2 < 1e-6);
    CHECK(j.success == doctest::Approx(zeno_numeric_success(zp)).epsilon(1e-6));
}
