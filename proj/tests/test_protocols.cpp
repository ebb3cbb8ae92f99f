#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wqed/protocols.hpp"
#include "wqed/zeno.hpp"

using namespace wqed;

TEST_CASE("parameter validation names the field") {
    PhysicalParams p;
    p.m = p.N;
    try {
        p.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "m");
    }
    p = {};
    p.x = 0.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("protocol 1 closed forms") {
    PhysicalParams p;
    p.P1d = 100;
    p.x = 0.1;
    p.eta = 0.5;
    auto r = protocol1_step(p);
    CHECK(r.p == doctest::Approx(0.5 * 0.01 * 0.99));
    CHECK(r.eps_double == doctest::Approx(0.005));
    p.eta = 1.0;
    CHECK(protocol1_step(p).eps_double == 0.0);
}

TEST_CASE("protocol 1 accumulation") {
    PhysicalParams p;
    auto a = protocol1_accumulate(p, 3, true);
    CHECK(a.R_trace.size() == 3);
    CHECK(a.R_trace[0] == doctest::Approx(1.0 / a.p_trace[0]));
    auto b = protocol1_accumulate(p, 3, false);
    CHECK(b.R_m > b.R_trace[0]);
}

TEST_CASE("protocol 2 is error free and p_b dominates for large detectors") {
    PhysicalParams p;
    p.N = 100;
    p.N_d = 100;
    p.P1d = 100;
    auto r = protocol2_step(p);
    CHECK(r.I_step == 0.0);
    CHECK(r.p == doctest::Approx(r.channels.at("p_a") * r.channels.at("p_b")));
    for (long Nd : {100L, 1000L})
        for (long m = 0; m <= 5; ++m)
            for (double P : {10.0, 100.0, 1000.0}) {
                PhysicalParams q = p;
                q.N_d = Nd;
                q.m = m;
                q.P1d = P;
                auto s = protocol2_step(q);
                CHECK(s.channels.at("p_b") >= s.channels.at("p_a") - 1e-12);
            }
}

TEST_CASE("fig3 curve") {
    auto m = fig3_curve(1e4, {1e3});
    CHECK(m[0] == 46);
    CHECK_THROWS(fig3_curve(0.5, {100.0}));
}

TEST_CASE("protocol 3 step b closed forms") {
    auto b = protocol3_step_b_analytic(1.0, 1.0, 0.0);
    const double e = std::exp(1.0);
    CHECK(b.beta1 == doctest::Approx((e + 1) * (e + 1) / (4 * e * e)));
    CHECK(b.beta2 == doctest::Approx((e - 1) * (e - 1) / (4 * e * e)));
    CHECK(protocol3_pb_star(0.01, 100.0, 1.0) * 100.0 == doctest::Approx(0.67).epsilon(0.01));
}

TEST_CASE("protocol 3 retries approach one third") {
    for (double P : {100.0, 1000.0}) {
        const double t = optimal_retry_window(P);
        double prev = 0;
        for (long r = 1; r <= 200; r *= 2) {
            const double pb = protocol3_cumulative_pb(t, P, 1.0, r);
            CHECK(pb >= prev);
            CHECK(pb <= 1.0 / 3.0 + 0.01);
            prev = pb;
        }
        CHECK(prev > 0.30);
    }
}

TEST_CASE("protocol 3 analytic step") {
    PhysicalParams p;
    p.N = 101;
    p.m = 1;
    p.P1d = 100;
    auto r = protocol3_step(p);
    CHECK(r.p == doctest::Approx(0.072).epsilon(0.01));
    const double i100 = r.I_step;
    p.P1d = 1e4;
    CHECK(protocol3_step(p).I_step < i100 / 50);
}

TEST_CASE("protocol 4 Hamiltonian") {
    PhysicalParams p;
    p.N = 101;
    p.m = 1;
    const Mat h = protocol4_hamiltonian(p);
    const double Nm = 100;
    Vec d(4);
    d << std::sqrt(Nm), -1.0, 1.0, 0.0;
    d /= std::sqrt(Nm + 2);
    // dissipative part annihilates the dark state
    const Mat diss = 0.5 * (h - h.adjoint());
    Mat g = diss;
    for (int i = 0; i < 4; ++i) g(i, i) += cplx(0, 0.5 * p.gamma_star) * (i < 3 ? 1.0 : 0.0);
    CHECK((g * d).norm() < 1e-10);
    CHECK(std::abs(h(3, 3)) == 0.0);
    CHECK(protocol4_default_ratio(p) == doctest::Approx(50.5));
}

TEST_CASE("protocol 4 closed form") {
    PhysicalParams p;
    p.N = 101;
    p.m = 1;
    p.P1d = 100;
    auto r = protocol4_step(p);
    CHECK(r.p == doctest::Approx(100.0 / 102.0 * std::exp(-std::sqrt(3.0) * std::numbers::pi / 10.0)));
    CHECK(r.p == doctest::Approx(0.569).epsilon(0.002));
    CHECK(protocol4_success(p) == doctest::Approx(r.p).epsilon(0.05));
    auto s = protocol4_step(p, true);
    CHECK(s.channels.count("p_reference_form") == 1);
}

TEST_CASE("repetition sampling") {
    auto one = monte_carlo_repetitions(1.0, 1000, 3, true);
    CHECK(one.mean == 1.0);
    CHECK(one.max == 1);
    auto half = monte_carlo_repetitions(0.5, 100000, 11);
    CHECK(std::abs(half.mean - 2.0) < 3 * half.sem);
    auto again = monte_carlo_repetitions(0.5, 100000, 11);
    CHECK(again.mean == half.mean);
    CHECK_THROWS_AS(monte_carlo_repetitions(0.0, 10, 1), ConfigError);
}
