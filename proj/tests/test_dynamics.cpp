#include <doctest.h>

#include <cmath>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"

using namespace wqed;

namespace {

LindbladModel two_level(double omega, double gamma, bool as_loss) {
    LindbladModel m;
    Mat sm = Mat::Zero(2, 2);
    sm(0, 1) = 1.0;  // |g><e|, index 0 = g
    m.H = 0.5 * omega * (sm + sm.adjoint());
    Mat ne = Mat::Zero(2, 2);
    ne(1, 1) = 1.0;
    if (as_loss)
        m.losses.push_back({"star", gamma, ne, ChannelKind::free_space});
    else
        m.jumps.push_back({"decay", gamma, sm, ChannelKind::collective});
    return m;
}

Vec excited() {
    Vec v = Vec::Zero(2);
    v(1) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("loss sink follows exponential decay") {
    auto m = two_level(0.0, 0.7, true);
    for (double t : {0.1, 1.0, 3.0}) {
        auto r = integrate_lindblad(m, DensityOperator::pure(excited(), 1), t);
        CHECK(r.sinks[0] == doctest::Approx(1.0 - std::exp(-0.7 * t)).epsilon(1e-9));
        CHECK(r.trace() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("recycled decay returns population to ground") {
    auto m = two_level(0.0, 2.0, false);
    auto r = integrate_lindblad(m, DensityOperator::pure(excited()), 1.5);
    CHECK(r.rho(0, 0).real() == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-9));
    CHECK(r.min_eigenvalue() > -1e-10);
    CHECK(r.hermiticity_error() < 1e-12);
}

TEST_CASE("undamped Rabi flopping") {
    auto m = two_level(2.0, 0.0, true);
    Vec g = Vec::Zero(2);
    g(0) = 1.0;
    auto r = integrate_lindblad(m, DensityOperator::pure(g, 1), 0.4);
    CHECK(r.rho(1, 1).real() == doctest::Approx(std::pow(std::sin(0.4), 2)).epsilon(1e-9));
    const Vec psi = evolve_nonhermitian(m.h_eff(), g, 0.4);
    CHECK(std::norm(psi(1)) == doctest::Approx(r.rho(1, 1).real()).epsilon(1e-9));
}

TEST_CASE("schedule equals sequential integration") {
    auto a = two_level(1.0, 0.3, true), b = two_level(0.0, 0.3, true);
    auto r0 = DensityOperator::pure(excited(), 1);
    auto seq = integrate_lindblad(b, integrate_lindblad(a, r0, 0.5), 0.7);
    auto sch = integrate_lindblad(std::vector<Segment>{{a, 0.5}, {b, 0.7}}, r0);
    CHECK(trace_distance(seq, sch) < 1e-9);
}

TEST_CASE("model validation") {
    auto m = two_level(1.0, 1.0, true);
    m.losses[0].rate = -1.0;
    CHECK_THROWS(m.validate());
    auto ok = two_level(1.0, 1.0, false);
    CHECK(ok.max_antihermitian_eigenvalue() <= 1e-12);
}

TEST_CASE("propagator is unitary for Hermitian H") {
    Mat h(2, 2);
    h << 0.3, cplx(0.1, 0.2), cplx(0.1, -0.2), -0.5;
    const Mat u = propagator(h, 2.0);
    CHECK((u.adjoint() * u - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}
