#include <doctest.h>

#include <cmath>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"

using namespace wqed;

namespace {

// three levels: e decays to g (recycled) or is lost
LindbladModel lambda_model(double g1, double gs) {
    LindbladModel m;
    m.H = Mat::Zero(2, 2);
    Mat sm = Mat::Zero(2, 2);
    sm(0, 1) = 1.0;
    Mat ne = Mat::Zero(2, 2);
    ne(1, 1) = 1.0;
    m.jumps.push_back({"coll", g1, sm, ChannelKind::collective});
    m.losses.push_back({"star", gs, ne, ChannelKind::free_space});
    return m;
}

}  // namespace

TEST_CASE("jump series branching ratios") {
    auto m = lambda_model(3.0, 1.0);
    Vec e = Vec::Zero(2);
    e(1) = 1.0;
    auto p = jump_series_probabilities(m, e, 30.0, 1);
    CHECK(p.at("coll") == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(p.at("star") == doctest::Approx(0.25).epsilon(1e-8));
    double tot = 0;
    for (const auto& [k, v] : p) tot += v;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("jump series reconstructs the master equation") {
    auto m = lambda_model(1.0, 0.5);
    m.H(0, 1) = m.H(1, 0) = 0.8;
    Vec g = Vec::Zero(2);
    g(0) = 1.0;
    const Mat rho0 = g * g.adjoint();
    auto js = jump_series({{m, 2.0}}, rho0, 4);
    auto r = integrate_lindblad(m, DensityOperator::pure(g, 1), 2.0);
    // truncation at four jumps leaves a tiny remainder
    CHECK((js.reconstruct() - r.rho).cwiseAbs().maxCoeff() < 1e-3);
    CHECK(js.total() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("relaxation branching matches long integration") {
    auto m = lambda_model(2.0, 0.5);
    Mat r0 = Mat::Zero(1, 1);
    r0(0, 0) = 0.6;
    auto b = relaxation_branching(m, {1}, r0);
    CHECK(b.probability.at("coll") == doctest::Approx(0.6 * 0.8).epsilon(1e-10));
    CHECK(b.probability.at("star") == doctest::Approx(0.6 * 0.2).epsilon(1e-10));
}
