#include <doctest.h>

#include <cmath>

#include "wqed/basis.hpp"

using namespace wqed;

TEST_CASE("basis size for one three-level ensemble") {
    EnsembleSpec e{5, {"g", "e", "s"}, {}};
    CHECK(build_basis({e}, 0).dim() == 1);
    CHECK(build_basis({e}, 1).dim() == 3);
    CHECK(build_basis({e}, 2).dim() == 6);
    // all symmetric states of 2 atoms over 3 levels
    CHECK(build_basis({EnsembleSpec{2, {"g", "e", "s"}, {}}}, 5).dim() == 6);
}

TEST_CASE("collective operator amplitudes") {
    EnsembleSpec e{4, {"g", "e"}, {}};
    auto b = build_basis({e}, 4);
    const Mat s = collective(b, 0, "e", "g");
    for (long n = 0; n < 4; ++n) {
        const auto from = b.at(BasisState{{{4 - n, n}}});
        const auto to = b.at(BasisState{{{3 - n, n + 1}}});
        CHECK(std::abs(s(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from))) ==
              doctest::Approx(std::sqrt((4.0 - n) * (n + 1.0))));
    }
    const Mat ne = number(b, 0, "e");
    CHECK(ne.isApprox(Mat(ne.diagonal().asDiagonal())));
    // [S+, S-] = 2 Sz on the full symmetric space
    const Mat sm = collective(b, 0, "g", "e");
    const Mat sz = 0.5 * (number(b, 0, "e") - number(b, 0, "g"));
    CHECK((s * sm - sm * s - 2.0 * sz).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("filters and explicit bases") {
    EnsembleSpec a{2, {"0", "1", "2"}, {0, 2, 0}};
    auto b = build_basis({a}, 1, [](const BasisState& s) { return s.count(0, 0) == 0; });
    CHECK(b.dim() == 2);
    CHECK_THROWS(b.at(BasisState{{{1, 1, 0}}}));
    const Vec v = basis_vector(b, BasisState{{{0, 2, 0}}});
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("unknown level names are rejected") {
    EnsembleSpec e{2, {"g", "e"}, {}};
    auto b = build_basis({e}, 1);
    CHECK_THROWS(collective(b, 0, "x", "g"));
}
