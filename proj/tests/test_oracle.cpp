#include <doctest.h>

#include <cmath>

#include "wqed/oracle.hpp"
#include "wqed/zeno.hpp"

using namespace wqed;

TEST_CASE("embedding is an isometry") {
    SystemSpec s;
    s.ensembles = {EnsembleSpec{3, {"g", "e", "s"}, {}}};
    auto b = build_basis(s.ensembles, 3);
    const Mat V = symmetric_embedding(s, b);
    CHECK(V.rows() == 27);
    CHECK((V.adjoint() * V - Mat::Identity(b.dim(), b.dim())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single atom: both realizations coincide") {
    SystemSpec s;
    s.ensembles = {EnsembleSpec{1, {"g", "e"}, {}}};
    s.drive = {{{0, "e", "g"}, cplx{0.4, 0.0}}};
    s.waveguide = {{"coll", 2.0, {{0, "g", "e"}}}};
    s.losses = {{"star", 1.0, 0, "e"}};
    auto b = build_basis(s.ensembles, 1);
    auto red = symmetric_model(s, b);
    auto full = full_model(s);
    Vec g = Vec::Zero(2);
    g(0) = 1.0;
    auto r1 = integrate_lindblad(red, DensityOperator::pure(g, 1), 2.0);
    auto r2 = full_lindblad(s, DensityOperator::pure(symmetric_embedding(s, b) * g, 1), 2.0);
    CHECK(compare_with_symmetric(r2, r1, symmetric_embedding(s, b)) < 1e-9);
}

TEST_CASE("collective decay stays symmetric") { CHECK(oracle_antisymmetric_leak(10.0, 1.0) < 1e-10); }

TEST_CASE("symmetric reduction reproduces full-space dynamics") {
    CHECK(oracle_protocol1(3, 0.05, 100.0).deviation < 1e-8);
    CHECK(oracle_protocol1(2, 0.1, 10.0).deviation < 1e-8);
    CHECK(oracle_zeno(2, 100.0).deviation < 1e-8);
    CHECK(oracle_zeno(1, 20.0).deviation < 1e-8);
}

TEST_CASE("misplaced atom breaks the reduction") {
    CHECK(oracle_protocol1(3, 0.3, 100.0, 0.25).deviation > 1e-3);
    CHECK(oracle_zeno(2, 100.0, 0.25).deviation > 1e-3);
    // a full wavelength is harmless
    CHECK(oracle_zeno(2, 100.0, 1.0).deviation < 1e-8);
}

TEST_CASE("oracle limits") {
    SystemSpec s;
    s.ensembles = {EnsembleSpec{4, {"g", "e"}, {}}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
}
