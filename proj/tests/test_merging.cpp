#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wqed/merging.hpp"

using namespace wqed;

TEST_CASE("beam splitter basics") {
    auto s = FockVector::number(1, 1, 4);
    auto o = apply_beamsplitter(s, BeamSplitter::fifty_fifty());
    CHECK(std::abs(o(1, 1)) < 1e-15);
    CHECK(std::norm(o(2, 0)) == doctest::Approx(0.5));
    auto one = apply_beamsplitter(FockVector::number(1, 0, 2), BeamSplitter::fifty_fifty());
    CHECK(std::norm(one(1, 0)) == doctest::Approx(0.5));
    CHECK(std::norm(one(0, 1)) == doctest::Approx(0.5));
    auto id = apply_beamsplitter(FockVector::number(2, 1, 3), BeamSplitter::transmissivity(1.0));
    CHECK(std::abs(id(2, 1) - 1.0) < 1e-15);
    CHECK_THROWS_AS(apply_beamsplitter(FockVector::number(2, 2, 3), BeamSplitter::fifty_fifty()), std::out_of_range);
    CHECK_THROWS(BeamSplitter{{1.0, 0.0}, {0.1, 0.0}}.validate());
}

TEST_CASE("beam splitter preserves the norm") {
    auto s = FockVector::two(12);
    s(3, 2) = {0.6, 0.0};
    s(1, 4) = {0.0, 0.8};
    auto o = apply_beamsplitter(s, BeamSplitter::transmissivity(0.3));
    CHECK(o.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f_p small values") {
    CHECK(fp_5050(0, 0, 0) == doctest::Approx(1.0));
    CHECK(fp_5050(1, 1, 0) * fp_5050(1, 1, 0) == doctest::Approx(0.5));
    CHECK(fp_5050(1, 1, 1) == 0.0);
    CHECK(fp_5050_squared_exact(1, 1, 0) == Rational{"1", "2"});
}

TEST_CASE("f_p normalization up to 60") {
    for (long m = 0; m <= 60; m += 6)
        for (long n = 0; n <= 60; n += 5) CHECK(std::abs(fp_norm(m, n) - 1.0) < 1e-10);
}

TEST_CASE("f_p equals the beam splitter amplitudes") {
    for (int m = 0; m <= 12; m += 3)
        for (int n = 0; n <= 12; n += 4) {
            auto o = apply_beamsplitter(FockVector::number(m, n, m + n), BeamSplitter::fifty_fifty());
            for (int p = 0; p <= m + n; ++p) CHECK(std::abs(o(m + n - p, p).real() - fp_5050(m, n, p)) < 1e-9);
        }
}

TEST_CASE("even outcomes of equal inputs") {
    for (long m = 1; m <= 30; m += 7)
        for (long n = 0; 2 * n <= 2 * m; ++n) {
            const double lhs = std::pow(fp_5050(m, m, 2 * n), 2);
            const double c = std::exp(std::lgamma(m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m - n + 1.0));
            const double rhs = std::exp(std::lgamma(2.0 * m - 2.0 * n + 1) + std::lgamma(2.0 * n + 1) -
                                        2 * m * std::log(2.0) - 2 * std::lgamma(m + 1.0)) *
                               c * c;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            if (2 * n + 1 <= 2 * m) CHECK(std::abs(fp_5050(m, m, 2 * n + 1)) < 1e-12);
        }
}

TEST_CASE("doubling probabilities") {
    CHECK(doubling_d_exact(1) == Rational{"1", "2"});
    CHECK(doubling_d_exact(2) == Rational{"3", "8"});
    for (long n = 1; n <= 30; ++n) {
        CHECK(fp_5050_squared_exact(n, n, 0) == doubling_d_exact(n));
        CHECK(doubling_d(n) == doctest::Approx(doubling_d_exact(n).value()).epsilon(1e-12));
    }
    CHECK(std::abs(doubling_d(50) * std::sqrt(50 * std::numbers::pi) - 1.0) < 0.01);
}

TEST_CASE("one-by-one transmissivity") {
    auto q1 = one_by_one_q(1);
    CHECK(q1.q == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(q1.transmissivity == doctest::Approx(0.5).epsilon(1e-6));
    double prev = 1.0;
    for (long n = 1; n <= 100; ++n) {
        const auto q = one_by_one_q(n);
        CHECK(std::abs(q.q - one_by_one_q_closed(n)) < 1e-8);
        CHECK(q.q < prev);
        CHECK(q.q > std::exp(-1.0));
        prev = q.q;
    }
    CHECK(one_by_one_q_closed(100) == doctest::Approx(0.3697).epsilon(1e-3));
}

TEST_CASE("one-by-one recursion") {
    CHECK(one_by_one_Rm(1, 0.3) == doctest::Approx(1 / 0.3));
    CHECK(one_by_one_Rm(2, 0.5) == doctest::Approx(6.0));
    for (double p : {0.1, 0.5, 0.9})
        for (long m = 2; m <= 1024; m *= 2) {
            const double lr = one_by_one_log_Rm(m, p);
            CHECK(lr >= (m - 1) * std::log(2.0) - std::log(p) - 1e-9);
            CHECK(lr <= std::log(double(m)) + m - std::log(p));
            CHECK(one_by_one_log_Rm(m, p) - one_by_one_log_Rm(m - 1, p) >= std::log(2.0) - 1e-12);
        }
}

TEST_CASE("doubling recursion") {
    CHECK(doubling_Rm(2, 0.5) == doctest::Approx((1 + 2 * 2.0) / 0.5));
    for (double p : {0.1, 0.5, 0.9})
        for (long m = 8; m <= 1024; m *= 2) {
            const double lr = doubling_log_Rm(m, p);
            const double l2 = std::log2(double(m));
            CHECK(lr >= std::log(m * double(m) / (4 * p)));
            CHECK(lr <= (l2 / 2 + 1) * std::log(double(m)) + std::log(l2 / (2 * p)));
        }
    CHECK(doubling_Rm(6, 0.5) > doubling_Rm(4, 0.5));
}

TEST_CASE("superposition merge") {
    auto r = superposition_merge(FockVector::number(3, 3), FockVector::number(3, 3));
    CHECK(r.probability == doctest::Approx(doubling_d(3)));
    CHECK(std::norm(r.state(6)) == doctest::Approx(1.0));
    auto v = superposition_merge(FockVector::number(0, 0), FockVector::number(0, 0));
    CHECK(v.probability == doctest::Approx(1.0));

    // (a - alpha)|0> (x) (a - beta)|0>, roots scaled by 1/sqrt2
    const cplx alpha{1.0, 0.0}, beta{0.0, 1.0};
    auto root = [](cplx z) {
        auto f = FockVector::single(1);
        f(0) = -std::conj(z) / std::sqrt(2.0);
        f(1) = 1.0;
        f.normalize();
        return f;
    };
    auto m = superposition_merge(root(alpha), root(beta));
    // (a^dag - a*)(a^dag - b*)|0> = |2> sqrt2 - (a*+b*)|1> + a* b*|0>
    const cplx c0 = std::conj(alpha) * std::conj(beta), c1 = -(std::conj(alpha) + std::conj(beta));
    const cplx c2 = std::sqrt(2.0);
    const double nn = std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
    const cplx phase = m.state(2) / (c2 / nn);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(std::abs(m.state(1) - phase * c1 / nn) < 1e-12);
    CHECK(std::abs(m.state(0) - phase * c0 / nn) < 1e-12);
}

TEST_CASE("excitation trimming") {
    auto same = excitation_trim(FockVector::number(4, 6), 4, 0.1);
    CHECK(same.expected_attempts == 0.0);
    auto t = excitation_trim(FockVector::number(4, 6), 3, std::sqrt(0.1 / 4));
    CHECK(std::norm(t.state(3)) == doctest::Approx(1.0));
    auto two = excitation_trim(FockVector::number(2, 4), 1, 0.1);
    CHECK(two.reduction_probability[0] == doctest::Approx(0.02).epsilon(0.02));
    CHECK_THROWS(excitation_trim(FockVector::number(2, 4), 3, 0.1));
    CHECK_THROWS(excitation_trim(FockVector::number(4, 6), 3, 0.5));
    CHECK(trim_attempts(5, 5) == 0.0);
    CHECK(trim_attempts(5, 4) == doctest::Approx(1.0 / trim_single_click_probability(5, std::sqrt(0.02))));
}

TEST_CASE("number-resolved success") {
    CHECK(number_resolved_success(2) == doctest::Approx(0.375));
    const double s = number_resolved_success(100);
    CHECK(s >= 0.31);
    CHECK(s <= 0.35);
    for (long shift : {1L, 3L}) CHECK(number_resolved_success(200, shift) == doctest::Approx(1.0 / 3).epsilon(0.1));
    auto lad = number_resolved_ladder(10);
    CHECK(lad == std::vector<long>{1, 2, 3, 5, 8, 12});
}

TEST_CASE("merge strategy names") {
    for (auto k : {MergeKind::one_by_one, MergeKind::doubling, MergeKind::number_resolved})
        CHECK(merge_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(merge_kind_from_string("zip"), ConfigError);
}

TEST_CASE("number-resolved worst case grows polynomially") {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (long m = 8; m <= 128; ++m) {
        const double x = std::log(double(m)), y = number_resolved_expected(m, 0.5).log_R_final;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope > 4.0);
    CHECK(slope <= 4.6);
    // stays under m^4.41 log_{3/2}(m) / (2p)
    for (long m : {8L, 32L, 128L}) {
        const double bound = std::pow(double(m), 4.41) * std::log(double(m)) / std::log(1.5);
        CHECK(std::exp(number_resolved_expected(m, 0.5).log_R_final) < bound);
    }
}
