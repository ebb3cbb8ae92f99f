#include <doctest.h>

#include <random>
#include <vector>

#include "wqed/kernels.hpp"
#include "wqed/types.hpp"

using namespace wqed;
namespace k = wqed::kernels;

namespace {

std::vector<cplx> random_matrix(std::size_t n, unsigned seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> d;
    std::vector<cplx> v(n * n);
    for (auto& x : v) x = {d(g), d(g)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("scalar gemm agrees with Eigen") {
    for (std::size_t n : {1u, 3u, 4u, 7u, 16u}) {
        auto a = random_matrix(n, 1), b = random_matrix(n, 2);
        std::vector<cplx> c(n * n);
        k::scalar::cgemm_nn(n, a.data(), b.data(), c.data());
        Eigen::Map<Mat> A(a.data(), n, n), B(b.data(), n, n), C(c.data(), n, n);
        CHECK((C - A * B).cwiseAbs().maxCoeff() < 1e-12);
        k::scalar::cgemm_nc(n, a.data(), b.data(), c.data());
        CHECK((C - A * B.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("avx2 kernels match scalar") {
    if (!k::available(k::Isa::avx2)) {
        MESSAGE("avx2 not available on this host");
        return;
    }
    const auto& s = k::table(k::Isa::scalar);
    const auto& v = k::table(k::Isa::avx2);
    for (std::size_t n : {1u, 2u, 5u, 8u, 13u, 32u}) {
        auto a = random_matrix(n, 3), b = random_matrix(n, 4);
        std::vector<cplx> c1(n * n), c2(n * n);
        s.cgemm_nn(n, a.data(), b.data(), c1.data());
        v.cgemm_nn(n, a.data(), b.data(), c2.data());
        CHECK(max_diff(c1, c2) < 1e-12 * static_cast<double>(n));
        s.cgemm_nc(n, a.data(), b.data(), c1.data());
        v.cgemm_nc(n, a.data(), b.data(), c2.data());
        CHECK(max_diff(c1, c2) < 1e-12 * static_cast<double>(n));

        auto y1 = b, y2 = b;
        s.caxpy(n * n, cplx{0.3, -1.1}, a.data(), y1.data());
        v.caxpy(n * n, cplx{0.3, -1.1}, a.data(), y2.data());
        CHECK(max_diff(y1, y2) < 1e-14);
    }
}

TEST_CASE("dispatch can be forced") {
    const auto before = k::active().isa;
    CHECK(k::select(k::Isa::scalar));
    CHECK(k::active().isa == k::Isa::scalar);
    CHECK(k::name(k::Isa::scalar) == "scalar");
    k::select(before);
}
