// Built with -mavx2 -mfma. Only plain doubles here: no inline library code
// compiled for AVX2 may leak into the rest of the binary.
#include <immintrin.h>

#include <cstddef>

#include "wqed/kernels.hpp"

namespace wqed::kernels::avx2 {

namespace {

// y[0..n) += (ar + i ai) * x[0..n), complex interleaved.
inline void axpy_impl(std::size_t n, double ar, double ai, const double* x, double* y) {
    const __m256d vr = _mm256_set1_pd(ar);
    const __m256d vi = _mm256_set1_pd(ai);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d x0 = _mm256_loadu_pd(x + 2 * k);
        __m256d x1 = _mm256_loadu_pd(x + 2 * k + 4);
        __m256d s0 = _mm256_permute_pd(x0, 0x5);
        __m256d s1 = _mm256_permute_pd(x1, 0x5);
        __m256d p0 = _mm256_fmaddsub_pd(vr, x0, _mm256_mul_pd(vi, s0));
        __m256d p1 = _mm256_fmaddsub_pd(vr, x1, _mm256_mul_pd(vi, s1));
        _mm256_storeu_pd(y + 2 * k, _mm256_add_pd(_mm256_loadu_pd(y + 2 * k), p0));
        _mm256_storeu_pd(y + 2 * k + 4, _mm256_add_pd(_mm256_loadu_pd(y + 2 * k + 4), p1));
    }
    for (; k + 2 <= n; k += 2) {
        __m256d x0 = _mm256_loadu_pd(x + 2 * k);
        __m256d s0 = _mm256_permute_pd(x0, 0x5);
        __m256d p0 = _mm256_fmaddsub_pd(vr, x0, _mm256_mul_pd(vi, s0));
        _mm256_storeu_pd(y + 2 * k, _mm256_add_pd(_mm256_loadu_pd(y + 2 * k), p0));
    }
    for (; k < n; ++k) {
        const double xr = x[2 * k], xi = x[2 * k + 1];
        y[2 * k] += ar * xr - ai * xi;
        y[2 * k + 1] += ar * xi + ai * xr;
    }
}

inline void zero(std::size_t n, double* c) {
    for (std::size_t i = 0; i < 2 * n; ++i) c[i] = 0.0;
}

}  // namespace

void caxpy(std::size_t n, const double* a, const double* x, double* y) {
    axpy_impl(n, a[0], a[1], x, y);
}

void cgemm_nn(std::size_t n, const double* a, const double* b, double* c) {
    for (std::size_t j = 0; j < n; ++j) {
        double* cj = c + 2 * j * n;
        zero(n, cj);
        for (std::size_t k = 0; k < n; ++k) {
            const double br = b[2 * (k + j * n)], bi = b[2 * (k + j * n) + 1];
            if (br == 0.0 && bi == 0.0) continue;
            axpy_impl(n, br, bi, a + 2 * k * n, cj);
        }
    }
}

void cgemm_nc(std::size_t n, const double* a, const double* b, double* c) {
    for (std::size_t j = 0; j < n; ++j) {
        double* cj = c + 2 * j * n;
        zero(n, cj);
        for (std::size_t k = 0; k < n; ++k) {
            const double br = b[2 * (j + k * n)], bi = -b[2 * (j + k * n) + 1];
            if (br == 0.0 && bi == 0.0) continue;
            axpy_impl(n, br, bi, a + 2 * k * n, cj);
        }
    }
}

}  // namespace wqed::kernels::avx2
