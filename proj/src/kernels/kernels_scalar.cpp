#include "wqed/kernels.hpp"

namespace wqed::kernels::scalar {

void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void cgemm_nn(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    for (std::size_t j = 0; j < n; ++j) {
        cplx* cj = c + j * n;
        for (std::size_t i = 0; i < n; ++i) cj[i] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx bkj = b[k + j * n];
            if (bkj == cplx{}) continue;
            caxpy(n, bkj, a + k * n, cj);
        }
    }
}

void cgemm_nc(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    for (std::size_t j = 0; j < n; ++j) {
        cplx* cj = c + j * n;
        for (std::size_t i = 0; i < n; ++i) cj[i] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx bjk = std::conj(b[j + k * n]);
            if (bjk == cplx{}) continue;
            caxpy(n, bjk, a + k * n, cj);
        }
    }
}

}  // namespace wqed::kernels::scalar
