#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Dense complex kernels used by the Lindblad right-hand sides.
// Matrices are square, column-major, n x n.
namespace wqed::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct Table {
    Isa isa;
    void (*caxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    void (*cgemm_nn)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
    void (*cgemm_nc)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
};

// y += a * x
void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y);
// c = a * b
void cgemm_nn(std::size_t n, const cplx* a, const cplx* b, cplx* c);
// c = a * b^dagger
void cgemm_nc(std::size_t n, const cplx* a, const cplx* b, cplx* c);

const Table& active();
// Tables compiled into this binary that the host can execute.
const Table& table(Isa isa);
bool available(Isa isa);
// Force a table; returns false if the host cannot run it.
bool select(Isa isa);
std::string_view name(Isa isa);

namespace scalar {
void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y);
void cgemm_nn(std::size_t n, const cplx* a, const cplx* b, cplx* c);
void cgemm_nc(std::size_t n, const cplx* a, const cplx* b, cplx* c);
}  // namespace scalar

namespace avx2 {
// Operate on interleaved (re, im) doubles so this TU never instantiates std::complex code.
void caxpy(std::size_t n, const double* a, const double* x, double* y);
void cgemm_nn(std::size_t n, const double* a, const double* b, double* c);
void cgemm_nc(std::size_t n, const double* a, const double* b, double* c);
}  // namespace avx2

}  // namespace wqed::kernels
