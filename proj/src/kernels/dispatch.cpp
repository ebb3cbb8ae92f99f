#include <atomic>
#include <cstdlib>
#include <string>

#include "wqed/kernels.hpp"

namespace wqed::kernels {

namespace {

#if defined(WQED_HAVE_AVX2)
void avx2_caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    avx2::caxpy(n, reinterpret_cast<const double*>(&a), reinterpret_cast<const double*>(x),
                reinterpret_cast<double*>(y));
}
void avx2_nn(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    avx2::cgemm_nn(n, reinterpret_cast<const double*>(a), reinterpret_cast<const double*>(b),
                   reinterpret_cast<double*>(c));
}
void avx2_nc(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    avx2::cgemm_nc(n, reinterpret_cast<const double*>(a), reinterpret_cast<const double*>(b),
                   reinterpret_cast<double*>(c));
}
const Table avx2_table{Isa::avx2, avx2_caxpy, avx2_nn, avx2_nc};
#endif

const Table scalar_table{Isa::scalar, scalar::caxpy, scalar::cgemm_nn, scalar::cgemm_nc};

bool host_has_avx2() {
#if defined(WQED_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* pick_default() {
    const char* env = std::getenv("WQED_KERNELS");
    std::string want = env ? env : "auto";
    if (want == "scalar") return &scalar_table;
#if defined(WQED_HAVE_AVX2)
    if (host_has_avx2()) return &avx2_table;
#endif
    return &scalar_table;
}

std::atomic<const Table*>& current() {
    static std::atomic<const Table*> t{pick_default()};
    return t;
}

}  // namespace

bool available(Isa isa) {
    if (isa == Isa::scalar) return true;
    return host_has_avx2();
}

const Table& table(Isa isa) {
#if defined(WQED_HAVE_AVX2)
    if (isa == Isa::avx2 && host_has_avx2()) return avx2_table;
#endif
    (void)isa;
    return scalar_table;
}

bool select(Isa isa) {
    if (!available(isa)) return false;
    current().store(&table(isa));
    return true;
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) { active().caxpy(n, a, x, y); }
void cgemm_nn(std::size_t n, const cplx* a, const cplx* b, cplx* c) { active().cgemm_nn(n, a, b, c); }
void cgemm_nc(std::size_t n, const cplx* a, const cplx* b, cplx* c) { active().cgemm_nc(n, a, b, c); }

}  // namespace wqed::kernels
