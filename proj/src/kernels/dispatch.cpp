#include "lyapdecay/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lyapdecay::kernels {

bool backend_supported(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
#if defined(LYAPDECAY_HAVE_AVX2_KERNELS)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::Neon:
#if defined(LYAPDECAY_HAVE_NEON_KERNELS)
        return true;
#else
        return false;
#endif
    }
    return false;
}

namespace {

Backend select_backend() {
    const char* env = std::getenv("LYAPDECAY_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (backend_supported(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend chosen = select_backend();
    return chosen;
}

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "unknown";
}

MatmulFn matmul_for(Backend b) {
#if defined(LYAPDECAY_HAVE_AVX2_KERNELS)
    if (b == Backend::Avx2) return &avx2::matmul;
#endif
#if defined(LYAPDECAY_HAVE_NEON_KERNELS)
    if (b == Backend::Neon) return &neon::matmul;
#endif
    (void)b;
    return &scalar::matmul;
}

MatvecFn matvec_for(Backend b) {
#if defined(LYAPDECAY_HAVE_AVX2_KERNELS)
    if (b == Backend::Avx2) return &avx2::matvec;
#endif
#if defined(LYAPDECAY_HAVE_NEON_KERNELS)
    if (b == Backend::Neon) return &neon::matvec;
#endif
    (void)b;
    return &scalar::matvec;
}

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
    static const MatmulFn fn = matmul_for(active_backend());
    fn(a, b, c, n);
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    static const MatvecFn fn = matvec_for(active_backend());
    fn(a, x, y, n);
}

}  // namespace lyapdecay::kernels
