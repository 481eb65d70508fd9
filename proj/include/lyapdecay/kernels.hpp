#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace lyapdecay::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

/// c = a * b for n x n row-major matrices. c must not alias a or b.
using MatmulFn = void (*)(const cplx* a, const cplx* b, cplx* c, std::size_t n);
/// y = a * x, y must not alias x.
using MatvecFn = void (*)(const cplx* a, const cplx* x, cplx* y, std::size_t n);

namespace scalar {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define LYAPDECAY_HAVE_AVX2_KERNELS 1
namespace avx2 {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define LYAPDECAY_HAVE_NEON_KERNELS 1
namespace neon {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
}  // namespace neon
#endif

/// True if the running CPU can execute the given backend.
bool backend_supported(Backend b);

/// Backend chosen at first use: best supported, unless LYAPDECAY_SIMD=scalar.
Backend active_backend();
std::string_view backend_name(Backend b);

MatmulFn matmul_for(Backend b);
MatvecFn matvec_for(Backend b);

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);

}  // namespace lyapdecay::kernels
