#include "lyapdecay/kernels.hpp"

namespace lyapdecay::kernels::scalar {

// Explicit products keep the operation order identical to the SIMD variants.
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        double* cr = reinterpret_cast<double*>(c + i * n);
        for (std::size_t j = 0; j < 2 * n; ++j) cr[j] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const double* br = bd + 2 * k * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double xr = br[2 * j], xi = br[2 * j + 1];
                cr[2 * j] += ar * xr - ai * xi;
                cr[2 * j + 1] += ar * xi + ai * xr;
            }
        }
    }
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xr = x[j].real(), xi = x[j].imag();
        for (std::size_t i = 0; i < n; ++i) {
            const double ar = a[i * n + j].real(), ai = a[i * n + j].imag();
            yd[2 * i] += xr * ar - xi * ai;
            yd[2 * i + 1] += xr * ai + xi * ar;
        }
    }
}

}  // namespace lyapdecay::kernels::scalar
