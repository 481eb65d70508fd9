#include "lyapdecay/kernels.hpp"

#include <arm_neon.h>

namespace lyapdecay::kernels::neon {

namespace {

// s * v with s broadcast as (sr, sr) and (si, si); v = (vr, vi).
inline float64x2_t cmul_broadcast(float64x2_t sr, float64x2_t si, float64x2_t v) {
    static const double sign_data[2] = {-1.0, 1.0};
    const float64x2_t sign = vld1q_f64(sign_data);
    const float64x2_t swapped = vextq_f64(v, v, 1);
    return vaddq_f64(vmulq_f64(sr, v), vmulq_f64(vmulq_f64(si, swapped), sign));
}

}  // namespace

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        double* cr = reinterpret_cast<double*>(c + i * n);
        for (std::size_t j = 0; j < 2 * n; ++j) cr[j] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const float64x2_t ar = vdupq_n_f64(a[i * n + k].real());
            const float64x2_t ai = vdupq_n_f64(a[i * n + k].imag());
            const double* br = bd + 2 * k * n;
            for (std::size_t j = 0; j < n; ++j) {
                const float64x2_t prod = cmul_broadcast(ar, ai, vld1q_f64(br + 2 * j));
                vst1q_f64(cr + 2 * j, vaddq_f64(vld1q_f64(cr + 2 * j), prod));
            }
        }
    }
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    double* yd = reinterpret_cast<double*>(y);
    const double* ad = reinterpret_cast<const double*>(a);
    for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const float64x2_t xr = vdupq_n_f64(x[j].real());
        const float64x2_t xi = vdupq_n_f64(x[j].imag());
        for (std::size_t i = 0; i < n; ++i) {
            const float64x2_t prod = cmul_broadcast(xr, xi, vld1q_f64(ad + 2 * (i * n + j)));
            vst1q_f64(yd + 2 * i, vaddq_f64(vld1q_f64(yd + 2 * i), prod));
        }
    }
}

}  // namespace lyapdecay::kernels::neon
