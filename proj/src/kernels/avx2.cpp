#include "lyapdecay/kernels.hpp"

#include <immintrin.h>

namespace lyapdecay::kernels::avx2 {

namespace {

// (s_r + i s_i) * [v0, v1] for two packed complex values.
inline __m256d cmul_broadcast(__m256d sr, __m256d si, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(sr, v), _mm256_mul_pd(si, swapped));
}

inline __m128d cmul_broadcast(__m128d sr, __m128d si, __m128d v) {
    const __m128d swapped = _mm_shuffle_pd(v, v, 0x1);
    return _mm_addsub_pd(_mm_mul_pd(sr, v), _mm_mul_pd(si, swapped));
}

}  // namespace

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        double* cr = reinterpret_cast<double*>(c + i * n);
        for (std::size_t j = 0; j < 2 * n; ++j) cr[j] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const __m256d ar = _mm256_set1_pd(a[i * n + k].real());
            const __m256d ai = _mm256_set1_pd(a[i * n + k].imag());
            const double* br = bd + 2 * k * n;
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                const __m256d prod = cmul_broadcast(ar, ai, _mm256_loadu_pd(br + 2 * j));
                _mm256_storeu_pd(cr + 2 * j, _mm256_add_pd(_mm256_loadu_pd(cr + 2 * j), prod));
            }
            if (j < n) {
                const __m128d prod = cmul_broadcast(_mm256_castpd256_pd128(ar),
                                                    _mm256_castpd256_pd128(ai),
                                                    _mm_loadu_pd(br + 2 * j));
                _mm_storeu_pd(cr + 2 * j, _mm_add_pd(_mm_loadu_pd(cr + 2 * j), prod));
            }
        }
    }
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    double* yd = reinterpret_cast<double*>(y);
    const double* ad = reinterpret_cast<const double*>(a);
    for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const __m256d xr = _mm256_set1_pd(x[j].real());
        const __m256d xi = _mm256_set1_pd(x[j].imag());
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) {
            const __m256d col = _mm256_set_m128d(_mm_loadu_pd(ad + 2 * ((i + 1) * n + j)),
                                                 _mm_loadu_pd(ad + 2 * (i * n + j)));
            const __m256d prod = cmul_broadcast(xr, xi, col);
            _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
        }
        if (i < n) {
            const __m128d prod = cmul_broadcast(_mm256_castpd256_pd128(xr),
                                                _mm256_castpd256_pd128(xi),
                                                _mm_loadu_pd(ad + 2 * (i * n + j)));
            _mm_storeu_pd(yd + 2 * i, _mm_add_pd(_mm_loadu_pd(yd + 2 * i), prod));
        }
    }
}

}  // namespace lyapdecay::kernels::avx2
