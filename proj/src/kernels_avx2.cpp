// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a CPUID check.

#include <immintrin.h>

#include "qadder/kernels.hpp"

namespace qadder::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cd *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cd *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

inline __m256d swap_re_im(__m256d v) {
    return _mm256_permute_pd(v, 0b0101);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (even lanes) - (odd lanes)
inline double halt(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpy_avx2(cd a, const cd *x, cd *y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_re_im(xv)));
        store2(y + i, _mm256_add_pd(load2(y + i), prod));
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

cd dotc_avx2(const cd *x, const cd *y, std::size_t n) {
    __m256d same = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        same = _mm256_fmadd_pd(xv, yv, same);
        cross = _mm256_fmadd_pd(xv, swap_re_im(yv), cross);
    }
    cd tail{0, 0};
    for (; i < n; ++i) {
        tail += std::conj(x[i]) * y[i];
    }
    return cd{hsum(same), halt(cross)} + tail;
}

cd dotu_avx2(const cd *x, const cd *y, std::size_t n) {
    __m256d same = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        same = _mm256_fmadd_pd(xv, yv, same);
        cross = _mm256_fmadd_pd(xv, swap_re_im(yv), cross);
    }
    cd tail{0, 0};
    for (; i < n; ++i) {
        tail += x[i] * y[i];
    }
    return cd{halt(same), hsum(cross)} + tail;
}

void rotate_avx2(double c, double s, cd *x, cd *y, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = load2(x + i);
        const __m256d b = load2(y + i);
        store2(x + i, _mm256_fmsub_pd(cv, a, _mm256_mul_pd(sv, b)));
        store2(y + i, _mm256_fmadd_pd(sv, a, _mm256_mul_pd(cv, b)));
    }
    for (; i < n; ++i) {
        const cd a = x[i];
        const cd b = y[i];
        x[i] = c * a - s * b;
        y[i] = s * a + c * b;
    }
}

}  // namespace

const KernelTable &avx2_table() {
    static const KernelTable table{"avx2", axpy_avx2, dotc_avx2, dotu_avx2, rotate_avx2};
    return table;
}

}  // namespace qadder::kernels
