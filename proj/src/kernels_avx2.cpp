#include "seernf/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2 variants of the dense kernels. membership_row, fuzzy_blend and axpy
// reproduce the scalar backend bit for bit: every element is computed with
// the same single-rounding ops, and the reductions in fuzzy_blend only ever
// add exact zeros to the (at most two, adjacent) live terms. dot/product use
// lane-wise accumulators, so they may differ from scalar by reduction order.

namespace seernf::kernels {

namespace {

inline double clamp_center_domain(double x) noexcept {
    if (x < 1.0) return 1.0;
    if (x > 18.0) return 18.0;
    return x;
}

inline __m256d abs_pd(__m256d v) noexcept {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

inline double hsum_pd(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, shuf));
}

const __m256d kCenters[4] = {
    _mm256_set_pd(4.0, 3.0, 2.0, 1.0),
    _mm256_set_pd(8.0, 7.0, 6.0, 5.0),
    _mm256_set_pd(12.0, 11.0, 10.0, 9.0),
    _mm256_set_pd(16.0, 15.0, 14.0, 13.0),
};

void membership_row_avx2(double x, double* w) noexcept {
    const double xc = clamp_center_domain(x);
    const __m256d vx = _mm256_set1_pd(xc);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    for (int blk = 0; blk < 4; ++blk) {
        const __m256d d = abs_pd(_mm256_sub_pd(vx, kCenters[blk]));
        const __m256d g = _mm256_max_pd(zero, _mm256_sub_pd(one, d));
        _mm256_storeu_pd(w + 4 * blk, g);
    }
    for (int r = 17; r <= kLevels; ++r) {
        const double d = std::fabs(xc - static_cast<double>(r));
        const double g = 1.0 - d;
        w[r - 1] = g > 0.0 ? g : 0.0;
    }
}

double fuzzy_blend_avx2(double x, const double* c) noexcept {
    const double xc = clamp_center_domain(x);
    const __m256d vx = _mm256_set1_pd(xc);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d vtotal = zero;
    __m256d vacc = zero;
    for (int blk = 0; blk < 4; ++blk) {
        const __m256d d = abs_pd(_mm256_sub_pd(vx, kCenters[blk]));
        const __m256d g = _mm256_max_pd(zero, _mm256_sub_pd(one, d));
        vtotal = _mm256_add_pd(vtotal, g);
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(g, _mm256_loadu_pd(c + 4 * blk)));
    }
    double total = hsum_pd(vtotal);
    double acc = hsum_pd(vacc);
    for (int r = 17; r <= kLevels; ++r) {
        const double d = std::fabs(xc - static_cast<double>(r));
        const double raw = 1.0 - d;
        const double g = raw > 0.0 ? raw : 0.0;
        total += g;
        acc += g * c[r - 1];
    }
    return acc / total;
}

double dot_avx2(const double* a, const double* b, std::size_t n) noexcept {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double acc = hsum_pd(vacc);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double product_avx2(const double* v, std::size_t n) noexcept {
    __m256d vacc = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vacc = _mm256_mul_pd(vacc, _mm256_loadu_pd(v + i));
    __m128d lo = _mm256_castpd256_pd128(vacc);
    __m128d hi = _mm256_extractf128_pd(vacc, 1);
    __m128d p = _mm_mul_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(p, p);
    double acc = _mm_cvtsd_f64(_mm_mul_sd(p, shuf));
    for (; i < n; ++i) acc *= v[i];
    return acc;
}

void axpy_avx2(double a, const double* g, double* v, std::size_t n) noexcept {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d upd = _mm256_mul_pd(va, _mm256_loadu_pd(g + i));
        _mm256_storeu_pd(v + i, _mm256_add_pd(_mm256_loadu_pd(v + i), upd));
    }
    for (; i < n; ++i) v[i] += a * g[i];
}

constexpr Backend kAvx2{
    "avx2",   membership_row_avx2, fuzzy_blend_avx2,
    dot_avx2, product_avx2,        axpy_avx2,
};

} // namespace

const Backend& avx2_backend() { return kAvx2; }

} // namespace seernf::kernels
