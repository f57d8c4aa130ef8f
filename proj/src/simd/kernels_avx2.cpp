// AVX2/FMA variants. Compiled with -mavx2 -mfma; only called after the
// CPU check in available().

#include <immintrin.h>

#include <cmath>

#include "necktie/simd/kernels.hpp"

namespace necktie::simd::avx2 {

namespace {

// exp(y) for y <= 0. Cody-Waite reduction y = k ln2 + r, |r| <= ln2/2,
// degree-13 Taylor polynomial for e^r, then scaling by 2^k. Lanes below
// the normal range flush to zero.
inline __m256d exp_nonpos(__m256d y) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
    const __m256d lo_limit = _mm256_set1_pd(-708.0);

    const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, y);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    static const double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                               1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                               1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                               1.0 / 24.0,         1.0 / 6.0,         0.5,
                               1.0,                1.0};
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

    // 2^k through the exponent field.
    const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)),
                                        _mm256_castpd_si256(magic));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    __m256d res = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    const __m256d keep = _mm256_cmp_pd(y, lo_limit, _CMP_GE_OQ);
    return _mm256_and_pd(res, keep);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

bool available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x) {
    const __m256d nx = _mm256_set1_pd(-x);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d e0 = exp_nonpos(_mm256_mul_pd(nx, _mm256_loadu_pd(t + i)));
        const __m256d e1 = exp_nonpos(_mm256_mul_pd(nx, _mm256_loadu_pd(t + i + 4)));
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(c + i), e0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(c + i + 4), e1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += c[i] * std::exp(-x * t[i]);
    return s;
}

ExpMoments exp_moments(const double* v, std::size_t n, double lambda) {
    const __m256d nl = _mm256_set1_pd(-lambda);
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d e = exp_nonpos(_mm256_mul_pd(nl, _mm256_loadu_pd(v + i)));
        s1 = _mm256_add_pd(s1, e);
        s2 = _mm256_fmadd_pd(e, e, s2);
    }
    ExpMoments m{hsum(s1), hsum(s2)};
    for (; i < n; ++i) {
        const double e = std::exp(-lambda * v[i]);
        m.sum1 += e;
        m.sum2 += e * e;
    }
    return m;
}

}  // namespace necktie::simd::avx2
