// AArch64 NEON variants; Advanced SIMD is mandatory on AArch64, so
// available() is unconditional.

#include <arm_neon.h>

#include <cmath>

#include "necktie/simd/kernels.hpp"

namespace necktie::simd::neon {

namespace {

// Same reduction and polynomial as the AVX2 path, two lanes at a time.
inline float64x2_t exp_nonpos(float64x2_t y) {
    const float64x2_t log2e = vdupq_n_f64(1.4426950408889634);
    const float64x2_t ln2_hi = vdupq_n_f64(6.93147180369123816490e-01);
    const float64x2_t ln2_lo = vdupq_n_f64(1.90821492927058770002e-10);

    const float64x2_t k = vrndnq_f64(vmulq_f64(y, log2e));
    float64x2_t r = vfmsq_f64(y, k, ln2_hi);
    r = vfmsq_f64(r, k, ln2_lo);

    static const double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                               1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                               1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                               1.0 / 24.0,         1.0 / 6.0,         0.5,
                               1.0,                1.0};
    float64x2_t p = vdupq_n_f64(c[0]);
    for (int i = 1; i < 14; ++i) p = vfmaq_f64(vdupq_n_f64(c[i]), p, r);

    const int64x2_t ki = vcvtq_s64_f64(k);
    const int64x2_t bits = vshlq_n_s64(vaddq_s64(ki, vdupq_n_s64(1023)), 52);
    const float64x2_t res = vmulq_f64(p, vreinterpretq_f64_s64(bits));
    const uint64x2_t keep = vcgeq_f64(y, vdupq_n_f64(-708.0));
    return vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(res), keep));
}

}  // namespace

bool available() { return true; }

double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x) {
    const float64x2_t nx = vdupq_n_f64(-x);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t e = exp_nonpos(vmulq_f64(nx, vld1q_f64(t + i)));
        acc = vfmaq_f64(acc, vld1q_f64(c + i), e);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += c[i] * std::exp(-x * t[i]);
    return s;
}

ExpMoments exp_moments(const double* v, std::size_t n, double lambda) {
    const float64x2_t nl = vdupq_n_f64(-lambda);
    float64x2_t s1 = vdupq_n_f64(0.0);
    float64x2_t s2 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t e = exp_nonpos(vmulq_f64(nl, vld1q_f64(v + i)));
        s1 = vaddq_f64(s1, e);
        s2 = vfmaq_f64(s2, e, e);
    }
    ExpMoments m{vaddvq_f64(s1), vaddvq_f64(s2)};
    for (; i < n; ++i) {
        const double e = std::exp(-lambda * v[i]);
        m.sum1 += e;
        m.sum2 += e * e;
    }
    return m;
}

}  // namespace necktie::simd::neon
