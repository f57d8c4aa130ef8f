#include "necktie/simd/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "necktie/error.hpp"

namespace necktie::simd {

const char* to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "?";
}

namespace scalar {

double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c[i] * std::exp(-x * t[i]);
    return s;
}

ExpMoments exp_moments(const double* v, std::size_t n, double lambda) {
    ExpMoments m;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-lambda * v[i]);
        m.sum1 += e;
        m.sum2 += e * e;
    }
    return m;
}

}  // namespace scalar

#if !defined(NECKTIE_BUILD_AVX2)
namespace avx2 {
bool available() { return false; }
double weighted_exp_sum(const double*, const double*, std::size_t, double) {
    throw ParameterError("avx2 kernels not built");
}
ExpMoments exp_moments(const double*, std::size_t, double) {
    throw ParameterError("avx2 kernels not built");
}
}  // namespace avx2
#endif

#if !defined(NECKTIE_BUILD_NEON)
namespace neon {
bool available() { return false; }
double weighted_exp_sum(const double*, const double*, std::size_t, double) {
    throw ParameterError("neon kernels not built");
}
ExpMoments exp_moments(const double*, std::size_t, double) {
    throw ParameterError("neon kernels not built");
}
}  // namespace neon
#endif

namespace {

struct Table {
    Isa isa;
    double (*wes)(const double*, const double*, std::size_t, double);
    ExpMoments (*mom)(const double*, std::size_t, double);
};

Table table_for(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return {isa, avx2::weighted_exp_sum, avx2::exp_moments};
        case Isa::Neon: return {isa, neon::weighted_exp_sum, neon::exp_moments};
        case Isa::Scalar: break;
    }
    return {Isa::Scalar, scalar::weighted_exp_sum, scalar::exp_moments};
}

bool supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: return avx2::available();
        case Isa::Neon: return neon::available();
    }
    return false;
}

Table& active() {
    static Table t = table_for(detected_isa());
    return t;
}

}  // namespace

Isa detected_isa() {
    const char* env = std::getenv("NECKTIE_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    if (avx2::available()) return Isa::Avx2;
    if (neon::available()) return Isa::Neon;
    return Isa::Scalar;
}

Isa active_isa() { return active().isa; }

void set_active_isa(Isa isa) {
    if (!supported(isa)) {
        throw ParameterError(std::string("instruction set not available: ") + to_string(isa));
    }
    active() = table_for(isa);
}

double weighted_exp_sum(std::span<const double> c, std::span<const double> t, double x) {
    if (c.size() != t.size()) throw ParameterError("weighted_exp_sum: size mismatch");
    return active().wes(c.data(), t.data(), c.size(), x);
}

ExpMoments exp_moments(std::span<const double> v, double lambda) {
    return active().mom(v.data(), v.size(), lambda);
}

}  // namespace necktie::simd
