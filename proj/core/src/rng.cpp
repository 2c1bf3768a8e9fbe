#include "renimm/rng.hpp"

#include <cmath>

namespace renimm {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Two-input mix used for path folding; wyhash-style constants.
inline std::uint64_t fold(std::uint64_t state, std::uint64_t index) {
    return mix64(mix64(state ^ 0xA0761D6478BD642FULL) + mix64(index ^ 0xE7037ED1A0B428DBULL));
}

} // namespace

std::uint64_t StreamSeed::state() const {
    std::uint64_t s = mix64(root ^ 0x2545F4914F6CDD1DULL);
    for (std::uint64_t idx : path) s = fold(s, idx);
    return s;
}

StreamSeed derive_stream(const StreamSeed& seed, std::uint64_t index) {
    StreamSeed child = seed;
    child.path.push_back(index);
    return child;
}

std::uint64_t fold_stream_state(std::uint64_t parent_state, std::uint64_t index) {
    return fold(parent_state, index);
}

std::uint64_t Stream::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Stream::u01() {
    // 53-bit mantissa, shifted to the open interval (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::exponential(double rate) {
    return -std::log(u01()) / rate;
}

double Stream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double r = std::sqrt(-2.0 * std::log(u01()));
    const double theta = 6.283185307179586476925286766559 * u01();
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

double Stream::pareto(double alpha, double x_min) {
    return x_min * std::pow(u01(), -1.0 / alpha);
}

double Stream::lognormal(double m, double s) {
    return std::exp(m + s * normal());
}

double Stream::rademacher() {
    return (next_u64() & 1u) ? 1.0 : -1.0;
}

void StableSpec::validate() const {
    if (skew == StableSkew::positive_subordinator) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw parameter_error("positive_subordinator requires alpha in (0,1)");
    } else {
        if (!(alpha > 1.0 && alpha <= 2.0))
            throw parameter_error("spectrally_negative requires alpha in (1,2]");
    }
}

double sample_positive_stable(double alpha, Stream& stream, StableScale scale) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw parameter_error("sample_positive_stable: alpha must lie in (0,1)");
    // Kanter: S = [sin(a U)^a sin((1-a)U)^{1-a} / sin U]^{1/a} * W^{-(1-a)/a},
    // U ~ Uniform(0,pi), W ~ Exp(1); then E exp(-z S) = exp(-z^a).
    const double pi = 3.1415926535897932384626433832795;
    const double u = stream.uniform(0.0, pi);
    double w;
    do {
        w = stream.exponential();
    } while (w == 0.0);
    const double a = alpha;
    const double num = std::pow(std::sin(a * u), a) * std::pow(std::sin((1.0 - a) * u), 1.0 - a);
    double s = std::pow(num / std::sin(u), 1.0 / a) * std::pow(w, -(1.0 - a) / a);
    if (scale == StableScale::theory)
        s *= std::pow(std::tgamma(1.0 - a), 1.0 / a);
    return s;
}

namespace {

// Chambers-Mallows-Stuck variate with skewness -1 and unit scale in the
// S1 parametrization: characteristic function
//   exp(-|z|^a (1 + i tan(pi a/2) sign z)),  a in (1,2).
double cms_spectrally_negative_unit(double alpha, Stream& stream) {
    const double pi = 3.1415926535897932384626433832795;
    const double tan_half = std::tan(pi * alpha / 2.0); // negative for alpha in (1,2)
    const double b = std::atan(-tan_half) / alpha;
    const double s = std::pow(1.0 + tan_half * tan_half, 1.0 / (2.0 * alpha));
    const double v = stream.uniform(-pi / 2.0, pi / 2.0);
    double w;
    do {
        w = stream.exponential();
    } while (w == 0.0);
    const double x = s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
    return x;
}

} // namespace

double sample_stable_increment(const StableSpec& spec, double dt, Stream& stream) {
    spec.validate();
    if (!(dt > 0.0))
        throw parameter_error("sample_stable_increment: dt must be positive");
    if (spec.skew == StableSkew::positive_subordinator)
        return std::pow(dt, 1.0 / spec.alpha) * sample_positive_stable(spec.alpha, stream, spec.scale);
    if (spec.alpha == 2.0)
        return std::sqrt(dt) * stream.normal();
    double x = cms_spectrally_negative_unit(spec.alpha, stream);
    if (spec.scale == StableScale::theory) {
        // scale so that the unit-time characteristic function is
        // exp(-|z|^a Gamma(1-a)(cos(pi a/2) + i sign(z) sin(pi a/2)));
        // Gamma(1-a) cos(pi a/2) > 0 for a in (1,2).
        const double pi = 3.1415926535897932384626433832795;
        const double c = std::tgamma(1.0 - spec.alpha) * std::cos(pi * spec.alpha / 2.0);
        x *= std::pow(c, 1.0 / spec.alpha);
    }
    return std::pow(dt, 1.0 / spec.alpha) * x;
}

} // namespace renimm
