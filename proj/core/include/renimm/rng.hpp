#ifndef RENIMM_RNG_HPP
#define RENIMM_RNG_HPP

#include <cstdint>
#include <vector>

#include "renimm/errors.hpp"

namespace renimm {

/// Address of a random stream: a root seed plus a path of child indices.
/// Identical (root, path) always reproduces the same variate sequence;
/// distinct paths give statistically independent streams.
struct StreamSeed {
    std::uint64_t root = 0;
    std::vector<std::uint64_t> path;

    /// Mixed 64-bit state folding root and path.
    std::uint64_t state() const;
};

/// Child stream with `index` appended to the path.
StreamSeed derive_stream(const StreamSeed& seed, std::uint64_t index);

/// Child state derived directly from a parent state:
/// fold_stream_state(seed.state(), i) == derive_stream(seed, i).state().
/// Allocation-free form for hot per-immigrant derivation.
std::uint64_t fold_stream_state(std::uint64_t parent_state, std::uint64_t index);

/// Splitmix64-based stream. Value type, cheap to copy; confine one
/// instance to one worker.
class Stream {
public:
    Stream() : state_(0x9E3779B97F4A7C15ULL) {}
    explicit Stream(const StreamSeed& seed) : state_(seed.state()) {}
    explicit Stream(std::uint64_t raw_state) : state_(raw_state) {}

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1).
    double u01();

    /// Uniform on (lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    double exponential(double rate = 1.0);
    double normal();                       // standard normal, Box-Muller with cache
    double normal(double mean, double sd) { return mean + sd * normal(); }
    double pareto(double alpha, double x_min);
    double lognormal(double m, double s);
    double rademacher();                   // +1 or -1 with equal probability

private:
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Skew mode of the stable family used by the limit theory.
enum class StableSkew {
    positive_subordinator,  // alpha in (0,1), nonnegative support
    spectrally_negative     // alpha in (1,2]; alpha = 2 is centered Gaussian
};

/// Scale convention: "standard" means Laplace exponent z^alpha
/// (subordinator) or unit-scale CMS output (spectrally negative);
/// "theory" carries the extra Gamma(1-alpha) factor used by the limit
/// processes in this library.
enum class StableScale { standard, theory };

struct StableSpec {
    double alpha = 0.5;
    StableSkew skew = StableSkew::positive_subordinator;
    StableScale scale = StableScale::theory;

    void validate() const;
};

/// One draw S > 0 with E[exp(-z S)] = exp(-z^alpha) in the standard
/// convention; the theory convention multiplies by Gamma(1-alpha)^{1/alpha}.
/// Kanter's transformation: one uniform and one exponential per draw.
double sample_positive_stable(double alpha, Stream& stream,
                              StableScale scale = StableScale::standard);

/// Increment of the stable process over dt, via self-similarity
/// dt^{1/alpha} * X(1). For spectrally negative alpha in (1,2) the unit
/// variate has characteristic function
///   exp(-|z|^a Gamma(1-a) (cos(pi a/2) + i sign(z) sin(pi a/2)))
/// in the theory convention; alpha = 2 is exact N(0, dt) (standard
/// Brownian motion, variance u at time u).
double sample_stable_increment(const StableSpec& spec, double dt, Stream& stream);

} // namespace renimm

#endif
