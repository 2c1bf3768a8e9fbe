#ifndef RENIMM_RENEWAL_HPP
#define RENIMM_RENEWAL_HPP

#include <cstddef>
#include <vector>

#include "renimm/increment_law.hpp"

namespace renimm {

/// One realization of the zero-delayed random walk S_0 = 0 < S_1 < ...,
/// materialized up to the horizon plus the first overshoot. Immutable
/// after construction.
struct RenewalPath {
    std::vector<double> partial_sums; // S_0 = 0, ..., first element > horizon
    double horizon = 0.0;

    /// nu(t) = #{k : S_k <= t}; 0 for t < 0, >= 1 for t >= 0.
    std::size_t first_passage(double t) const;
};

/// Simulate the walk up to `horizon` (inclusive of one overshoot).
/// `max_steps` guards against runaway paths.
RenewalPath simulate_walk(const IncrementLaw& law, double horizon, Stream& stream,
                          std::size_t max_steps = 200'000'000);

struct RenewalFunctionRow {
    double t;
    double u_hat;
    double std_err;
};

/// Monte Carlo estimate of the renewal function U(t) = E[nu(t)] on a grid.
std::vector<RenewalFunctionRow> estimate_renewal_function(const IncrementLaw& law,
                                                          const std::vector<double>& t_grid,
                                                          std::size_t reps,
                                                          const StreamSeed& seed);

} // namespace renimm

#endif
