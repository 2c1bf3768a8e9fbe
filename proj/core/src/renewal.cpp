#include "renimm/renewal.hpp"

#include <algorithm>
#include <cmath>

namespace renimm {

std::size_t RenewalPath::first_passage(double t) const {
    if (t > horizon)
        throw out_of_range_error("first_passage: t exceeds path horizon");
    if (t < 0.0) return 0;
    // count of S_k <= t; partial_sums is strictly increasing
    auto it = std::upper_bound(partial_sums.begin(), partial_sums.end(), t);
    return static_cast<std::size_t>(it - partial_sums.begin());
}

RenewalPath simulate_walk(const IncrementLaw& law, double horizon, Stream& stream,
                          std::size_t max_steps) {
    if (!(horizon > 0.0)) throw parameter_error("simulate_walk: horizon must be positive");
    RenewalPath path;
    path.horizon = horizon;
    path.partial_sums.push_back(0.0);
    double s = 0.0;
    while (s <= horizon) {
        s += law.sample(stream);
        path.partial_sums.push_back(s);
        if (path.partial_sums.size() > max_steps)
            throw resource_error("simulate_walk: renewal count exceeded budget",
                                 static_cast<double>(path.partial_sums.size()));
    }
    return path;
}

std::vector<RenewalFunctionRow> estimate_renewal_function(const IncrementLaw& law,
                                                          const std::vector<double>& t_grid,
                                                          std::size_t reps,
                                                          const StreamSeed& seed) {
    if (reps < 2) throw parameter_error("estimate_renewal_function: reps must be >= 2");
    if (t_grid.empty()) return {};
    const double horizon = *std::max_element(t_grid.begin(), t_grid.end());
    std::vector<double> sum(t_grid.size(), 0.0), sum2(t_grid.size(), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        Stream stream(derive_stream(seed, r));
        const RenewalPath path = simulate_walk(law, horizon, stream);
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double n = static_cast<double>(path.first_passage(t_grid[i]));
            sum[i] += n;
            sum2[i] += n * n;
        }
    }
    std::vector<RenewalFunctionRow> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double mean = sum[i] / static_cast<double>(reps);
        const double var = std::max(0.0, sum2[i] / static_cast<double>(reps) - mean * mean);
        out[i] = {t_grid[i], mean, std::sqrt(var / static_cast<double>(reps))};
    }
    return out;
}

} // namespace renimm
