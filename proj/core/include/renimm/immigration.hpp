#ifndef RENIMM_IMMIGRATION_HPP
#define RENIMM_IMMIGRATION_HPP

#include "renimm/fdd.hpp"
#include "renimm/renewal.hpp"
#include "renimm/response.hpp"

namespace renimm {

enum class TheoremCase { prop21, prop22, thm21, thm22 };

std::string case_name(TheoremCase c);

/// How the case statistic is scaled. `printed` applies the theorem/
/// proposition normalization literally; `example_display` uses the
/// worked-example scale sqrt(t v(t)/mu) with non-random centering, whose
/// finite-t moments settle much faster in the p=0 regime and whose limit
/// is V_beta itself.
enum class NormVariant { printed, example_display };

/// Complete experiment description.
struct Scenario {
    IncrementLaw law = IncrementLaw::exponential(1.0);
    ResponseModel model = ResponseModel::deterministic_h(0.0);
    TheoremCase kase = TheoremCase::thm21;
    std::vector<double> u_grid{1.0};
    double t = 100.0;
    std::size_t reps = 1000;
    StreamSeed seed;
    NormVariant norm = NormVariant::printed;
    unsigned jobs = 0;
    double nu_budget = 5e7; // expected arrivals per path before rejection

    /// Case/law compatibility, coupling rules, arrival budget. Binds
    /// coupled models to the law. Throws on violation.
    void validate();
};

/// One replication of Y(u_j t) on the grid, its martingale/mean split.
struct PathValues {
    std::vector<double> y;    // Y(u_j t)
    std::vector<double> mart; // Y - sum h(u_j t - S_k)
    std::vector<double> mean; // sum h(u_j t - S_k)
};

/// Simulate one path of the immigration process at the grid scales.
/// Stream layout: child 0 drives the walk, child k+1 drives immigrant k.
PathValues simulate_path(const Scenario& sc, const StreamSeed& rep_seed);

/// Y values only.
std::vector<double> simulate_Y(const Scenario& sc, const StreamSeed& rep_seed);

/// (martingale_part, mean_part) per grid point; their sum is Y.
PathValues decompose(const Scenario& sc, const StreamSeed& rep_seed);

/// Case-specific centering and normalization applied to `reps`
/// independent paths.
FddSample normalized_fdd_sample(const Scenario& sc);

/// Denominator of the case normalization at time scale t (exposed for
/// reference construction and tests).
double normalization_scale(const Scenario& sc);

} // namespace renimm

#endif
