#include "renimm/immigration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "renimm/parallel.hpp"
#include "renimm/special.hpp"

namespace renimm {

// ---------------------------------------------------------------------------
// FddSample

std::vector<double> FddSample::column(std::size_t j) const {
    const std::size_t m = u_grid.size();
    std::vector<double> col(reps());
    for (std::size_t r = 0; r < col.size(); ++r) col[r] = values[r * m + j];
    return col;
}

double FddSample::col_mean(std::size_t j) const {
    const std::size_t m = u_grid.size(), n = reps();
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += values[r * m + j];
    return s / static_cast<double>(n);
}

double FddSample::col_variance(std::size_t j) const {
    const std::size_t m = u_grid.size(), n = reps();
    const double mu = col_mean(j);
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double d = values[r * m + j] - mu;
        s += d * d;
    }
    return s / static_cast<double>(n - 1);
}

double FddSample::cov(std::size_t i, std::size_t j) const {
    const std::size_t m = u_grid.size(), n = reps();
    const double mi = col_mean(i), mj = col_mean(j);
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        s += (values[r * m + i] - mi) * (values[r * m + j] - mj);
    return s / static_cast<double>(n - 1);
}

void FddSample::write_csv(std::ostream& os) const {
    os << "rep,u,value,t,case\n";
    const std::size_t m = u_grid.size();
    char buf[64];
    for (std::size_t r = 0; r < reps(); ++r) {
        for (std::size_t j = 0; j < m; ++j) {
            os << r << ',';
            std::snprintf(buf, sizeof buf, "%.17g", u_grid[j]);
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", values[r * m + j]);
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", t);
            os << buf << ',' << case_label << '\n';
        }
    }
}

void FddSample::validate() const {
    if (u_grid.empty()) throw parameter_error("FddSample: empty grid");
    if (values.size() % u_grid.size() != 0)
        throw parameter_error("FddSample: ragged value matrix");
    for (double v : values)
        if (!std::isfinite(v)) throw numerical_error("FddSample: non-finite entry", v);
}

// ---------------------------------------------------------------------------
// Scenario

std::string case_name(TheoremCase c) {
    switch (c) {
    case TheoremCase::prop21: return "prop21";
    case TheoremCase::prop22: return "prop22";
    case TheoremCase::thm21: return "thm21";
    case TheoremCase::thm22: return "thm22";
    }
    return "?";
}

void Scenario::validate() {
    if (!(t > 0.0)) throw parameter_error("scenario: t must be positive");
    if (reps < 1) throw parameter_error("scenario: reps must be >= 1");
    if (u_grid.empty()) throw parameter_error("scenario: u_grid must be nonempty");
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
        if (!(u_grid[j] > 0.0)) throw parameter_error("scenario: u_grid entries must be positive");
        if (j > 0 && !(u_grid[j] > u_grid[j - 1]))
            throw parameter_error("scenario: u_grid must be strictly increasing");
    }
    const bool finite_mean = law.finite_mean();
    if ((kase == TheoremCase::prop21 || kase == TheoremCase::thm21) && !finite_mean)
        throw parameter_error("scenario: " + case_name(kase) + " needs a finite-mean law");
    if ((kase == TheoremCase::prop22 || kase == TheoremCase::thm22) && finite_mean)
        throw parameter_error("scenario: " + case_name(kase) + " needs alpha in (0,1)");

    model.bind_xi(law);

    // infinite-mean regime requires covariance index beta >= -alpha
    if (!finite_mean && !model.v_is_zero() && model.rv_kind() != RvKind::none &&
        model.beta() < -law.alpha())
        throw parameter_error("scenario: " + case_name(kase) +
                              " needs covariance index beta >= -alpha");

    if (model.coupling() == CouplingMode::coupled) {
        // dependence is neutralized only in the one-summand cases
        if (kase == TheoremCase::prop22)
            throw parameter_error("scenario: infinite-mean proposition requires X independent of xi");
        if (kase == TheoremCase::thm21 || kase == TheoremCase::thm22) {
            const MixingResult mix = model.mixing_parameter(law);
            if (mix.value > 0.0 && mix.value < 1.0)
                throw parameter_error("scenario: mixed theorem cases (" + mix.case_label +
                                      ") require X independent of xi");
        }
    }

    // expected-arrival memory guard
    const double horizon = u_grid.back() * t;
    double expected;
    if (finite_mean) {
        expected = horizon / law.mu() + 1.0;
    } else {
        const double d_alpha = std::exp(-std::lgamma(1.0 - law.alpha()) - std::lgamma(1.0 + law.alpha()));
        expected = d_alpha * std::pow(horizon, law.alpha()) / law.ell_star() + 1.0;
    }
    if (expected > nu_budget)
        throw resource_error("scenario: expected arrivals exceed budget", expected);
}

// ---------------------------------------------------------------------------
// simulation

PathValues simulate_path(const Scenario& sc, const StreamSeed& rep_seed) {
    const std::size_t m = sc.u_grid.size();
    PathValues out;
    out.y.assign(m, 0.0);
    out.mean.assign(m, 0.0);

    const std::uint64_t rep_state = rep_seed.state();
    Stream walk_stream(fold_stream_state(rep_state, 0));
    const double horizon = sc.u_grid.back() * sc.t;
    const RenewalPath path = simulate_walk(sc.law, horizon, walk_stream,
                                           static_cast<std::size_t>(sc.nu_budget) + 2);

    std::vector<double> offsets(m);
    std::vector<double> vals(m);
    const std::size_t arrivals = path.partial_sums.size() - 1; // S_k <= horizon for k < arrivals
    for (std::size_t k = 0; k < arrivals; ++k) {
        const double s_k = path.partial_sums[k];
        // grid points with u_j t >= S_k; offsets ascend with j
        std::size_t j0 = 0;
        while (j0 < m && sc.u_grid[j0] * sc.t < s_k) ++j0;
        if (j0 == m) continue;
        const std::size_t cnt = m - j0;
        for (std::size_t j = j0; j < m; ++j) offsets[j - j0] = sc.u_grid[j] * sc.t - s_k;
        const double xi_next = path.partial_sums[k + 1] - s_k;
        Stream resp_stream(fold_stream_state(rep_state, k + 1));
        sc.model.sample_path(std::span<const double>(offsets.data(), cnt),
                             std::span<double>(vals.data(), cnt), resp_stream, xi_next);
        for (std::size_t j = j0; j < m; ++j) {
            out.y[j] += vals[j - j0];
            out.mean[j] += sc.model.h(offsets[j - j0]);
        }
    }
    out.mart.resize(m);
    for (std::size_t j = 0; j < m; ++j) out.mart[j] = out.y[j] - out.mean[j];
    return out;
}

std::vector<double> simulate_Y(const Scenario& sc, const StreamSeed& rep_seed) {
    return simulate_path(sc, rep_seed).y;
}

PathValues decompose(const Scenario& sc, const StreamSeed& rep_seed) {
    return simulate_path(sc, rep_seed);
}

double normalization_scale(const Scenario& sc) {
    const double t = sc.t;
    switch (sc.kase) {
    case TheoremCase::prop21: {
        const double vt = sc.model.v(t);
        return std::sqrt(t * vt / sc.law.mu());
    }
    case TheoremCase::prop22: {
        const double vt = sc.model.v(t);
        return vt > 0.0 ? std::sqrt(vt / sc.law.survival(t)) : 0.0;
    }
    case TheoremCase::thm21: {
        if (sc.norm == NormVariant::example_display)
            return std::sqrt(t * sc.model.v(t) / sc.law.mu());
        const double c = sc.law.norming_c(t);
        const double ht = sc.model.h(t);
        return std::sqrt(sc.model.int_v(t) + c * c * ht * ht);
    }
    case TheoremCase::thm22: {
        const double pt = sc.law.survival(t);
        const double ht = sc.model.h(t);
        return std::sqrt(sc.model.v(t) * pt + ht * ht) / pt;
    }
    }
    return 1.0;
}

FddSample normalized_fdd_sample(const Scenario& sc) {
    Scenario scenario = sc;
    scenario.validate();
    const std::size_t m = scenario.u_grid.size();
    const std::size_t n = scenario.reps;

    FddSample sample;
    sample.u_grid = scenario.u_grid;
    sample.t = scenario.t;
    sample.case_label = case_name(scenario.kase);
    sample.values.assign(n * m, 0.0);

    const double scale = normalization_scale(scenario);
    const bool random_centering =
        scenario.kase == TheoremCase::prop21 || scenario.kase == TheoremCase::prop22;

    // thm22 carries no centering: P{xi>t} Y(ut) is already the statistic
    std::vector<double> center(m, 0.0);
    if (scenario.kase == TheoremCase::thm21) {
        for (std::size_t j = 0; j < m; ++j)
            center[j] = scenario.model.int_h(scenario.u_grid[j] * scenario.t) / scenario.law.mu();
    }

    switch (scenario.kase) {
    case TheoremCase::prop21:
        sample.normalization = "(Y - sum h)/sqrt(t v(t)/mu)";
        break;
    case TheoremCase::prop22:
        sample.normalization = "sqrt(P{xi>t}/v(t)) (Y - sum h)";
        break;
    case TheoremCase::thm21:
        sample.normalization = scenario.norm == NormVariant::example_display
                                   ? "(Y - int h/mu)/sqrt(t v(t)/mu)"
                                   : "(Y - int h/mu)/sqrt(int_0^t v + c^2 h^2)";
        break;
    case TheoremCase::thm22:
        sample.normalization = "P{xi>t} Y/sqrt(v(t)P{xi>t} + h(t)^2)";
        break;
    }

    parallel_for(n, scenario.jobs, [&](std::size_t r) {
        const StreamSeed rep_seed = derive_stream(scenario.seed, r);
        const PathValues pv = simulate_path(scenario, rep_seed);
        for (std::size_t j = 0; j < m; ++j) {
            double val;
            if (random_centering) {
                val = scale > 0.0 ? pv.mart[j] / scale : 0.0;
            } else {
                val = scale > 0.0 ? (pv.y[j] - center[j]) / scale : 0.0;
            }
            sample.values[r * m + j] = val;
        }
    });
    sample.validate();
    return sample;
}

} // namespace renimm
