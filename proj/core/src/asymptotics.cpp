#include "renimm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "renimm/quadrature.hpp"
#include "renimm/special.hpp"

namespace renimm {

double FunctionSpec::operator()(double t) const {
    switch (form) {
    case Form::power:
        if (t <= 0.0) return index == 0.0 ? coef : 0.0;
        return coef * std::pow(t, index);
    case Form::power_log: {
        if (t <= 1.0) return 0.0; // guard below the log singularity
        return coef * std::pow(t, index) * (1.0 + 1.0 / std::log(t));
    }
    case Form::model_h: return model->h(t);
    case Form::model_v: return model->v(t);
    }
    return 0.0;
}

double FunctionSpec::integral(double a, double t) const {
    switch (form) {
    case Form::power:
        if (index == -1.0) return coef * std::log(t / std::max(a, 1e-300));
        if (a <= 0.0 && index <= -1.0)
            throw parameter_error("FunctionSpec::integral: divergent at the origin");
        return coef * (std::pow(t, index + 1.0) - std::pow(std::max(a, 0.0), index + 1.0)) /
               (index + 1.0);
    case Form::model_h: return model->int_h(t) - model->int_h(a);
    case Form::model_v: return model->int_v(t) - model->int_v(a);
    case Form::power_log:
        return integrate_adaptive([this](double y) { return (*this)(y); }, a, t, 1e-10);
    }
    return 0.0;
}

double karamata_ratio(const FunctionSpec& g, double rho, double a, double t) {
    if (!(rho > -1.0)) throw parameter_error("karamata_ratio: rho must exceed -1");
    if (!(t > a)) throw parameter_error("karamata_ratio: t must exceed a");
    const double numerator = g.integral(a, t);
    const double denominator = t * g(t) / (rho + 1.0);
    return numerator / denominator;
}

double renewal_window_sum(const FunctionSpec& phi, const IncrementLaw& law, double r1, double r2,
                          double t, std::size_t reps, const StreamSeed& seed, double* std_err) {
    if (!(0.0 <= r1 && r1 < r2 && r2 <= 1.0))
        throw parameter_error("renewal window: need 0 <= r1 < r2 <= 1");
    double sum = 0.0, sum2 = 0.0;
    const double lo = r1 * t, hi = r2 * t;
    for (std::size_t r = 0; r < reps; ++r) {
        Stream stream(derive_stream(seed, r));
        const RenewalPath path = simulate_walk(law, t, stream);
        double acc = 0.0;
        for (double s : path.partial_sums) {
            if (s > hi) break;
            if (s >= lo) acc += phi(t - s);
        }
        sum += acc;
        sum2 += acc * acc;
    }
    const double mean = sum / static_cast<double>(reps);
    if (std_err) {
        const double var = std::max(0.0, sum2 / static_cast<double>(reps) - mean * mean);
        *std_err = std::sqrt(var / static_cast<double>(reps));
    }
    return mean;
}

double sgibnev_ratio(const FunctionSpec& phi, double beta, const IncrementLaw& law, double r1,
                     double r2, double t, std::size_t reps, const StreamSeed& seed) {
    if (!law.finite_mean())
        throw unsupported_scenario_error("sgibnev_ratio: requires a finite-mean law");
    if (!(beta > -1.0)) throw parameter_error("sgibnev_ratio: beta must exceed -1");
    const double numerator = renewal_window_sum(phi, law, r1, r2, t, reps, seed);
    const double denominator = t * phi(t) / ((1.0 + beta) * law.mu()) *
                               (std::pow(1.0 - r1, 1.0 + beta) - std::pow(1.0 - r2, 1.0 + beta));
    return numerator / denominator;
}

double infinite_mean_renewal_constant(double alpha, double gamma) {
    return std::exp(std::lgamma(1.0 + gamma) - std::lgamma(1.0 - alpha) -
                    std::lgamma(1.0 + alpha + gamma));
}

double infinite_mean_renewal_limit(const FunctionSpec& phi, double gamma, const IncrementLaw& law,
                                   double t, std::size_t reps, const StreamSeed& seed) {
    if (law.finite_mean())
        throw unsupported_scenario_error("infinite_mean_renewal_limit: law must have infinite mean");
    if (gamma < -law.alpha())
        throw parameter_error("infinite_mean_renewal_limit: gamma must be >= -alpha");
    const double numerator = renewal_window_sum(phi, law, 0.0, 1.0, t, reps, seed);
    return law.survival(t) * numerator / phi(t);
}

std::vector<StripRow> uniform_strip_check(const ResponseModel& model, double a, double b, double w,
                                          const std::vector<double>& t_list,
                                          std::size_t u_points) {
    if (!(0.0 < a && a < b)) throw parameter_error("uniform_strip_check: need 0 < a < b");
    if (!(w > 0.0)) throw parameter_error("uniform_strip_check: need w > 0");
    std::vector<StripRow> rows;
    rows.reserve(t_list.size());
    for (double t : t_list) {
        const double vt = model.v(t);
        double sup = 0.0;
        for (std::size_t i = 0; i <= u_points; ++i) {
            const double u = a + (b - a) * static_cast<double>(i) / static_cast<double>(u_points);
            const double stat = model.f(u * t, (u + w) * t) / vt;
            const double gap = std::abs(stat - model.limit_C(u, u + w));
            sup = std::max(sup, gap);
        }
        rows.push_back({t, sup});
    }
    return rows;
}

double lindeberg_ratio(const ResponseModel& model, double t, double y, LindebergRegime regime,
                       const IncrementLaw& law, std::size_t reps, const StreamSeed& seed) {
    if (!(y > 0.0)) throw parameter_error("lindeberg_ratio: y must be positive");
    const double vt = model.v(t);
    if (vt == 0.0) return 0.0;
    const double threshold = regime == LindebergRegime::finite_mean
                                 ? y * std::sqrt(t * vt)
                                 : y * std::sqrt(vt / law.survival(t));
    const double ht = model.h(t);
    double acc = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        Stream stream(derive_stream(seed, r));
        const double xi = model.coupling() == CouplingMode::coupled ? law.sample(stream) : 0.0;
        const double x = model.sample_marginal(t, stream, xi);
        const double d = x - ht;
        if (std::abs(d) > threshold) acc += d * d;
    }
    return acc / static_cast<double>(reps) / vt;
}

void write_lemma_csv(std::ostream& os, const std::vector<LemmaRow>& rows) {
    os << "lemma,t,statistic,limit,abs_gap\n";
    char buf[64];
    for (const auto& row : rows) {
        os << row.lemma << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.t);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.statistic);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.limit);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.abs_gap());
        os << buf << '\n';
    }
}

} // namespace renimm
