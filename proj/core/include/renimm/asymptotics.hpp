#ifndef RENIMM_ASYMPTOTICS_HPP
#define RENIMM_ASYMPTOTICS_HPP

#include <iosfwd>

#include "renimm/renewal.hpp"
#include "renimm/response.hpp"

namespace renimm {

/// Test function for the regular-variation and renewal-calculus checks.
struct FunctionSpec {
    enum class Form { power, power_log, model_h, model_v };
    Form form = Form::power;
    double coef = 1.0;
    double index = 0.0;
    const ResponseModel* model = nullptr;

    static FunctionSpec power(double index, double coef = 1.0) {
        return {Form::power, coef, index, nullptr};
    }
    /// coef * t^index * (1 + 1/log t): same index, perturbed slowly varying factor.
    static FunctionSpec power_log(double index, double coef = 1.0) {
        return {Form::power_log, coef, index, nullptr};
    }
    static FunctionSpec model_h(const ResponseModel& m) { return {Form::model_h, 1.0, 0.0, &m}; }
    static FunctionSpec model_v(const ResponseModel& m) { return {Form::model_v, 1.0, 0.0, &m}; }

    double operator()(double t) const;
    double integral(double a, double t) const;
};

/// Karamata ratio (int_a^t g) / (t g(t)/(rho+1)); approaches 1 as t grows
/// for g regularly varying of index rho > -1.
double karamata_ratio(const FunctionSpec& g, double rho, double a, double t);

/// Monte Carlo renewal-window ratio: the average over `reps` walks of
/// sum phi(t - S_k) over S_k in [r1 t, r2 t], divided by
/// t phi(t) ((1-r1)^{1+beta} - (1-r2)^{1+beta}) / ((1+beta) E xi).
double sgibnev_ratio(const FunctionSpec& phi, double beta, const IncrementLaw& law, double r1,
                     double r2, double t, std::size_t reps, const StreamSeed& seed);

/// Monte Carlo average of the raw window sum (oracle hook for the
/// Poisson closed form).
double renewal_window_sum(const FunctionSpec& phi, const IncrementLaw& law, double r1, double r2,
                          double t, std::size_t reps, const StreamSeed& seed,
                          double* std_err = nullptr);

/// P{xi>t} int_[0,t] phi(t-y) dU(y) / phi(t), estimated by Monte Carlo;
/// converges to Gamma(1+gamma)/(Gamma(1-alpha) Gamma(1+alpha+gamma)) for
/// infinite-mean laws of index alpha and phi of index gamma >= -alpha.
double infinite_mean_renewal_limit(const FunctionSpec& phi, double gamma, const IncrementLaw& law,
                                   double t, std::size_t reps, const StreamSeed& seed);

/// Analytic constant of the previous limit.
double infinite_mean_renewal_constant(double alpha, double gamma);

struct StripRow {
    double t;
    double sup_gap;
};

/// sup over u in [a,b] of |f(ut,(u+w)t)/v(t) - C(u,u+w)| per t; the
/// uniform-in-strips convergence statistic.
std::vector<StripRow> uniform_strip_check(const ResponseModel& model, double a, double b, double w,
                                          const std::vector<double>& t_list,
                                          std::size_t u_points = 200);

enum class LindebergRegime { finite_mean, infinite_mean };

/// Monte Carlo estimate of v_y(t)/v(t) with the regime threshold
/// y sqrt(t v(t)) or y sqrt(v(t)/P{xi>t}).
double lindeberg_ratio(const ResponseModel& model, double t, double y, LindebergRegime regime,
                       const IncrementLaw& law, std::size_t reps, const StreamSeed& seed);

struct LemmaRow {
    std::string lemma;
    double t;
    double statistic;
    double limit;
    double abs_gap() const { return std::abs(statistic - limit); }
};

/// CSV with header lemma,t,statistic,limit,abs_gap.
void write_lemma_csv(std::ostream& os, const std::vector<LemmaRow>& rows);

} // namespace renimm

#endif
