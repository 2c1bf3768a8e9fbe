#ifndef RENIMM_RESPONSE_HPP
#define RENIMM_RESPONSE_HPP

#include <optional>
#include <span>
#include <string>

#include "renimm/increment_law.hpp"

namespace renimm {

/// Law of the scalar randomness eta inside a response model.
struct EtaLaw {
    enum class Kind { pareto, exponential, deterministic, normal, rademacher, scaled_xi };
    Kind kind = Kind::deterministic;
    double a = 1.0; // pareto theta | exp rate | deterministic value | normal mean | rademacher scale | kappa
    double b = 0.0; // pareto x_min | normal sd
    std::optional<IncrementLaw> base; // resolved xi law for scaled_xi

    static EtaLaw pareto(double theta, double x_min) { return {Kind::pareto, theta, x_min, {}}; }
    static EtaLaw exponential(double rate) { return {Kind::exponential, rate, 0.0, {}}; }
    static EtaLaw deterministic(double v) { return {Kind::deterministic, v, 0.0, {}}; }
    static EtaLaw normal(double mean, double sd) { return {Kind::normal, mean, sd, {}}; }
    static EtaLaw rademacher(double scale) { return {Kind::rademacher, scale, 0.0, {}}; }
    static EtaLaw scaled_xi(double kappa) { return {Kind::scaled_xi, kappa, 0.0, {}}; }

    double mean() const;
    double variance() const;
    double survival(double t) const;   // P{eta > t}, nonnegative kinds only
    double cdf(double t) const { return 1.0 - survival(t); }
    double int_survival(double T) const;     // int_0^T P{eta > y} dy
    double int_survival_sq(double T) const;  // int_0^T P{eta > y}^2 dy
    double sample(Stream& stream) const;
    std::string describe() const;
};

enum class ModelId {
    indicator_survival, // X(t) = 1{eta > t}
    indicator_hit,      // X(t) = 1{eta <= t}
    scaled_variable,    // X(t) = eta t^{beta/2}
    ou_modulated,       // X(t) = (t+1)^{beta/2} Z(t), Z stationary OU
    shrinking_bm,       // X(t) = B((t+1)^{-a}), B Brownian
    deterministic_h,    // X(t) = coef t^{rho}
    noisy_h             // X(t) = coef (t+1)^{rho} + eta, eta centered
};

enum class RvKind { genuine, fictitious, none };

enum class CouplingMode { independent, coupled };

/// Limit function C(u,w) of the scaled covariance ratio, homogeneous of
/// degree beta: C(a,a) = a^beta, C(au,aw) = a^beta C(u,w).
struct CovarianceModel {
    enum class Form { max_power, prod_power, fictitious } form = Form::max_power;
    double beta = 0.0;

    double operator()(double u, double w) const;
    bool is_fictitious() const { return form == Form::fictitious; }
};

/// Theorem-case mixing parameter: the limiting variance share of the
/// renewal (mean) term.
struct MixingResult {
    char which = 'p'; // 'p' (finite mean) or 'q' (infinite mean)
    double value = 0.0;
    std::string case_label;
};

/// A response process from the catalog: path sampler plus the analytic
/// moment structure h(t) = E X(t), v(t) = Var X(t), f(s,t) = Cov, the
/// limit function C, and the regular-variation indices.
class ResponseModel {
public:
    static ResponseModel indicator_survival(EtaLaw eta,
                                            CouplingMode mode = CouplingMode::independent,
                                            double kappa = 1.0);
    static ResponseModel indicator_hit(EtaLaw eta, CouplingMode mode = CouplingMode::independent,
                                       double kappa = 1.0);
    static ResponseModel scaled_variable(EtaLaw eta, double beta);
    static ResponseModel ou_modulated(double beta);
    static ResponseModel shrinking_bm(double a);
    static ResponseModel deterministic_h(double rho, double coef = 1.0);
    static ResponseModel noisy_h(double rho, double coef, EtaLaw noise);

    ModelId id() const { return id_; }
    RvKind rv_kind() const { return rv_kind_; }
    CouplingMode coupling() const { return coupling_; }
    double kappa() const { return kappa_; }
    const EtaLaw& eta() const { return eta_; }
    double coef() const { return coef_; }
    double bm_exponent() const { return bm_a_; }
    /// Regular-variation index of v and f.
    double beta() const { return beta_; }
    /// Regular-variation index of h (NaN when h is identically zero).
    double rho() const { return rho_; }
    bool h_is_zero() const { return h_zero_; }
    bool v_is_zero() const { return v_zero_; }

    /// Resolve a coupled model against the scenario increment law.
    void bind_xi(const IncrementLaw& law);

    double h(double t) const;
    double v(double t) const;
    double f(double s, double t) const;
    /// Second moment E[X(t)^2] = v + h^2.
    double x2(double t) const { const double ht = h(t); return v(t) + ht * ht; }
    double int_h(double T) const;
    double int_v(double T) const;

    /// Limit function C(u,w); unsupported for models without randomness.
    double limit_C(double u, double w) const;
    CovarianceModel cov_model() const;

    /// Draw one response path at strictly increasing nonnegative times.
    /// coupled_xi is the increment attached to this immigrant (used only
    /// in coupled mode).
    void sample_path(std::span<const double> times, std::span<double> out, Stream& stream,
                     double coupled_xi = 0.0) const;

    /// One draw of X(t).
    double sample_marginal(double t, Stream& stream, double coupled_xi = 0.0) const;

    /// Analytic mixing parameter for this model under the given law.
    MixingResult mixing_parameter(const IncrementLaw& law) const;

    std::string describe() const;

private:
    ResponseModel() = default;

    ModelId id_ = ModelId::deterministic_h;
    EtaLaw eta_;
    double beta_ = 0.0;
    double rho_ = 0.0;
    double coef_ = 1.0;
    double bm_a_ = 0.5;
    RvKind rv_kind_ = RvKind::none;
    CouplingMode coupling_ = CouplingMode::independent;
    double kappa_ = 1.0;
    bool h_zero_ = false;
    bool v_zero_ = false;
    // leading power-law constants: h(t) ~ h_bar t^rho, v(t) ~ v_bar t^beta
    double h_bar_ = 0.0;
    double v_bar_ = 0.0;
    bool v_dri_ = false;      // v directly Riemann integrable (hit with E eta < inf)
    double int_v_total_ = 0.0; // int_0^inf v when v_dri_
};

/// eval_moments: (h(t), v(t), f(s,t)) bundle.
struct Moments {
    double h;
    double v;
    double f;
};
Moments eval_moments(const ResponseModel& model, double s, double t);

} // namespace renimm

#endif
