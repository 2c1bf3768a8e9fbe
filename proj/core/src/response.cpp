#include "renimm/response.hpp"

#include <algorithm>
#include <cmath>

#include "renimm/quadrature.hpp"
#include "renimm/special.hpp"

namespace renimm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIdxTol = 1e-12; // tolerance for comparing regular-variation indices

double pow0(double t, double p) {
    // t^p with the measure-zero origin mapped to 0 (p != 0)
    if (t <= 0.0) return p == 0.0 ? 1.0 : 0.0;
    return std::pow(t, p);
}

double law_int_survival(const IncrementLaw& law, double T) {
    if (T <= 0.0) return 0.0;
    switch (law.kind()) {
    case LawKind::exponential: {
        const double r = law.param1();
        return (1.0 - std::exp(-r * T)) / r;
    }
    case LawKind::pareto: {
        const double theta = law.param1(), xm = law.param2();
        if (T <= xm) return T;
        if (theta == 1.0) return xm * (1.0 + std::log(T / xm));
        return xm + std::pow(xm, theta) * (std::pow(T, 1.0 - theta) - std::pow(xm, 1.0 - theta)) /
                        (1.0 - theta);
    }
    case LawKind::deterministic: return std::min(T, law.param1());
    case LawKind::lognormal:
        return integrate_adaptive([&](double y) { return law.survival(y); }, 0.0, T, 1e-10);
    }
    return 0.0;
}

double law_int_survival_sq(const IncrementLaw& law, double T) {
    if (T <= 0.0) return 0.0;
    switch (law.kind()) {
    case LawKind::exponential: {
        const double r = law.param1();
        return (1.0 - std::exp(-2.0 * r * T)) / (2.0 * r);
    }
    case LawKind::pareto: {
        const double theta = law.param1(), xm = law.param2();
        if (T <= xm) return T;
        if (theta == 0.5) return xm + xm * std::log(T / xm);
        return xm + std::pow(xm, 2.0 * theta) *
                        (std::pow(T, 1.0 - 2.0 * theta) - std::pow(xm, 1.0 - 2.0 * theta)) /
                        (1.0 - 2.0 * theta);
    }
    case LawKind::deterministic: return std::min(T, law.param1());
    case LawKind::lognormal: {
        auto s2 = [&](double y) { const double s = law.survival(y); return s * s; };
        return integrate_adaptive(s2, 0.0, T, 1e-10);
    }
    }
    return 0.0;
}

} // namespace

// ---------------------------------------------------------------------------
// EtaLaw

double EtaLaw::mean() const {
    switch (kind) {
    case Kind::pareto: return a > 1.0 ? a * b / (a - 1.0) : kInf;
    case Kind::exponential: return 1.0 / a;
    case Kind::deterministic: return a;
    case Kind::normal: return a;
    case Kind::rademacher: return 0.0;
    case Kind::scaled_xi: return base ? a * base->mu() : kInf;
    }
    return 0.0;
}

double EtaLaw::variance() const {
    switch (kind) {
    case Kind::pareto:
        if (a <= 2.0) return kInf;
        return b * b * a / ((a - 1.0) * (a - 1.0) * (a - 2.0));
    case Kind::exponential: return 1.0 / (a * a);
    case Kind::deterministic: return 0.0;
    case Kind::normal: return b * b;
    case Kind::rademacher: return a * a;
    case Kind::scaled_xi: return base ? a * a * base->sigma2() : kInf;
    }
    return 0.0;
}

double EtaLaw::survival(double t) const {
    if (t < 0.0) return 1.0;
    switch (kind) {
    case Kind::pareto: return t < b ? 1.0 : std::pow(b / t, a);
    case Kind::exponential: return std::exp(-a * t);
    case Kind::deterministic: return t < a ? 1.0 : 0.0;
    case Kind::normal: return 1.0 - normal_cdf((t - a) / b);
    case Kind::rademacher: return t < -a ? 1.0 : (t < a ? 0.5 : 0.0);
    case Kind::scaled_xi:
        if (!base) throw parameter_error("scaled_xi eta not bound to an increment law");
        return base->survival(t / a);
    }
    return 0.0;
}

double EtaLaw::int_survival(double T) const {
    if (T <= 0.0) return 0.0;
    switch (kind) {
    case Kind::pareto: return law_int_survival(IncrementLaw::pareto(a, b), T);
    case Kind::exponential: return (1.0 - std::exp(-a * T)) / a;
    case Kind::deterministic: return std::min(T, a);
    case Kind::scaled_xi:
        if (!base) throw parameter_error("scaled_xi eta not bound to an increment law");
        return a * law_int_survival(*base, T / a);
    default:
        throw parameter_error("int_survival: unsupported eta law kind");
    }
}

double EtaLaw::int_survival_sq(double T) const {
    if (T <= 0.0) return 0.0;
    switch (kind) {
    case Kind::pareto: return law_int_survival_sq(IncrementLaw::pareto(a, b), T);
    case Kind::exponential: return (1.0 - std::exp(-2.0 * a * T)) / (2.0 * a);
    case Kind::deterministic: return std::min(T, a);
    case Kind::scaled_xi:
        if (!base) throw parameter_error("scaled_xi eta not bound to an increment law");
        return a * law_int_survival_sq(*base, T / a);
    default:
        throw parameter_error("int_survival_sq: unsupported eta law kind");
    }
}

double EtaLaw::sample(Stream& stream) const {
    switch (kind) {
    case Kind::pareto: return stream.pareto(a, b);
    case Kind::exponential: return stream.exponential(a);
    case Kind::deterministic: return a;
    case Kind::normal: return stream.normal(a, b);
    case Kind::rademacher: return a * stream.rademacher();
    case Kind::scaled_xi:
        throw parameter_error("scaled_xi eta is drawn from the coupled increment, not sampled");
    }
    return 0.0;
}

std::string EtaLaw::describe() const {
    switch (kind) {
    case Kind::pareto: return "pareto(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::exponential: return "exponential(" + std::to_string(a) + ")";
    case Kind::deterministic: return "deterministic(" + std::to_string(a) + ")";
    case Kind::normal: return "normal(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::rademacher: return "rademacher(" + std::to_string(a) + ")";
    case Kind::scaled_xi: return "coupled(kappa=" + std::to_string(a) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CovarianceModel

double CovarianceModel::operator()(double u, double w) const {
    if (!(u > 0.0 && w > 0.0)) throw parameter_error("limit function requires u, w > 0");
    switch (form) {
    case Form::max_power: return std::pow(std::max(u, w), beta);
    case Form::prod_power: return std::pow(u * w, beta / 2.0);
    case Form::fictitious: return u == w ? std::pow(u, beta) : 0.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// factories

ResponseModel ResponseModel::indicator_survival(EtaLaw eta, CouplingMode mode, double kappa) {
    ResponseModel m;
    m.id_ = ModelId::indicator_survival;
    m.coupling_ = mode;
    m.kappa_ = kappa;
    if (mode == CouplingMode::coupled) {
        m.eta_ = EtaLaw::scaled_xi(kappa);
        m.rv_kind_ = RvKind::genuine; // indices resolved in bind_xi
    } else {
        if (eta.kind != EtaLaw::Kind::pareto)
            throw parameter_error("indicator_survival: eta must be pareto (regularly varying tail)");
        if (!(eta.a > 0.0 && eta.a < 1.0))
            throw parameter_error("indicator_survival: tail index must give beta in (-1,0)");
        m.eta_ = eta;
        m.beta_ = -eta.a;
        m.rho_ = -eta.a;
        m.h_bar_ = std::pow(eta.b, eta.a);
        m.v_bar_ = m.h_bar_;
        m.rv_kind_ = RvKind::genuine;
    }
    return m;
}

ResponseModel ResponseModel::indicator_hit(EtaLaw eta, CouplingMode mode, double kappa) {
    ResponseModel m;
    m.id_ = ModelId::indicator_hit;
    m.coupling_ = mode;
    m.kappa_ = kappa;
    if (mode == CouplingMode::coupled) {
        m.eta_ = EtaLaw::scaled_xi(kappa);
        m.rv_kind_ = RvKind::genuine;
        m.rho_ = 0.0;
        m.h_bar_ = 1.0;
        return m;
    }
    m.eta_ = eta;
    m.rho_ = 0.0;
    m.h_bar_ = 1.0;
    switch (eta.kind) {
    case EtaLaw::Kind::pareto:
        m.beta_ = -eta.a;
        m.v_bar_ = std::pow(eta.b, eta.a);
        m.rv_kind_ = RvKind::genuine;
        if (eta.a > 1.0) {
            // int_0^inf v = E[eta] - int_0^inf S^2
            m.v_dri_ = true;
            m.int_v_total_ =
                eta.a * eta.b / (eta.a - 1.0) - 2.0 * eta.a * eta.b / (2.0 * eta.a - 1.0);
        }
        break;
    case EtaLaw::Kind::exponential:
        m.v_dri_ = true;
        m.int_v_total_ = 1.0 / (2.0 * eta.a); // int S - S^2 = 1/a - 1/(2a)
        m.rv_kind_ = RvKind::none;
        break;
    case EtaLaw::Kind::deterministic:
        m.v_zero_ = true;
        m.v_dri_ = true;
        m.int_v_total_ = 0.0;
        m.rv_kind_ = RvKind::none;
        break;
    default:
        throw parameter_error("indicator_hit: eta must be pareto, exponential or deterministic");
    }
    return m;
}

ResponseModel ResponseModel::scaled_variable(EtaLaw eta, double beta) {
    if (!(beta > -1.0)) throw parameter_error("scaled_variable: beta must exceed -1");
    if (eta.kind != EtaLaw::Kind::normal && eta.kind != EtaLaw::Kind::rademacher &&
        eta.kind != EtaLaw::Kind::deterministic)
        throw parameter_error("scaled_variable: eta must have finite mean and variance "
                              "(normal, rademacher or deterministic)");
    ResponseModel m;
    m.id_ = ModelId::scaled_variable;
    m.eta_ = eta;
    m.beta_ = beta;
    m.rho_ = beta / 2.0;
    m.h_bar_ = eta.mean();
    m.v_bar_ = eta.variance();
    m.h_zero_ = eta.mean() == 0.0;
    m.v_zero_ = eta.variance() == 0.0;
    m.rv_kind_ = m.v_zero_ ? RvKind::none : RvKind::genuine;
    return m;
}

ResponseModel ResponseModel::ou_modulated(double beta) {
    if (!(beta > -1.0 && beta < 0.0))
        throw parameter_error("ou_modulated: beta must lie in (-1,0)");
    ResponseModel m;
    m.id_ = ModelId::ou_modulated;
    m.beta_ = beta;
    m.h_zero_ = true;
    m.rho_ = std::numeric_limits<double>::quiet_NaN();
    m.v_bar_ = 0.5;
    m.rv_kind_ = RvKind::fictitious;
    return m;
}

ResponseModel ResponseModel::shrinking_bm(double a) {
    if (!(a > 0.0 && a < 1.0)) throw parameter_error("shrinking_bm: exponent must lie in (0,1)");
    ResponseModel m;
    m.id_ = ModelId::shrinking_bm;
    m.bm_a_ = a;
    m.beta_ = -a;
    m.h_zero_ = true;
    m.rho_ = std::numeric_limits<double>::quiet_NaN();
    m.v_bar_ = 1.0;
    m.rv_kind_ = RvKind::genuine;
    return m;
}

ResponseModel ResponseModel::deterministic_h(double rho, double coef) {
    if (!(rho > -1.0)) throw parameter_error("deterministic_h: rho must exceed -1");
    if (coef == 0.0) throw parameter_error("deterministic_h: coef must be nonzero");
    ResponseModel m;
    m.id_ = ModelId::deterministic_h;
    m.rho_ = rho;
    m.coef_ = coef;
    m.h_bar_ = coef;
    m.v_zero_ = true;
    m.rv_kind_ = RvKind::none;
    return m;
}

ResponseModel ResponseModel::noisy_h(double rho, double coef, EtaLaw noise) {
    if (!(rho > -1.0 && rho <= 0.0)) throw parameter_error("noisy_h: rho must lie in (-1,0]");
    if (noise.kind != EtaLaw::Kind::normal && noise.kind != EtaLaw::Kind::rademacher)
        throw parameter_error("noisy_h: noise must be normal or rademacher");
    if (noise.mean() != 0.0) throw parameter_error("noisy_h: noise must be centered");
    if (!(noise.variance() > 0.0)) throw parameter_error("noisy_h: noise must be nondegenerate");
    ResponseModel m;
    m.id_ = ModelId::noisy_h;
    m.eta_ = noise;
    m.rho_ = rho;
    m.coef_ = coef;
    m.h_bar_ = coef;
    m.beta_ = 0.0;
    m.v_bar_ = noise.variance();
    m.rv_kind_ = RvKind::genuine;
    return m;
}

void ResponseModel::bind_xi(const IncrementLaw& law) {
    if (coupling_ != CouplingMode::coupled) return;
    eta_.base = law;
    eta_.a = kappa_;
    if (id_ == ModelId::indicator_survival) {
        if (law.kind() == LawKind::pareto) {
            const double alpha = law.alpha();
            beta_ = -alpha;
            rho_ = -alpha;
            h_bar_ = std::pow(kappa_ * law.param2(), alpha);
            v_bar_ = h_bar_;
            rv_kind_ = RvKind::genuine;
        } else {
            rv_kind_ = RvKind::none; // tail not regularly varying
        }
    } else if (id_ == ModelId::indicator_hit) {
        if (law.kind() == LawKind::pareto) {
            beta_ = -law.alpha();
            v_bar_ = std::pow(kappa_ * law.param2(), law.alpha());
            rv_kind_ = RvKind::genuine;
        } else {
            v_dri_ = law.finite_mean();
            rv_kind_ = RvKind::none;
            if (law.kind() == LawKind::exponential)
                int_v_total_ = kappa_ / (2.0 * law.param1());
        }
    }
}

// ---------------------------------------------------------------------------
// analytic moments

double ResponseModel::h(double t) const {
    if (t < 0.0) return 0.0;
    switch (id_) {
    case ModelId::indicator_survival: return eta_.survival(t);
    case ModelId::indicator_hit: return 1.0 - eta_.survival(t);
    case ModelId::scaled_variable: return eta_.mean() * pow0(t, beta_ / 2.0);
    case ModelId::ou_modulated: return 0.0;
    case ModelId::shrinking_bm: return 0.0;
    case ModelId::deterministic_h: return coef_ * pow0(t, rho_);
    case ModelId::noisy_h: return coef_ * std::pow(t + 1.0, rho_);
    }
    return 0.0;
}

double ResponseModel::v(double t) const {
    if (t < 0.0) return 0.0;
    switch (id_) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit: {
        const double s = eta_.survival(t);
        return s * (1.0 - s);
    }
    case ModelId::scaled_variable: {
        const double g = pow0(t, beta_ / 2.0);
        return eta_.variance() * g * g;
    }
    case ModelId::ou_modulated: return 0.5 * std::pow(t + 1.0, beta_);
    case ModelId::shrinking_bm: return std::pow(t + 1.0, -bm_a_);
    case ModelId::deterministic_h: return 0.0;
    case ModelId::noisy_h: return eta_.variance();
    }
    return 0.0;
}

double ResponseModel::f(double s, double t) const {
    if (s < 0.0 || t < 0.0) return 0.0;
    const double lo = std::min(s, t), hi = std::max(s, t);
    switch (id_) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit:
        // Cov(1{eta > s}, 1{eta > t}) = Cov(1{eta <= s}, 1{eta <= t})
        return eta_.survival(hi) * (1.0 - eta_.survival(lo));
    case ModelId::scaled_variable:
        return eta_.variance() * pow0(s, beta_ / 2.0) * pow0(t, beta_ / 2.0);
    case ModelId::ou_modulated:
        return 0.5 * std::pow(s + 1.0, beta_ / 2.0) * std::pow(t + 1.0, beta_ / 2.0) *
               std::exp(-(hi - lo));
    case ModelId::shrinking_bm: return std::pow(hi + 1.0, -bm_a_);
    case ModelId::deterministic_h: return 0.0;
    case ModelId::noisy_h: return eta_.variance();
    }
    return 0.0;
}

double ResponseModel::int_h(double T) const {
    if (T <= 0.0) return 0.0;
    switch (id_) {
    case ModelId::indicator_survival: return eta_.int_survival(T);
    case ModelId::indicator_hit: return T - eta_.int_survival(T);
    case ModelId::scaled_variable:
        return eta_.mean() * std::pow(T, 1.0 + beta_ / 2.0) / (1.0 + beta_ / 2.0);
    case ModelId::ou_modulated:
    case ModelId::shrinking_bm: return 0.0;
    case ModelId::deterministic_h: return coef_ * std::pow(T, 1.0 + rho_) / (1.0 + rho_);
    case ModelId::noisy_h:
        return coef_ * (std::pow(T + 1.0, 1.0 + rho_) - 1.0) / (1.0 + rho_);
    }
    return 0.0;
}

double ResponseModel::int_v(double T) const {
    if (T <= 0.0) return 0.0;
    switch (id_) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit: return eta_.int_survival(T) - eta_.int_survival_sq(T);
    case ModelId::scaled_variable:
        return eta_.variance() * std::pow(T, 1.0 + beta_) / (1.0 + beta_);
    case ModelId::ou_modulated:
        return (std::pow(T + 1.0, 1.0 + beta_) - 1.0) / (2.0 * (1.0 + beta_));
    case ModelId::shrinking_bm:
        return (std::pow(T + 1.0, 1.0 - bm_a_) - 1.0) / (1.0 - bm_a_);
    case ModelId::deterministic_h: return 0.0;
    case ModelId::noisy_h: return eta_.variance() * T;
    }
    return 0.0;
}

double ResponseModel::limit_C(double u, double w) const {
    return cov_model()(u, w);
}

CovarianceModel ResponseModel::cov_model() const {
    if (rv_kind_ == RvKind::none)
        throw unsupported_scenario_error(
            "limit function undefined: covariance is not regularly varying for " + describe());
    switch (id_) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit: return {CovarianceModel::Form::max_power, beta_};
    case ModelId::scaled_variable: return {CovarianceModel::Form::prod_power, beta_};
    case ModelId::ou_modulated: return {CovarianceModel::Form::fictitious, beta_};
    case ModelId::shrinking_bm: return {CovarianceModel::Form::max_power, beta_};
    case ModelId::noisy_h: return {CovarianceModel::Form::prod_power, 0.0};
    default: break;
    }
    throw unsupported_scenario_error("limit function undefined for " + describe());
}

// ---------------------------------------------------------------------------
// sampling

void ResponseModel::sample_path(std::span<const double> times, std::span<double> out,
                                Stream& stream, double coupled_xi) const {
    const std::size_t n = times.size();
    if (n == 0) return;
    switch (id_) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit: {
        const double eta = coupling_ == CouplingMode::coupled ? kappa_ * coupled_xi
                                                              : eta_.sample(stream);
        const bool hit = id_ == ModelId::indicator_hit;
        for (std::size_t i = 0; i < n; ++i) {
            const bool alive = eta > times[i];
            out[i] = (hit ? !alive : alive) ? 1.0 : 0.0;
        }
        return;
    }
    case ModelId::scaled_variable: {
        const double eta = eta_.sample(stream);
        for (std::size_t i = 0; i < n; ++i) out[i] = eta * pow0(times[i], beta_ / 2.0);
        return;
    }
    case ModelId::ou_modulated: {
        // exact stationary OU transitions on the sorted grid
        double z = stream.normal(0.0, std::sqrt(0.5));
        out[0] = std::pow(times[0] + 1.0, beta_ / 2.0) * z;
        for (std::size_t i = 1; i < n; ++i) {
            const double dt = times[i] - times[i - 1];
            const double e = std::exp(-dt);
            z = e * z + stream.normal(0.0, std::sqrt(0.5 * (1.0 - e * e)));
            out[i] = std::pow(times[i] + 1.0, beta_ / 2.0) * z;
        }
        return;
    }
    case ModelId::shrinking_bm: {
        // Brownian motion read at the decreasing times (t+1)^{-a}:
        // walk the transformed times in increasing order (reverse of t)
        double w = 0.0;
        double prev_b = 0.0;
        for (std::size_t j = n; j-- > 0;) {
            const double b = std::pow(times[j] + 1.0, -bm_a_);
            w += stream.normal(0.0, std::sqrt(b - prev_b));
            prev_b = b;
            out[j] = w;
        }
        return;
    }
    case ModelId::deterministic_h:
        for (std::size_t i = 0; i < n; ++i) out[i] = coef_ * pow0(times[i], rho_);
        return;
    case ModelId::noisy_h: {
        const double eta = eta_.sample(stream);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = coef_ * std::pow(times[i] + 1.0, rho_) + eta;
        return;
    }
    }
}

double ResponseModel::sample_marginal(double t, Stream& stream, double coupled_xi) const {
    double value;
    const double time = t;
    sample_path(std::span<const double>(&time, 1), std::span<double>(&value, 1), stream,
                coupled_xi);
    return value;
}

// ---------------------------------------------------------------------------
// mixing parameter

MixingResult ResponseModel::mixing_parameter(const IncrementLaw& law) const {
    MixingResult res;
    if (law.finite_mean()) {
        res.which = 'p';
        if (h_zero_) {
            res.value = 0.0;
        } else if (v_zero_) {
            if (!(rho_ > -1.0 / law.alpha()))
                throw unsupported_scenario_error(
                    "mixing: p > 0 requires h of index rho > -1/alpha");
            res.value = 1.0;
        } else {
            if (std::isnan(rho_) || h_bar_ == 0.0)
                throw unsupported_scenario_error("mixing: h is not a regularly varying power for " +
                                                 describe());
            const double c_hat = std::isfinite(law.sigma2())
                                     ? law.sigma2()
                                     : std::pow(law.ell_star(), 2.0 / law.alpha());
            const double e_num = 2.0 / law.alpha() + 2.0 * rho_;
            const double A = c_hat * h_bar_ * h_bar_;
            double e_den;
            double B;
            if (v_dri_) {
                e_den = 0.0;
                B = int_v_total_;
            } else if (rv_kind_ == RvKind::none) {
                throw unsupported_scenario_error(
                    "mixing: variance is neither regularly varying nor integrable for " +
                    describe());
            } else {
                e_den = 1.0 + beta_;
                B = v_bar_ / (1.0 + beta_);
            }
            if (e_num > e_den + kIdxTol) {
                if (!(rho_ > -1.0 / law.alpha()))
                    throw unsupported_scenario_error(
                        "mixing: p > 0 requires h of index rho > -1/alpha");
                res.value = 1.0;
            } else if (e_num < e_den - kIdxTol) {
                res.value = 0.0;
            } else {
                if (!(rho_ > -1.0 / law.alpha()))
                    throw unsupported_scenario_error(
                        "mixing: p > 0 requires h of index rho > -1/alpha");
                res.value = A / (A + B);
            }
        }
        res.case_label = "p=" + std::to_string(res.value);
    } else {
        res.which = 'q';
        if (h_zero_) {
            res.value = 0.0;
        } else if (v_zero_) {
            if (rho_ < -law.alpha())
                throw unsupported_scenario_error("mixing: q = 1 requires rho >= -alpha");
            if (rho_ == -law.alpha())
                throw unsupported_scenario_error(
                    "mixing: q = 1 with rho = -alpha needs h/P{xi>t} to diverge; "
                    "exact powers do not satisfy it");
            res.value = 1.0;
        } else {
            if (std::isnan(rho_) || h_bar_ == 0.0)
                throw unsupported_scenario_error("mixing: h is not a regularly varying power for " +
                                                 describe());
            if (rv_kind_ == RvKind::none) {
                if (v_dri_) {
                    // v vanishes at infinity, so v(t)P{xi>t} = o(t^{-alpha})
                    // and the mean term dominates whenever 2 rho > -alpha
                    if (2.0 * rho_ <= -law.alpha())
                        throw unsupported_scenario_error(
                            "mixing: cannot order h^2 against v P{xi>t} for " + describe());
                    res.value = 1.0;
                    res.case_label = "q=" + std::to_string(res.value);
                    return res;
                }
                throw unsupported_scenario_error(
                    "mixing: variance is not regularly varying for " + describe());
            }
            const double e_num = 2.0 * rho_;
            const double e_den = beta_ - law.alpha();
            const double A = h_bar_ * h_bar_;
            const double B = v_bar_ * law.ell_star();
            if (e_num > e_den + kIdxTol) {
                if (rho_ <= -law.alpha())
                    throw unsupported_scenario_error("mixing: q = 1 requires rho > -alpha here");
                res.value = 1.0;
            } else if (e_num < e_den - kIdxTol) {
                if (beta_ < -law.alpha())
                    throw unsupported_scenario_error("mixing: q < 1 requires beta >= -alpha");
                res.value = 0.0;
            } else {
                if (beta_ < -law.alpha())
                    throw unsupported_scenario_error("mixing: q < 1 requires beta >= -alpha");
                res.value = A / (A + B);
            }
        }
        res.case_label = "q=" + std::to_string(res.value);
    }
    return res;
}

std::string ResponseModel::describe() const {
    std::string tag;
    switch (id_) {
    case ModelId::indicator_survival: tag = "indicator_survival[eta=" + eta_.describe() + "]"; break;
    case ModelId::indicator_hit: tag = "indicator_hit[eta=" + eta_.describe() + "]"; break;
    case ModelId::scaled_variable:
        tag = "scaled_variable[eta=" + eta_.describe() + ",beta=" + std::to_string(beta_) + "]";
        break;
    case ModelId::ou_modulated: tag = "ou_modulated[beta=" + std::to_string(beta_) + "]"; break;
    case ModelId::shrinking_bm: tag = "shrinking_bm[a=" + std::to_string(bm_a_) + "]"; break;
    case ModelId::deterministic_h:
        tag = "deterministic_h[rho=" + std::to_string(rho_) + ",coef=" + std::to_string(coef_) + "]";
        break;
    case ModelId::noisy_h:
        tag = "noisy_h[rho=" + std::to_string(rho_) + ",coef=" + std::to_string(coef_) +
              ",noise=" + eta_.describe() + "]";
        break;
    }
    if (coupling_ == CouplingMode::coupled) tag += "(coupled)";
    return tag;
}

Moments eval_moments(const ResponseModel& model, double s, double t) {
    return {model.h(t), model.v(t), model.f(s, t)};
}

} // namespace renimm
