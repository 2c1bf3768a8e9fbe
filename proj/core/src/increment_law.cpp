#include "renimm/increment_law.hpp"

#include <cmath>

#include "renimm/special.hpp"

namespace renimm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

IncrementLaw IncrementLaw::exponential(double rate) {
    if (!(rate > 0.0)) throw parameter_error("exponential: rate must be positive");
    IncrementLaw law;
    law.kind_ = LawKind::exponential;
    law.p1_ = rate;
    law.alpha_ = 2.0;
    law.mu_ = 1.0 / rate;
    law.sigma2_ = 1.0 / (rate * rate);
    return law;
}

IncrementLaw IncrementLaw::pareto(double alpha, double x_min) {
    if (!(x_min > 0.0)) throw parameter_error("pareto: x_min must be positive");
    if (alpha == 1.0) throw parameter_error("pareto: alpha = 1 is not supported");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw parameter_error("pareto: alpha must lie in (0,1) or (1,2)");
    IncrementLaw law;
    law.kind_ = LawKind::pareto;
    law.p1_ = alpha;
    law.p2_ = x_min;
    law.alpha_ = alpha;
    law.mu_ = alpha > 1.0 ? alpha * x_min / (alpha - 1.0) : kInf;
    law.sigma2_ = kInf;
    law.ell_star_ = std::pow(x_min, alpha);
    return law;
}

IncrementLaw IncrementLaw::lognormal(double m, double s) {
    if (!(s > 0.0)) throw parameter_error("lognormal: s must be positive");
    IncrementLaw law;
    law.kind_ = LawKind::lognormal;
    law.p1_ = m;
    law.p2_ = s;
    law.alpha_ = 2.0;
    law.mu_ = std::exp(m + 0.5 * s * s);
    law.sigma2_ = (std::exp(s * s) - 1.0) * std::exp(2.0 * m + s * s);
    return law;
}

IncrementLaw IncrementLaw::deterministic(double value) {
    if (!(value > 0.0)) throw parameter_error("deterministic: value must be positive");
    IncrementLaw law;
    law.kind_ = LawKind::deterministic;
    law.p1_ = value;
    law.alpha_ = 2.0;
    law.mu_ = value;
    law.sigma2_ = 0.0;
    return law;
}

double IncrementLaw::survival(double t) const {
    if (t < 0.0) return 1.0;
    switch (kind_) {
    case LawKind::exponential: return std::exp(-p1_ * t);
    case LawKind::pareto: return t < p2_ ? 1.0 : std::pow(p2_ / t, p1_);
    case LawKind::lognormal:
        if (t == 0.0) return 1.0;
        return 1.0 - normal_cdf((std::log(t) - p1_) / p2_);
    case LawKind::deterministic: return t < p1_ ? 1.0 : 0.0;
    }
    return 0.0;
}

double IncrementLaw::sample(Stream& stream) const {
    switch (kind_) {
    case LawKind::exponential: return stream.exponential(p1_);
    case LawKind::pareto: return stream.pareto(p1_, p2_);
    case LawKind::lognormal: return stream.lognormal(p1_, p2_);
    case LawKind::deterministic: return p1_;
    }
    return 0.0;
}

double IncrementLaw::norming_c(double t) const {
    if (!(t > 0.0)) throw parameter_error("norming_c: t must be positive");
    if (alpha_ <= 1.0)
        throw unsupported_scenario_error(
            "norming_c: no first-passage normalization in the infinite-mean regime");
    if (std::isfinite(sigma2_)) return std::sqrt(sigma2_ * t);
    // pareto, alpha in (1,2): solve t ell*/c^alpha = 1 with constant ell*
    return std::pow(ell_star_ * t, 1.0 / alpha_);
}

std::string IncrementLaw::describe() const {
    switch (kind_) {
    case LawKind::exponential: return "exponential(rate=" + std::to_string(p1_) + ")";
    case LawKind::pareto:
        return "pareto(alpha=" + std::to_string(p1_) + ",x_min=" + std::to_string(p2_) + ")";
    case LawKind::lognormal:
        return "lognormal(m=" + std::to_string(p1_) + ",s=" + std::to_string(p2_) + ")";
    case LawKind::deterministic: return "deterministic(" + std::to_string(p1_) + ")";
    }
    return "?";
}

} // namespace renimm
