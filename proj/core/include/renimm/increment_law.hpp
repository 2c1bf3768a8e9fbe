#ifndef RENIMM_INCREMENT_LAW_HPP
#define RENIMM_INCREMENT_LAW_HPP

#include <cmath>
#include <limits>
#include <string>

#include "renimm/rng.hpp"

namespace renimm {

enum class LawKind { exponential, pareto, lognormal, deterministic };

/// Law of the positive inter-arrival increment xi, together with its
/// attraction index, moments, and the constant slowly varying factor used
/// by the analytic norming. alpha = 1 is rejected.
class IncrementLaw {
public:
    static IncrementLaw exponential(double rate);
    static IncrementLaw pareto(double alpha, double x_min);
    static IncrementLaw lognormal(double m, double s);
    static IncrementLaw deterministic(double value);

    LawKind kind() const { return kind_; }
    /// Attraction index: 2 for finite-variance laws, the tail index for pareto.
    double alpha() const { return alpha_; }
    /// Mean (infinity for pareto with alpha < 1).
    double mu() const { return mu_; }
    /// Variance (infinity for pareto).
    double sigma2() const { return sigma2_; }
    bool finite_mean() const { return std::isfinite(mu_); }
    /// Constant value of the slowly varying tail factor ell*.
    double ell_star() const { return ell_star_; }

    /// P{xi > t}.
    double survival(double t) const;

    double sample(Stream& stream) const;

    /// Norming function c(t) of the first-passage limit theorem:
    /// sigma sqrt(t) when the variance is finite, (ell* t)^{1/alpha} for
    /// pareto with alpha in (1,2). Unsupported for alpha <= 1.
    double norming_c(double t) const;

    std::string describe() const;

    double param1() const { return p1_; }
    double param2() const { return p2_; }

private:
    IncrementLaw() = default;
    LawKind kind_ = LawKind::exponential;
    double p1_ = 1.0, p2_ = 0.0;
    double alpha_ = 2.0;
    double mu_ = 1.0;
    double sigma2_ = 1.0;
    double ell_star_ = 0.0;
};

} // namespace renimm

#endif
