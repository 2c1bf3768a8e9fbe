#ifndef RENIMM_SPECIAL_HPP
#define RENIMM_SPECIAL_HPP

#include <cmath>

namespace renimm {

/// Standard normal CDF.
double normal_cdf(double x);

/// Complementary Kolmogorov distribution Q(lambda) = P{sup|B| > lambda}
/// = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2). Used for asymptotic
/// KS p-values.
double kolmogorov_q(double lambda);

/// Gamma function ratio helpers evaluated through lgamma for stability.
inline double gamma_ratio(double num, double den) {
    return std::exp(std::lgamma(num) - std::lgamma(den));
}

/// E[W_alpha_inverse(y)] = y^alpha / (Gamma(1-alpha) Gamma(1+alpha)).
double inverse_subordinator_mean(double alpha, double y);

/// E[Z_{alpha,beta}(u)^2] = Gamma(beta+1)/(Gamma(1-alpha) Gamma(alpha+beta+1)) u^{beta+alpha}.
double z_second_moment(double alpha, double beta, double u);

/// E[ int_0^s (s-y)^rho dW_alpha_inverse(y) ]
///   = Gamma(rho+1)/(Gamma(1-alpha) Gamma(rho+alpha+1)) s^{rho+alpha}.
double q_integral_mean(double alpha, double rho, double s);

} // namespace renimm

#endif
