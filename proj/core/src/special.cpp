#include "renimm/special.hpp"

namespace renimm {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    double q = 2.0 * sum;
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

double inverse_subordinator_mean(double alpha, double y) {
    return std::pow(y, alpha) * std::exp(-std::lgamma(1.0 - alpha) - std::lgamma(1.0 + alpha));
}

double z_second_moment(double alpha, double beta, double u) {
    return std::exp(std::lgamma(beta + 1.0) - std::lgamma(1.0 - alpha) - std::lgamma(alpha + beta + 1.0)) *
           std::pow(u, beta + alpha);
}

double q_integral_mean(double alpha, double rho, double s) {
    return std::exp(std::lgamma(rho + 1.0) - std::lgamma(1.0 - alpha) - std::lgamma(rho + alpha + 1.0)) *
           std::pow(s, rho + alpha);
}

} // namespace renimm
