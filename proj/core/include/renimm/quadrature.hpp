#ifndef RENIMM_QUADRATURE_HPP
#define RENIMM_QUADRATURE_HPP

#include <functional>

namespace renimm {

/// Adaptive Simpson quadrature of f over [a,b] to relative tolerance tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10, int max_depth = 48);

/// Integral of f over (0,b] where f(z) ~ c z^beta near 0 for some
/// beta > -1. Substitutes z = x^{1/(1+beta)} to remove the endpoint
/// singularity, then integrates adaptively.
double integrate_power_endpoint(const std::function<double(double)>& f, double b,
                                double beta, double tol = 1e-10);

} // namespace renimm

#endif
