#include "renimm/quadrature.hpp"

#include <cmath>

namespace renimm {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    const double scale = std::abs(whole) > 1.0 ? std::abs(whole) : 1.0;
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol * scale, max_depth);
}

double integrate_power_endpoint(const std::function<double(double)>& f, double b, double beta,
                                double tol) {
    if (beta >= 0.0) return integrate_adaptive(f, 0.0, b, tol);
    // z = x^{1/(1+beta)}: dz = (1/(1+beta)) x^{1/(1+beta)-1} dx maps the
    // z^beta singularity at 0 to a bounded integrand in x.
    const double p = 1.0 / (1.0 + beta);
    const double xmax = std::pow(b, 1.0 + beta);
    auto g = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double z = std::pow(x, p);
        return f(z) * p * std::pow(x, p - 1.0);
    };
    return integrate_adaptive(g, 0.0, xmax, tol);
}

} // namespace renimm
