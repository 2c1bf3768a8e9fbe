#include "renimm/limit_processes.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "renimm/parallel.hpp"
#include "renimm/quadrature.hpp"
#include "renimm/special.hpp"

namespace renimm {

namespace {

constexpr double kPsdRelTol = 1e-8;

void check_alpha01(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw parameter_error("subordinator index alpha must lie in (0,1)");
}

// Lower-triangular-style factor A with A A^T = M, via symmetric
// eigendecomposition; negative eigenvalues within tolerance are clipped.
Eigen::MatrixXd psd_factor(const std::vector<double>& cov, std::size_t n) {
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cov[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw numerical_error("eigendecomposition failed for covariance matrix");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double max_eig = std::max(1.0, ev.maxCoeff());
    const double min_eig = ev.minCoeff();
    if (min_eig < -kPsdRelTol * max_eig)
        throw numerical_error("covariance matrix not PSD within tolerance; min eigenvalue " +
                                  std::to_string(min_eig),
                              min_eig);
    Eigen::VectorXd sq(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) sq(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
    return es.eigenvectors() * sq.asDiagonal();
}

// Stieltjes sum of g(y) against the discretized dW^inv of `path` over
// [0,u]. Atom i >= 1 sits at y = values[i] with mass times[i]-times[i-1];
// when `singular` the last included atom is evaluated at its cell
// midpoint so a (u-y)-type singularity is never hit at full strength.
template <class G>
double inverse_stieltjes(const GridPath& path, double u, bool singular, G&& g) {
    double acc = 0.0;
    const std::size_t n = path.values.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double y = path.values[i];
        if (y > u) break;
        const double mass = path.times[i] - path.times[i - 1];
        double ye = y;
        if (singular && (i + 1 >= n || path.values[i + 1] > u))
            ye = 0.5 * (path.values[i - 1] + y);
        acc += g(ye) * mass;
    }
    return acc;
}

} // namespace

GridPath simulate_subordinator(double alpha, double horizon, std::size_t n_steps, Stream& stream) {
    check_alpha01(alpha);
    if (n_steps < 1) throw parameter_error("simulate_subordinator: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw parameter_error("simulate_subordinator: horizon must be positive");
    GridPath path;
    path.times.resize(n_steps + 1);
    path.values.resize(n_steps + 1);
    path.times[0] = 0.0;
    path.values[0] = 0.0;
    const double dt = horizon / static_cast<double>(n_steps);
    const double cell_scale = std::pow(dt, 1.0 / alpha) * std::pow(std::tgamma(1.0 - alpha), 1.0 / alpha);
    double w = 0.0;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        w += cell_scale * sample_positive_stable(alpha, stream, StableScale::standard);
        path.times[i] = static_cast<double>(i) * dt;
        path.values[i] = w;
    }
    return path;
}

GridPath simulate_subordinator_exceeding(double alpha, double level, std::size_t n_steps,
                                         Stream& stream) {
    check_alpha01(alpha);
    if (!(level > 0.0)) throw parameter_error("level must be positive");
    // aim the nominal horizon at twice the mean passage time
    const double d_alpha = std::exp(-std::lgamma(1.0 - alpha) - std::lgamma(1.0 + alpha));
    const double horizon = 2.0 * d_alpha * std::pow(level, alpha);
    const double dt = horizon / static_cast<double>(n_steps);
    const double cell_scale = std::pow(dt, 1.0 / alpha) * std::pow(std::tgamma(1.0 - alpha), 1.0 / alpha);
    GridPath path;
    path.times.push_back(0.0);
    path.values.push_back(0.0);
    double w = 0.0;
    double t = 0.0;
    const std::size_t cap = 256 * n_steps + 1024;
    while (w <= level) {
        w += cell_scale * sample_positive_stable(alpha, stream, StableScale::standard);
        t += dt;
        path.times.push_back(t);
        path.values.push_back(w);
        if (path.values.size() > cap)
            throw resource_error("subordinator failed to exceed level within cell budget",
                                 static_cast<double>(path.values.size()));
    }
    return path;
}

std::vector<double> invert_subordinator(const GridPath& path, std::span<const double> s_grid) {
    std::vector<double> out(s_grid.size());
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        const double s = s_grid[k];
        if (s < 0.0) throw parameter_error("invert_subordinator: level must be nonnegative");
        if (s >= path.values.back())
            throw out_of_range_error("invert_subordinator: level beyond simulated range");
        const auto it = std::upper_bound(path.values.begin(), path.values.end(), s);
        const std::size_t idx = static_cast<std::size_t>(it - path.values.begin()) - 1;
        out[k] = path.times[idx];
    }
    return out;
}

double sample_inverse_marginal(double alpha, double y, Stream& stream) {
    check_alpha01(alpha);
    if (!(y > 0.0)) throw parameter_error("sample_inverse_marginal: y must be positive");
    const double s = sample_positive_stable(alpha, stream, StableScale::standard);
    return std::pow(y, alpha) / std::tgamma(1.0 - alpha) * std::pow(s, -alpha);
}

double theoretical_V_cov(const CovarianceModel& C, double u, double w) {
    if (!(u > 0.0)) throw parameter_error("theoretical_V_cov: u must be positive");
    if (u > w) throw parameter_error("theoretical_V_cov: expects u <= w");
    const double beta = C.beta;
    if (!(beta > -1.0)) throw parameter_error("theoretical_V_cov: beta must exceed -1");
    if (C.is_fictitious())
        return u == w ? std::pow(u, 1.0 + beta) / (1.0 + beta) : 0.0;
    if (u == w) return std::pow(u, 1.0 + beta) / (1.0 + beta); // C(a,a) = a^beta
    switch (C.form) {
    case CovarianceModel::Form::max_power:
        // int_0^u (w-y)^beta dy
        return (std::pow(w, 1.0 + beta) - std::pow(w - u, 1.0 + beta)) / (1.0 + beta);
    case CovarianceModel::Form::prod_power: {
        // int_0^u z^{beta/2} (w-u+z)^{beta/2} dz, substituting z = u-y
        const double gap = w - u;
        auto f = [&](double z) { return std::pow(z, beta / 2.0) * std::pow(gap + z, beta / 2.0); };
        return integrate_power_endpoint(f, u, beta / 2.0, 1e-8);
    }
    default: break;
    }
    throw parameter_error("theoretical_V_cov: unknown limit-function form");
}

std::vector<double> v_cov_matrix(const CovarianceModel& C, const std::vector<double>& u_grid) {
    const std::size_t m = u_grid.size();
    std::vector<double> cov(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double val = theoretical_V_cov(C, std::min(u_grid[i], u_grid[j]),
                                                 std::max(u_grid[i], u_grid[j]));
            cov[i * m + j] = val;
            cov[j * m + i] = val;
        }
    return cov;
}

double min_eigenvalue_sym(const std::vector<double>& m, std::size_t n) {
    Eigen::MatrixXd mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mat(i, j) = m[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    return es.eigenvalues().minCoeff();
}

FddSample sample_gaussian_fdd(const std::vector<double>& cov, const std::vector<double>& u_grid,
                              std::size_t reps, const StreamSeed& seed, unsigned jobs) {
    const std::size_t m = u_grid.size();
    const Eigen::MatrixXd factor = psd_factor(cov, m);
    FddSample sample;
    sample.u_grid = u_grid;
    sample.case_label = "gaussian";
    sample.normalization = "exact";
    sample.values.assign(reps * m, 0.0);
    parallel_for(reps, jobs, [&](std::size_t r) {
        Stream stream(derive_stream(seed, r));
        Eigen::VectorXd z(m);
        for (std::size_t j = 0; j < m; ++j) z(j) = stream.normal();
        const Eigen::VectorXd x = factor * z;
        for (std::size_t j = 0; j < m; ++j) sample.values[r * m + j] = x(j);
    });
    return sample;
}

FddSample sample_V_beta(const CovarianceModel& C, const std::vector<double>& u_grid,
                        std::size_t reps, const StreamSeed& seed, unsigned jobs) {
    FddSample s = sample_gaussian_fdd(v_cov_matrix(C, u_grid), u_grid, reps, seed, jobs);
    s.case_label = "v_beta";
    return s;
}

FddSample sample_Z(double alpha, const CovarianceModel& C, const std::vector<double>& u_grid,
                   std::size_t reps, const StreamSeed& seed, ZOptions opt) {
    check_alpha01(alpha);
    const double beta = C.beta;
    if (beta < -alpha) throw parameter_error("sample_Z: beta must be >= -alpha");
    if (opt.timechange_construction && C.form != CovarianceModel::Form::prod_power)
        throw parameter_error(
            "sample_Z: the Brownian time-change route realizes only the product-form limit "
            "function");
    const std::size_t m = u_grid.size();
    const double u_max = u_grid.back();
    const bool singular = beta < 0.0;

    FddSample sample;
    sample.u_grid = u_grid;
    sample.t = 0.0;
    sample.case_label = opt.timechange_construction ? "z_timechange" : "z";
    sample.normalization = "exact";
    sample.values.assign(reps * m, 0.0);

    parallel_for(reps, opt.jobs, [&](std::size_t r) {
        Stream stream(derive_stream(seed, r));
        const GridPath path = simulate_subordinator_exceeding(alpha, u_max, opt.n_steps, stream);
        if (opt.timechange_construction) {
            // Z(u) = int (u-y)^{beta/2} dB(W^inv(y)): one Brownian
            // increment per atom, shared across grid points.
            const std::size_t n = path.values.size();
            std::vector<double> acc(m, 0.0);
            for (std::size_t i = 1; i < n; ++i) {
                const double y = path.values[i];
                if (y > u_max) break;
                const double mass = path.times[i] - path.times[i - 1];
                const double db = std::sqrt(mass) * stream.normal();
                for (std::size_t j = 0; j < m; ++j) {
                    if (y > u_grid[j]) continue;
                    double ye = y;
                    if (singular && (i + 1 >= n || path.values[i + 1] > u_grid[j]))
                        ye = 0.5 * (path.values[i - 1] + y);
                    acc[j] += std::pow(u_grid[j] - ye, beta / 2.0) * db;
                }
            }
            for (std::size_t j = 0; j < m; ++j) sample.values[r * m + j] = acc[j];
            return;
        }
        // conditional covariance, then one Gaussian draw given the path
        std::vector<double> cond(m * m);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = j; k < m; ++k) {
                const double uj = u_grid[j], uk = u_grid[k];
                const double val = inverse_stieltjes(path, uj, singular, [&](double y) {
                    return C(uj - y, uk - y);
                });
                cond[j * m + k] = val;
                cond[k * m + j] = val;
            }
        }
        const Eigen::MatrixXd factor = psd_factor(cond, m);
        Eigen::VectorXd z(m);
        for (std::size_t j = 0; j < m; ++j) z(j) = stream.normal();
        const Eigen::VectorXd x = factor * z;
        for (std::size_t j = 0; j < m; ++j) sample.values[r * m + j] = x(j);
    });
    return sample;
}

std::vector<double> fractional_integral_stable(double alpha, double rho,
                                               const std::vector<double>& u_grid,
                                               std::size_t n_steps, Stream& stream) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw parameter_error("fractional_integral_stable: alpha must lie in (1,2]");
    if (!(rho > -1.0 / alpha))
        throw parameter_error("fractional_integral_stable: rho <= -1/alpha diverges");
    if (u_grid.empty()) return {};
    const double u_max = u_grid.back();
    // uniform grid refined so every u_grid point is a cell boundary
    std::vector<double> grid;
    grid.reserve(n_steps + u_grid.size() + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        grid.push_back(u_max * static_cast<double>(i) / static_cast<double>(n_steps));
    grid.insert(grid.end(), u_grid.begin(), u_grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    StableSpec spec;
    spec.alpha = alpha;
    spec.skew = StableSkew::spectrally_negative;
    spec.scale = StableScale::theory;

    std::vector<double> acc(u_grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double y = grid[i];
        const double dy = grid[i + 1] - y;
        if (dy <= 0.0) continue;
        const double ds = sample_stable_increment(spec, dy, stream);
        for (std::size_t j = 0; j < u_grid.size(); ++j) {
            if (grid[i + 1] <= u_grid[j] + 1e-15)
                acc[j] += (rho == 0.0 ? 1.0 : std::pow(u_grid[j] - y, rho)) * ds;
        }
    }
    return acc;
}

std::vector<double> fractional_integral_inverse(double alpha, double rho,
                                                const std::vector<double>& u_grid,
                                                const GridPath& path) {
    if (rho < -alpha)
        throw parameter_error("fractional_integral_inverse: rho < -alpha is not integrable");
    std::vector<double> out(u_grid.size());
    const bool singular = rho < 0.0;
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
        const double u = u_grid[j];
        if (u >= path.values.back())
            throw out_of_range_error("fractional_integral_inverse: grid beyond path range");
        out[j] = rho == 0.0
                     ? inverse_stieltjes(path, u, false, [](double) { return 1.0; })
                     : inverse_stieltjes(path, u, singular,
                                         [&](double y) { return std::pow(u - y, rho); });
    }
    return out;
}

void LimitFddSpec::validate() const {
    if (u_grid.empty()) throw parameter_error("limit spec: u_grid must be nonempty");
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
        if (!(u_grid[j] > 0.0)) throw parameter_error("limit spec: u_grid must be positive");
        if (j > 0 && !(u_grid[j] > u_grid[j - 1]))
            throw parameter_error("limit spec: u_grid must be strictly increasing");
    }
    switch (kase) {
    case Case::v_beta:
        if (!(C.beta > -1.0)) throw parameter_error("v_beta: beta must exceed -1");
        break;
    case Case::z:
        if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("z: alpha must lie in (0,1)");
        if (C.beta < -alpha) throw parameter_error("z: beta must be >= -alpha");
        break;
    case Case::frac_stable:
        if (!(alpha > 1.0 && alpha <= 2.0))
            throw parameter_error("frac_stable: alpha must lie in (1,2]");
        if (!(rho > -1.0 / alpha)) throw parameter_error("frac_stable: rho must exceed -1/alpha");
        break;
    case Case::frac_inverse:
        if (!(alpha > 0.0 && alpha < 1.0))
            throw parameter_error("frac_inverse: alpha must lie in (0,1)");
        if (rho < -alpha) throw parameter_error("frac_inverse: rho must be >= -alpha");
        break;
    case Case::thm21_mix:
        if (!(alpha > 1.0 && alpha <= 2.0))
            throw parameter_error("thm21_mix: alpha must lie in (1,2]");
        if (!(p >= 0.0 && p <= 1.0)) throw parameter_error("thm21_mix: p must lie in [0,1]");
        if (p < 1.0 && !(C.beta > -1.0))
            throw parameter_error("thm21_mix: beta must exceed -1");
        if (p > 0.0 && !(rho > -1.0 / alpha))
            throw parameter_error("thm21_mix: rho must exceed -1/alpha");
        if (!(mu > 0.0)) throw parameter_error("thm21_mix: mu must be positive");
        break;
    case Case::thm22_mix:
        if (!(alpha > 0.0 && alpha < 1.0))
            throw parameter_error("thm22_mix: alpha must lie in (0,1)");
        if (!(q >= 0.0 && q <= 1.0)) throw parameter_error("thm22_mix: q must lie in [0,1]");
        if (q < 1.0 && C.beta < -alpha)
            throw parameter_error("thm22_mix: beta must be >= -alpha");
        if (q > 0.0 && rho < -alpha)
            throw parameter_error("thm22_mix: rho must be >= -alpha");
        if (q > 0.0 && q < 1.0 && std::abs(rho - (C.beta - alpha) / 2.0) > 1e-12)
            throw parameter_error("thm22_mix: q in (0,1) fixes rho = (beta-alpha)/2");
        break;
    }
}

std::string LimitFddSpec::label() const {
    switch (kase) {
    case Case::v_beta: return "v_beta";
    case Case::z: return "z";
    case Case::frac_stable: return "frac_stable";
    case Case::frac_inverse: return "frac_inverse";
    case Case::thm21_mix: return "thm21_mix";
    case Case::thm22_mix: return "thm22_mix";
    }
    return "?";
}

FddSample sample_limit_fdd(const LimitFddSpec& spec, std::size_t reps, const StreamSeed& seed,
                           unsigned jobs) {
    spec.validate();
    const std::size_t m = spec.u_grid.size();
    FddSample sample;
    sample.u_grid = spec.u_grid;
    sample.case_label = spec.label();
    sample.normalization = "exact";
    sample.values.assign(reps * m, 0.0);

    switch (spec.kase) {
    case LimitFddSpec::Case::v_beta: return sample_V_beta(spec.C, spec.u_grid, reps, seed, jobs);
    case LimitFddSpec::Case::z: {
        ZOptions opt;
        opt.n_steps = spec.n_steps;
        opt.jobs = jobs;
        return sample_Z(spec.alpha, spec.C, spec.u_grid, reps, seed, opt);
    }
    case LimitFddSpec::Case::frac_stable:
        parallel_for(reps, jobs, [&](std::size_t r) {
            Stream stream(derive_stream(seed, r));
            const std::vector<double> x =
                fractional_integral_stable(spec.alpha, spec.rho, spec.u_grid, spec.n_steps, stream);
            for (std::size_t j = 0; j < m; ++j) sample.values[r * m + j] = x[j];
        });
        return sample;
    case LimitFddSpec::Case::frac_inverse:
        parallel_for(reps, jobs, [&](std::size_t r) {
            Stream stream(derive_stream(seed, r));
            const GridPath path =
                simulate_subordinator_exceeding(spec.alpha, spec.u_grid.back(), spec.n_steps, stream);
            const std::vector<double> x =
                fractional_integral_inverse(spec.alpha, spec.rho, spec.u_grid, path);
            for (std::size_t j = 0; j < m; ++j) sample.values[r * m + j] = x[j];
        });
        return sample;
    case LimitFddSpec::Case::thm21_mix: {
        const double cv = std::sqrt((1.0 - spec.p) * (1.0 + spec.C.beta) / spec.mu);
        const double cs = std::sqrt(spec.p) * std::pow(spec.mu, -(spec.alpha + 1.0) / spec.alpha);
        FddSample vpart;
        if (spec.p < 1.0)
            vpart = sample_V_beta(spec.C, spec.u_grid, reps, derive_stream(seed, 1), jobs);
        parallel_for(reps, jobs, [&](std::size_t r) {
            std::vector<double> ipart(m, 0.0);
            if (spec.p > 0.0) {
                Stream stream(derive_stream(derive_stream(seed, 2), r));
                ipart = fractional_integral_stable(spec.alpha, spec.rho, spec.u_grid, spec.n_steps,
                                                   stream);
            }
            for (std::size_t j = 0; j < m; ++j) {
                double val = cs * ipart[j];
                if (spec.p < 1.0) val += cv * vpart.values[r * m + j];
                sample.values[r * m + j] = val;
            }
        });
        return sample;
    }
    case LimitFddSpec::Case::thm22_mix: {
        const double cz = std::sqrt(1.0 - spec.q);
        const double cq = std::sqrt(spec.q);
        const bool singular = spec.C.beta < 0.0;
        parallel_for(reps, jobs, [&](std::size_t r) {
            Stream stream(derive_stream(seed, r));
            const GridPath path =
                simulate_subordinator_exceeding(spec.alpha, spec.u_grid.back(), spec.n_steps, stream);
            // shared path: Q integral and conditional-Gaussian part
            std::vector<double> qpart(m, 0.0);
            if (spec.q > 0.0)
                qpart = fractional_integral_inverse(spec.alpha, spec.rho, spec.u_grid, path);
            std::vector<double> zpart(m, 0.0);
            if (spec.q < 1.0) {
                std::vector<double> cond(m * m);
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = j; k < m; ++k) {
                        const double uj = spec.u_grid[j], uk = spec.u_grid[k];
                        const double val = inverse_stieltjes(path, uj, singular, [&](double y) {
                            return spec.C(uj - y, uk - y);
                        });
                        cond[j * m + k] = val;
                        cond[k * m + j] = val;
                    }
                const Eigen::MatrixXd factor = psd_factor(cond, m);
                Eigen::VectorXd z(m);
                for (std::size_t j = 0; j < m; ++j) z(j) = stream.normal();
                const Eigen::VectorXd x = factor * z;
                for (std::size_t j = 0; j < m; ++j) zpart[j] = x(j);
            }
            for (std::size_t j = 0; j < m; ++j)
                sample.values[r * m + j] = cz * zpart[j] + cq * qpart[j];
        });
        return sample;
    }
    }
    return sample;
}

double d_matrix(const std::vector<double>& weights, const std::vector<double>& u_points,
                const CovarianceModel& C) {
    if (weights.size() != u_points.size())
        throw parameter_error("d_matrix: weights and u_points must align");
    const double beta = C.beta;
    double acc = 0.0;
    for (std::size_t j = 0; j < u_points.size(); ++j)
        acc += weights[j] * weights[j] * std::pow(u_points[j], 1.0 + beta) / (1.0 + beta);
    for (std::size_t i = 0; i < u_points.size(); ++i)
        for (std::size_t j = i + 1; j < u_points.size(); ++j)
            acc += 2.0 * weights[i] * weights[j] *
                   theoretical_V_cov(C, std::min(u_points[i], u_points[j]),
                                     std::max(u_points[i], u_points[j]));
    return acc;
}

double d_alpha_beta(const std::vector<double>& weights, const std::vector<double>& u_points,
                    const CovarianceModel& C, const GridPath& path) {
    if (weights.size() != u_points.size())
        throw parameter_error("d_alpha_beta: weights and u_points must align");
    const double beta = C.beta;
    const bool singular = beta < 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < u_points.size(); ++j) {
        const double u = u_points[j];
        acc += weights[j] * weights[j] *
               inverse_stieltjes(path, u, singular,
                                 [&](double y) { return std::pow(u - y, beta); });
    }
    for (std::size_t i = 0; i < u_points.size(); ++i)
        for (std::size_t j = i + 1; j < u_points.size(); ++j) {
            const double ui = u_points[i], uj = u_points[j];
            acc += 2.0 * weights[i] * weights[j] *
                   inverse_stieltjes(path, ui, singular,
                                     [&](double y) { return C(ui - y, uj - y); });
        }
    return acc;
}

double negative_moment(double alpha, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw parameter_error("negative_moment: theta must lie in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw parameter_error("negative_moment: alpha must lie in (0,1)");
    // substitute s = x^{1/theta}: integrand becomes exp(-x^{alpha/theta})/theta
    const double xmax = std::pow(745.0, theta / alpha);
    auto f = [&](double x) { return std::exp(-std::pow(x, alpha / theta)) / theta; };
    const double integral = integrate_adaptive(f, 0.0, xmax, 1e-10);
    return integral / std::tgamma(theta);
}

} // namespace renimm
