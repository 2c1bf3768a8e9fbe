#ifndef RENIMM_LIMIT_PROCESSES_HPP
#define RENIMM_LIMIT_PROCESSES_HPP

#include <span>

#include "renimm/fdd.hpp"
#include "renimm/response.hpp"

namespace renimm {

/// Finite-grid path of a monotone process; values are read between grid
/// points as a cadlag step function unless marked linear.
struct GridPath {
    std::vector<double> times;  // strictly increasing, times[0] = 0
    std::vector<double> values; // nondecreasing, values[0] = 0
    enum class Interp { cadlag_step, linear } interp = Interp::cadlag_step;
};

/// Stable subordinator on a uniform grid over [0, horizon]:
/// Laplace exponent Gamma(1-alpha) t z^alpha (theory convention).
GridPath simulate_subordinator(double alpha, double horizon, std::size_t n_steps, Stream& stream);

/// Same process, extended cell by cell until the value exceeds `level`.
/// The cell width is level^alpha scaled so that roughly n_steps cells
/// cover the passage time.
GridPath simulate_subordinator_exceeding(double alpha, double level, std::size_t n_steps,
                                         Stream& stream);

/// Right-continuous step inversion of a nondecreasing grid path:
/// for each s, the largest grid time whose value does not exceed s.
/// Downward bias is at most one grid cell.
std::vector<double> invert_subordinator(const GridPath& path, std::span<const double> s_grid);

/// One draw of the inverse-subordinator marginal via the identity
/// W^inv(y) =d y^alpha Gamma(1-alpha)^{-1} S^{-alpha} with S standard
/// positive stable.
double sample_inverse_marginal(double alpha, double y, Stream& stream);

/// Covariance of the Gaussian process V_beta: int_0^u C(u-y, w-y) dy for
/// u <= w (closed forms for the catalog limit functions, singularity-
/// aware quadrature otherwise). Fictitious C gives u^{1+beta}/(1+beta)
/// on the diagonal and 0 off it.
double theoretical_V_cov(const CovarianceModel& C, double u, double w);

/// Row-major covariance matrix of V_beta on a grid.
std::vector<double> v_cov_matrix(const CovarianceModel& C, const std::vector<double>& u_grid);

/// Minimum eigenvalue of a symmetric row-major matrix (diagnostics).
double min_eigenvalue_sym(const std::vector<double>& m, std::size_t n);

/// Centered Gaussian FDD sample with the given covariance matrix.
/// Fails with the offending eigenvalue if the matrix is not PSD within
/// a 1e-8 relative tolerance; smaller negatives are clipped.
FddSample sample_gaussian_fdd(const std::vector<double>& cov, const std::vector<double>& u_grid,
                              std::size_t reps, const StreamSeed& seed, unsigned jobs = 0);

/// Centered Gaussian V_beta sample on the grid.
FddSample sample_V_beta(const CovarianceModel& C, const std::vector<double>& u_grid,
                        std::size_t reps, const StreamSeed& seed, unsigned jobs = 0);

struct ZOptions {
    std::size_t n_steps = 4096;
    unsigned jobs = 0;
    bool timechange_construction = false; // Brownian-in-inverse-time route (beta = prod form)
};

/// Conditionally Gaussian Z_{alpha,beta}: per replication one inverse-
/// subordinator path drives the conditional covariance
/// int_[0,u] C(u-y,w-y) dW^inv(y).
FddSample sample_Z(double alpha, const CovarianceModel& C, const std::vector<double>& u_grid,
                   std::size_t reps, const StreamSeed& seed, ZOptions opt = {});

/// One replication of int_0^u (u-y)^rho dS_alpha(y) on the grid
/// (left-endpoint Riemann-Stieltjes sum, exact stable increments).
std::vector<double> fractional_integral_stable(double alpha, double rho,
                                               const std::vector<double>& u_grid,
                                               std::size_t n_steps, Stream& stream);

/// Q_{alpha,rho}(u) = int_[0,u] (u-y)^rho dW^inv(y) against a simulated
/// subordinator path. rho < -alpha is rejected.
std::vector<double> fractional_integral_inverse(double alpha, double rho,
                                                const std::vector<double>& u_grid,
                                                const GridPath& path);

/// Limit-law sampler specification for the theorem mixtures.
struct LimitFddSpec {
    enum class Case { v_beta, z, frac_stable, frac_inverse, thm21_mix, thm22_mix };
    Case kase = Case::v_beta;
    double alpha = 0.5;
    double rho = 0.0;
    double p = 0.0;
    double q = 0.0;
    double mu = 1.0;
    CovarianceModel C{CovarianceModel::Form::max_power, 0.0};
    std::vector<double> u_grid;
    std::size_t n_steps = 4096;

    double beta() const { return C.beta; }
    void validate() const;
    std::string label() const;
};

/// Draw `reps` joint observations of the requested limit process.
/// thm21_mix combines independent V_beta and stable-integral parts;
/// thm22_mix draws one subordinator path per replication and reuses it
/// for both the Z part and the Q integral (the summands are dependent).
FddSample sample_limit_fdd(const LimitFddSpec& spec, std::size_t reps, const StreamSeed& seed,
                           unsigned jobs = 0);

/// D(u_1..u_m) of the finite-mean martingale limit:
/// (1+beta)^{-1} sum w_j^2 u_j^{1+beta} + 2 sum_{i<j} w_i w_j int_0^{u_i} C.
double d_matrix(const std::vector<double>& weights, const std::vector<double>& u_points,
                const CovarianceModel& C);

/// Path-Stieltjes analogue D_{alpha,beta} against a subordinator path.
double d_alpha_beta(const std::vector<double>& weights, const std::vector<double>& u_points,
                    const CovarianceModel& C, const GridPath& path);

/// E[W^{-theta}] for the standard positive stable law, computed by
/// numerical integration of (1/Gamma(theta)) int s^{theta-1} e^{-s^alpha} ds.
double negative_moment(double alpha, double theta);

} // namespace renimm

#endif
