#ifndef RENIMM_STATS_HPP
#define RENIMM_STATS_HPP

#include <span>
#include <vector>

#include "renimm/fdd.hpp"
#include "renimm/rng.hpp"

namespace renimm {

/// Two-sample Kolmogorov-Smirnov statistic sup|F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample KS p-value.
double ks_p_value(double statistic, std::size_t n, std::size_t m);

/// One-sample KS statistic against a normal CDF.
double ks_statistic_normal(std::span<const double> x, double mean, double sd);

/// Asymptotic one-sample KS p-value.
double ks_p_value(double statistic, std::size_t n);

struct EnergyResult {
    double statistic = 0.0; // (nm/(n+m)) (2A - B - C) on the rows used
    double p_value = 1.0;
    std::size_t n_used = 0;
    std::size_t m_used = 0;
};

/// Two-sample energy-distance test on joint rows, with a permutation
/// p-value. Rows beyond `cap` per side are not used (bounded reservoir);
/// the subsample is the deterministic head, valid because rows are
/// exchangeable by construction.
EnergyResult energy_distance_test(const FddSample& x, const FddSample& y, std::size_t n_perms,
                                  const StreamSeed& seed, std::size_t cap = 2000,
                                  unsigned jobs = 0);

/// Empirical characteristic function of the unit-weight linear
/// functional sum_j values[r,j], evaluated at z.
std::pair<double, double> empirical_cf(const FddSample& x, double z);

/// sup_z |cf_x(z) - cf_y(z)| over the z grid.
double cf_gap(const FddSample& x, const FddSample& y, std::span<const double> z_grid);

/// sup_z |cf_x(z) - exp(-z^2 var/2)| for a centered Gaussian reference
/// of the unit-weight functional.
double cf_gap_gaussian(const FddSample& x, double functional_variance,
                       std::span<const double> z_grid);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Smooth a lattice-valued sample with uniform noise over one cell
/// (+- delta/2). Counting statistics live on a lattice of width
/// 1/scale; dithering removes the discretization atoms before a KS
/// comparison against a continuous reference while perturbing the CDF
/// only at O(delta^2).
std::vector<double> dither_lattice(std::span<const double> x, double delta, Stream& stream);

} // namespace renimm

#endif
