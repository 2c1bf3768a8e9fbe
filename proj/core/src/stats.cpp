#include "renimm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "renimm/parallel.hpp"
#include "renimm/special.hpp"

namespace renimm {

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_p_value(double statistic, std::size_t n, std::size_t m) {
    const double ne = static_cast<double>(n) * static_cast<double>(m) /
                      (static_cast<double>(n) + static_cast<double>(m));
    return kolmogorov_q(std::sqrt(ne) * statistic);
}

double ks_statistic_normal(std::span<const double> x, double mean, double sd) {
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double cdf = normal_cdf((s[i] - mean) / sd);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::abs(cdf - lo), std::abs(hi - cdf)));
    }
    return d;
}

double ks_p_value(double statistic, std::size_t n) {
    return kolmogorov_q(std::sqrt(static_cast<double>(n)) * statistic);
}

namespace {

double row_distance(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

// Pooled pairwise distances with row sums; the statistic for any
// labeling needs only the within-group-1 sum:
//   cross = sum_{i in I} rowsum_i - 2 S1,  within2 = total - S1 - cross.
struct EnergyCache {
    std::vector<float> dist;
    std::vector<double> rowsum;
    double total_sum = 0.0;
    std::size_t total = 0;
};

double energy_from_cache(const EnergyCache& cache, const std::vector<std::uint32_t>& group1) {
    const std::size_t n = group1.size();
    const std::size_t m = cache.total - n;
    double s1 = 0.0, r_in = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        const std::uint32_t i = group1[a];
        r_in += cache.rowsum[i];
        const float* row = cache.dist.data() + static_cast<std::size_t>(i) * cache.total;
        for (std::size_t b = a + 1; b < n; ++b) s1 += row[group1[b]];
    }
    const double cross = r_in - 2.0 * s1;
    const double within2 = cache.total_sum - s1 - cross;
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return nn * mm / (nn + mm) *
           (2.0 * cross / (nn * mm) - 2.0 * s1 / (nn * nn) - 2.0 * within2 / (mm * mm));
}

} // namespace

EnergyResult energy_distance_test(const FddSample& x, const FddSample& y, std::size_t n_perms,
                                  const StreamSeed& seed, std::size_t cap, unsigned jobs) {
    if (x.u_grid != y.u_grid)
        throw parameter_error("energy_distance_test: grids must match");
    const std::size_t dim = x.u_grid.size();
    const std::size_t n = std::min(x.reps(), cap);
    const std::size_t m = std::min(y.reps(), cap);
    if (n < 2 || m < 2) throw parameter_error("energy_distance_test: too few rows");
    const std::size_t total = n + m;

    std::vector<double> pooled(total * dim);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < dim; ++k) pooled[r * dim + k] = x.at(r, k);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k < dim; ++k) pooled[(n + r) * dim + k] = y.at(r, k);

    EnergyCache cache;
    cache.total = total;
    cache.dist.assign(total * total, 0.0f);
    parallel_for(total, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < total; ++j) {
            const float d = static_cast<float>(
                row_distance(pooled.data() + i * dim, pooled.data() + j * dim, dim));
            cache.dist[i * total + j] = d;
            cache.dist[j * total + i] = d;
        }
    });
    cache.rowsum.assign(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
        double s = 0.0;
        const float* row = cache.dist.data() + i * total;
        for (std::size_t j = 0; j < total; ++j) s += row[j];
        cache.rowsum[i] = s;
        cache.total_sum += s;
    }
    cache.total_sum *= 0.5;

    std::vector<std::uint32_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0u);
    EnergyResult res;
    res.n_used = n;
    res.m_used = m;
    res.statistic = energy_from_cache(cache, identity);

    std::vector<std::uint32_t> exceed(n_perms, 0);
    parallel_for(n_perms, jobs, [&](std::size_t p) {
        Stream stream(derive_stream(seed, p));
        // sample n distinct pooled indices (partial Fisher-Yates)
        std::vector<std::uint32_t> idx(total);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(stream.next_u64() % (total - i));
            std::swap(idx[i], idx[j]);
        }
        std::vector<std::uint32_t> group(idx.begin(), idx.begin() + static_cast<long>(n));
        std::sort(group.begin(), group.end());
        const double stat = energy_from_cache(cache, group);
        exceed[p] = stat >= res.statistic ? 1u : 0u;
    });
    std::size_t count = 0;
    for (auto e : exceed) count += e;
    res.p_value = (1.0 + static_cast<double>(count)) / (1.0 + static_cast<double>(n_perms));
    return res;
}

std::pair<double, double> empirical_cf(const FddSample& x, double z) {
    const std::size_t m = x.u_grid.size();
    const std::size_t n = x.reps();
    double re = 0.0, im = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double l = 0.0;
        for (std::size_t k = 0; k < m; ++k) l += x.values[r * m + k];
        re += std::cos(z * l);
        im += std::sin(z * l);
    }
    return {re / static_cast<double>(n), im / static_cast<double>(n)};
}

double cf_gap(const FddSample& x, const FddSample& y, std::span<const double> z_grid) {
    double gap = 0.0;
    for (double z : z_grid) {
        const auto [xr, xi] = empirical_cf(x, z);
        const auto [yr, yi] = empirical_cf(y, z);
        gap = std::max(gap, std::hypot(xr - yr, xi - yi));
    }
    return gap;
}

double cf_gap_gaussian(const FddSample& x, double functional_variance,
                       std::span<const double> z_grid) {
    double gap = 0.0;
    for (double z : z_grid) {
        const auto [xr, xi] = empirical_cf(x, z);
        const double ref = std::exp(-0.5 * z * z * functional_variance);
        gap = std::max(gap, std::hypot(xr - ref, xi));
    }
    return gap;
}

std::vector<double> dither_lattice(std::span<const double> x, double delta, Stream& stream) {
    std::vector<double> out(x.begin(), x.end());
    for (auto& v : out) v += delta * (stream.u01() - 0.5);
    return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw parameter_error("pearson_correlation: size mismatch");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace renimm
