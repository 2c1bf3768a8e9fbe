#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "renimm/limit_processes.hpp"
#include "renimm/special.hpp"
#include "renimm/stats.hpp"

using namespace renimm;

namespace {
constexpr double kPi = 3.14159265358979323846;

// independent brute-force oracle: midpoint rule on the substituted
// variable, far finer than the library quadrature
double brute_force_V_cov_prod(double beta, double u, double w, std::size_t cells = 2000000) {
    // int_0^u z^{b/2} (w-u+z)^{b/2} dz
    double acc = 0.0;
    const double h = u / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double z = (static_cast<double>(i) + 0.5) * h;
        acc += std::pow(z, beta / 2.0) * std::pow(w - u + z, beta / 2.0);
    }
    return acc * h;
}

} // namespace

TEST_CASE("subordinator: Laplace transform at the unit point") {
    StreamSeed seed{3, {}};
    const std::size_t n = 20000;
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Stream s{derive_stream(seed, i)};
        const GridPath p = simulate_subordinator(0.5, 1.0, 256, s);
        const double v = std::exp(-p.values.back());
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::abs(mean - std::exp(-std::sqrt(kPi))) < 3.0 * se);
}

TEST_CASE("subordinator: single cell equals one theory-convention draw") {
    Stream s1{StreamSeed{4, {}}};
    Stream s2{StreamSeed{4, {}}};
    const GridPath p = simulate_subordinator(0.5, 1.0, 1, s1);
    const double direct = sample_positive_stable(0.5, s2, StableScale::theory);
    CHECK(p.values.back() == doctest::Approx(direct).epsilon(1e-12));
    CHECK(p.values.front() == 0.0);
    CHECK(p.times.front() == 0.0);
}

TEST_CASE("subordinator self-similarity: W(2) ~ 2^{1/alpha} W(1)") {
    StreamSeed seed{5, {}};
    const std::size_t n = 10000;
    std::vector<double> w2(n), scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
        Stream a{derive_stream(derive_stream(seed, 0), i)};
        Stream b{derive_stream(derive_stream(seed, 1), i)};
        w2[i] = simulate_subordinator(0.5, 2.0, 64, a).values.back();
        scaled[i] = std::pow(2.0, 2.0) * simulate_subordinator(0.5, 1.0, 64, b).values.back();
    }
    CHECK(ks_p_value(ks_statistic(w2, scaled), n, n) > 0.01);
}

TEST_CASE("inversion of a deterministic grid path") {
    GridPath p;
    for (int i = 0; i <= 100; ++i) {
        p.times.push_back(0.01 * i);
        p.values.push_back(0.02 * i); // W(t) = 2t
    }
    const std::vector<double> levels{0.0, 0.5, 1.0, 1.5};
    const auto inv = invert_subordinator(p, levels);
    CHECK(inv[0] == 0.0); // inf{t : W(t) > 0} at grid resolution
    CHECK(inv[1] == doctest::Approx(0.25).epsilon(0.05));
    CHECK(inv[2] == doctest::Approx(0.50).epsilon(0.05));
    CHECK(inv[3] == doctest::Approx(0.75).epsilon(0.05));
    const double beyond = 3.0;
    CHECK_THROWS_AS(invert_subordinator(p, std::span<const double>(&beyond, 1)),
                    out_of_range_error);
    const double negative = -0.5;
    CHECK_THROWS_AS(invert_subordinator(p, std::span<const double>(&negative, 1)),
                    parameter_error);
}

TEST_CASE("inverse marginal: mean, scaling, and agreement with path inversion") {
    StreamSeed seed{6, {}};
    SUBCASE("mean 2/pi within 1% at 1e6 draws") {
        Stream s{seed};
        double acc = 0.0;
        const std::size_t n = 1000000;
        for (std::size_t i = 0; i < n; ++i) acc += sample_inverse_marginal(0.5, 1.0, s);
        CHECK(acc / n == doctest::Approx(2.0 / kPi).epsilon(0.01));
    }
    SUBCASE("level scaling y^alpha") {
        Stream s{seed};
        const std::size_t n = 10000;
        std::vector<double> at4(n), scaled(n);
        for (auto& x : at4) x = sample_inverse_marginal(0.5, 4.0, s);
        for (auto& x : scaled) x = 2.0 * sample_inverse_marginal(0.5, 1.0, s);
        CHECK(ks_p_value(ks_statistic(at4, scaled), n, n) > 0.01);
    }
    SUBCASE("cross-validation against step inversion") {
        const std::size_t n = 5000;
        std::vector<double> path_draws(n), marginal(n);
        for (std::size_t i = 0; i < n; ++i) {
            Stream a{derive_stream(derive_stream(seed, 1), i)};
            const GridPath p = simulate_subordinator_exceeding(0.5, 1.0, 1u << 12, a);
            const double lvl = 1.0;
            path_draws[i] = invert_subordinator(p, std::span<const double>(&lvl, 1))[0];
            Stream b{derive_stream(derive_stream(seed, 2), i)};
            marginal[i] = sample_inverse_marginal(0.5, 1.0, b);
        }
        CHECK(ks_p_value(ks_statistic(path_draws, marginal), n, n) > 0.01);
    }
}

TEST_CASE("V covariance closed forms and quadrature") {
    SUBCASE("max-power form") {
        const CovarianceModel C{CovarianceModel::Form::max_power, -0.5};
        CHECK(theoretical_V_cov(C, 1.0, 2.0) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)));
        CHECK(theoretical_V_cov(C, 1.0, 1.0) == doctest::Approx(2.0)); // u^{1+b}/(1+b)
        CHECK_THROWS_AS(theoretical_V_cov(C, 2.0, 1.0), parameter_error);
    }
    SUBCASE("diagonal is u^{1+beta}/(1+beta) for every form") {
        for (auto form : {CovarianceModel::Form::max_power, CovarianceModel::Form::prod_power,
                          CovarianceModel::Form::fictitious}) {
            const CovarianceModel C{form, -0.25};
            CHECK(theoretical_V_cov(C, 1.5, 1.5) ==
                  doctest::Approx(std::pow(1.5, 0.75) / 0.75));
        }
    }
    SUBCASE("product form against the brute-force oracle") {
        const CovarianceModel C{CovarianceModel::Form::prod_power, 1.0};
        const double impl = theoretical_V_cov(C, 1.0, 2.0);
        const double oracle = brute_force_V_cov_prod(1.0, 1.0, 2.0);
        CHECK(std::abs(impl - oracle) < 1e-6);
        // frozen oracle value; the closed antiderivative gives 0.840276
        CHECK(impl == doctest::Approx(0.840276).epsilon(1e-4));
    }
    SUBCASE("singular product form (beta < 0) against the oracle") {
        const CovarianceModel C{CovarianceModel::Form::prod_power, -0.5};
        const double impl = theoretical_V_cov(C, 1.0, 3.0);
        const double oracle = brute_force_V_cov_prod(-0.5, 1.0, 3.0, 8000000);
        CHECK(std::abs(impl - oracle) < 2e-5);
    }
    SUBCASE("fictitious form vanishes off the diagonal") {
        const CovarianceModel C{CovarianceModel::Form::fictitious, -0.5};
        CHECK(theoretical_V_cov(C, 1.0, 2.0) == 0.0);
        CHECK(theoretical_V_cov(C, 2.0, 2.0) == doctest::Approx(std::pow(2.0, 0.5) / 0.5));
    }
}

TEST_CASE("V_beta sampling: variances, independence, Brownian-like case") {
    StreamSeed seed{8, {}};
    SUBCASE("fictitious: independent values, variance 1/(1+beta)") {
        const CovarianceModel C{CovarianceModel::Form::fictitious, -0.5};
        const FddSample s = sample_V_beta(C, {1.0, 2.0}, 100000, seed, 2);
        CHECK(s.col_variance(0) == doctest::Approx(2.0).epsilon(0.02));
        const double se = std::sqrt(s.col_variance(0) * s.col_variance(1) /
                                    static_cast<double>(s.reps()));
        CHECK(std::abs(s.cov(0, 1)) < 4.0 * se);
    }
    SUBCASE("flat limit function gives Brownian covariance u ^ w") {
        const CovarianceModel C{CovarianceModel::Form::prod_power, 0.0};
        const FddSample s = sample_V_beta(C, {1.0, 2.0}, 100000, seed, 2);
        CHECK(s.cov(0, 1) == doctest::Approx(1.0).epsilon(0.03));
        CHECK(s.col_variance(0) == doctest::Approx(1.0).epsilon(0.03));
    }
    SUBCASE("non-PSD input is rejected with a diagnostic") {
        const std::vector<double> bad{1.0, 2.0, 2.0, 1.0}; // eigenvalues 3, -1
        CHECK_THROWS_AS(sample_gaussian_fdd(bad, {1.0, 2.0}, 10, seed), numerical_error);
    }
}

TEST_CASE("Z process: conditional variance, independence, and the Brownian route") {
    StreamSeed seed{9, {}};
    SUBCASE("second moment matches the closed form") {
        const CovarianceModel C{CovarianceModel::Form::max_power, 0.0};
        ZOptions opt;
        opt.n_steps = 2048;
        opt.jobs = 2;
        const FddSample z = sample_Z(0.5, C, {1.0}, 8000, seed, opt);
        double m2 = 0.0;
        for (double v : z.values) m2 += v * v;
        m2 /= static_cast<double>(z.values.size());
        CHECK(m2 == doctest::Approx(2.0 / kPi).epsilon(0.06));
    }
    SUBCASE("fictitious limit function decorrelates distinct points") {
        const CovarianceModel C{CovarianceModel::Form::fictitious, -0.25};
        ZOptions opt;
        opt.n_steps = 1024;
        opt.jobs = 2;
        const FddSample z = sample_Z(0.5, C, {1.0, 2.0}, 20000, seed, opt);
        const auto c0 = z.column(0);
        const auto c1 = z.column(1);
        CHECK(std::abs(pearson_correlation(c0, c1)) < 4.0 / std::sqrt(20000.0));
    }
    SUBCASE("time-changed Brownian construction matches the conditional-Gaussian one") {
        const CovarianceModel C{CovarianceModel::Form::prod_power, 0.5};
        ZOptions opt;
        opt.n_steps = 1024;
        opt.jobs = 2;
        const FddSample a = sample_Z(0.5, C, {0.5, 1.0}, 2000, derive_stream(seed, 0), opt);
        ZOptions opt2 = opt;
        opt2.timechange_construction = true;
        const FddSample b = sample_Z(0.5, C, {0.5, 1.0}, 2000, derive_stream(seed, 1), opt2);
        const EnergyResult er = energy_distance_test(a, b, 300, derive_stream(seed, 2), 2000, 2);
        CHECK(er.p_value > 0.01);
        CHECK_THROWS_AS(sample_Z(0.5, CovarianceModel{CovarianceModel::Form::max_power, 0.5},
                                 {1.0}, 10, seed, opt2),
                        parameter_error);
    }
    SUBCASE("conditionally independent second draw is uncorrelated") {
        // reconstruct each replication's path from its derived stream and
        // draw an independent conditional value with a fresh stream
        const CovarianceModel C{CovarianceModel::Form::max_power, 0.0};
        ZOptions opt;
        opt.n_steps = 512;
        opt.jobs = 1;
        const StreamSeed zseed = derive_stream(seed, 3);
        const std::size_t n = 4000;
        const FddSample z = sample_Z(0.5, C, {1.0}, n, zseed, opt);
        std::vector<double> second(n);
        Stream fresh{derive_stream(seed, 4)};
        for (std::size_t r = 0; r < n; ++r) {
            Stream s{derive_stream(zseed, r)};
            const GridPath path = simulate_subordinator_exceeding(0.5, 1.0, 512, s);
            const double lvl = 1.0;
            const double condvar =
                invert_subordinator(path, std::span<const double>(&lvl, 1))[0];
            second[r] = std::sqrt(condvar) * fresh.normal();
        }
        const auto zc = z.column(0);
        CHECK(std::abs(pearson_correlation(zc, second)) < 4.0 / std::sqrt(double(n)));
    }
}

TEST_CASE("fractional stable integral") {
    StreamSeed seed{10, {}};
    SUBCASE("rho = 0 reduces to the integrator: Brownian variance u") {
        Stream s{seed};
        const std::size_t n = 20000;
        double acc2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = fractional_integral_stable(2.0, 0.0, {1.0}, 128, s)[0];
            acc2 += x * x;
        }
        CHECK(acc2 / n == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("Ito isometry oracle: Var int (1-y) dB = 1/3") {
        Stream s{derive_stream(seed, 1)};
        const std::size_t n = 20000;
        double acc2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = fractional_integral_stable(2.0, 1.0, {1.0}, 512, s)[0];
            acc2 += x * x;
        }
        CHECK(acc2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.03));
    }
    SUBCASE("alpha = 1.5 characteristic function") {
        Stream s{derive_stream(seed, 2)};
        const std::size_t n = 100000;
        std::complex<double> emp(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = fractional_integral_stable(1.5, 0.0, {1.0}, 64, s)[0];
            emp += std::complex<double>(std::cos(x), std::sin(x));
        }
        emp /= static_cast<double>(n);
        const double g = std::tgamma(-0.5);
        const std::complex<double> expo(-g * std::cos(0.75 * kPi), -g * std::sin(0.75 * kPi));
        CHECK(std::abs(emp - std::exp(expo)) < 0.02);
    }
    SUBCASE("left-sum discretization converges under grid doubling") {
        // deterministic part of the alpha = 2 variance: sum (1 - y_i)^2 / n
        auto leftsum = [](std::size_t n) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double y = static_cast<double>(i) / static_cast<double>(n);
                acc += (1.0 - y) * (1.0 - y) / static_cast<double>(n);
            }
            return acc;
        };
        CHECK(std::abs(leftsum(1024) / leftsum(2048) - 1.0) < 0.005);
        CHECK(leftsum(4096) == doctest::Approx(1.0 / 3.0).epsilon(0.002));
    }
    SUBCASE("divergent exponent is rejected") {
        Stream s{seed};
        CHECK_THROWS_AS(fractional_integral_stable(1.5, -0.7, {1.0}, 16, s), parameter_error);
        CHECK_THROWS_AS(fractional_integral_stable(0.5, 0.0, {1.0}, 16, s), parameter_error);
    }
}

TEST_CASE("fractional inverse integral Q") {
    StreamSeed seed{11, {}};
    SUBCASE("rho = 0 equals the inverse path exactly") {
        Stream s{seed};
        const GridPath p = simulate_subordinator_exceeding(0.5, 2.0, 1024, s);
        const std::vector<double> grid{0.5, 1.0, 1.9};
        const auto q = fractional_integral_inverse(0.5, 0.0, grid, p);
        const auto inv = invert_subordinator(p, grid);
        for (std::size_t j = 0; j < grid.size(); ++j)
            CHECK(q[j] == doctest::Approx(inv[j]).epsilon(1e-12));
    }
    SUBCASE("means match the closed form") {
        const std::size_t n = 8000;
        double q0 = 0.0, q1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Stream s{derive_stream(seed, i)};
            const GridPath p = simulate_subordinator_exceeding(0.5, 1.0, 2048, s);
            q0 += fractional_integral_inverse(0.5, 0.0, {1.0}, p)[0];
            q1 += fractional_integral_inverse(0.5, 1.0, {1.0}, p)[0];
        }
        CHECK(q0 / n == doctest::Approx(2.0 / kPi).epsilon(0.05));
        CHECK(q1 / n == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(0.05));
    }
    SUBCASE("rho below -alpha is rejected") {
        Stream s{seed};
        const GridPath p = simulate_subordinator_exceeding(0.5, 1.0, 128, s);
        CHECK_THROWS_AS(fractional_integral_inverse(0.5, -0.6, {0.5}, p), parameter_error);
    }
}

TEST_CASE("limit mixtures") {
    StreamSeed seed{12, {}};
    SUBCASE("p = 0 collapses to sqrt((1+beta)/mu) V_beta") {
        LimitFddSpec spec;
        spec.kase = LimitFddSpec::Case::thm21_mix;
        spec.alpha = 2.0;
        spec.p = 0.0;
        spec.mu = 1.0;
        spec.C = CovarianceModel{CovarianceModel::Form::max_power, -0.5};
        spec.u_grid = {1.0};
        const FddSample s = sample_limit_fdd(spec, 50000, seed, 2);
        // variance (1+beta)/mu * u^{1+b}/(1+b) = u^{1+b}
        CHECK(s.col_variance(0) == doctest::Approx(1.0).epsilon(0.03));
    }
    SUBCASE("q = 1 collapses to the Q integral") {
        LimitFddSpec spec;
        spec.kase = LimitFddSpec::Case::thm22_mix;
        spec.alpha = 0.5;
        spec.q = 1.0;
        spec.rho = 0.0;
        spec.u_grid = {1.0};
        spec.n_steps = 2048;
        const FddSample s = sample_limit_fdd(spec, 8000, seed, 2);
        CHECK(s.col_mean(0) == doctest::Approx(2.0 / kPi).epsilon(0.05));
    }
    SUBCASE("q in (0,1): regression on the recomputed Q part recovers sqrt(q)") {
        LimitFddSpec spec;
        spec.kase = LimitFddSpec::Case::thm22_mix;
        spec.alpha = 0.5;
        spec.q = 0.5;
        spec.C = CovarianceModel{CovarianceModel::Form::prod_power, 0.0};
        spec.rho = (spec.C.beta - spec.alpha) / 2.0; // -0.25
        spec.u_grid = {1.0};
        spec.n_steps = 1024;
        const std::size_t n = 10000;
        const StreamSeed sseed = derive_stream(seed, 1);
        const FddSample s = sample_limit_fdd(spec, n, sseed, 1);
        // reconstruct Q per replication from the same derived stream
        std::vector<double> q(n), y(n);
        for (std::size_t r = 0; r < n; ++r) {
            Stream stream{derive_stream(sseed, r)};
            const GridPath path = simulate_subordinator_exceeding(0.5, 1.0, 1024, stream);
            q[r] = fractional_integral_inverse(0.5, spec.rho, {1.0}, path)[0];
            y[r] = s.at(r, 0);
        }
        double mq = 0.0, my = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            mq += q[r];
            my += y[r];
        }
        mq /= n;
        my /= n;
        double sqq = 0.0, sqy = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            sqq += (q[r] - mq) * (q[r] - mq);
            sqy += (q[r] - mq) * (y[r] - my);
        }
        const double slope = sqy / sqq;
        CHECK(slope == doctest::Approx(std::sqrt(0.5)).epsilon(0.05));
    }
    SUBCASE("spec validation") {
        LimitFddSpec spec;
        spec.kase = LimitFddSpec::Case::thm22_mix;
        spec.alpha = 0.5;
        spec.q = 0.5;
        spec.C = CovarianceModel{CovarianceModel::Form::prod_power, 0.0};
        spec.rho = -0.1; // violates rho = (beta - alpha)/2
        spec.u_grid = {1.0};
        CHECK_THROWS_AS(spec.validate(), parameter_error);
        spec.rho = -0.25;
        CHECK_NOTHROW(spec.validate());
        spec.u_grid = {2.0, 1.0};
        CHECK_THROWS_AS(spec.validate(), parameter_error);
    }
}

TEST_CASE("closed-form moment helpers") {
    CHECK(inverse_subordinator_mean(0.5, 1.0) == doctest::Approx(2.0 / kPi));
    CHECK(inverse_subordinator_mean(0.5, 4.0) == doctest::Approx(4.0 / kPi));
    CHECK(z_second_moment(0.5, 0.5, 1.0) == doctest::Approx(0.5));
    CHECK(q_integral_mean(0.5, 1.0, 1.0) == doctest::Approx(4.0 / (3.0 * kPi)));

    SUBCASE("D functional with one point") {
        const CovarianceModel C{CovarianceModel::Form::max_power, -0.5};
        CHECK(d_matrix({1.0}, {1.0}, C) == doctest::Approx(2.0)); // 1/(1+beta)
    }
    SUBCASE("D functional matches the sampled functional variance") {
        const CovarianceModel C{CovarianceModel::Form::max_power, -0.5};
        const std::vector<double> w{1.0, 1.0};
        const std::vector<double> u{1.0, 2.0};
        const double d = d_matrix(w, u, C);
        const FddSample s = sample_V_beta(C, u, 100000, StreamSeed{13, {}}, 2);
        double var = 0.0, mean = 0.0;
        for (std::size_t r = 0; r < s.reps(); ++r) mean += s.at(r, 0) + s.at(r, 1);
        mean /= static_cast<double>(s.reps());
        for (std::size_t r = 0; r < s.reps(); ++r) {
            const double l = s.at(r, 0) + s.at(r, 1) - mean;
            var += l * l;
        }
        var /= static_cast<double>(s.reps() - 1);
        CHECK(var == doctest::Approx(d).epsilon(0.03));
    }
    SUBCASE("negative moment via the Laplace identity") {
        CHECK(negative_moment(0.5, 0.5) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-6));
        // closed form Gamma(theta/alpha)/(alpha Gamma(theta)) as the oracle
        for (double alpha : {0.3, 0.6})
            for (double theta : {0.25, 0.5, 0.8}) {
                const double oracle =
                    std::tgamma(theta / alpha) / (alpha * std::tgamma(theta));
                CHECK(negative_moment(alpha, theta) == doctest::Approx(oracle).epsilon(1e-6));
            }
    }
    SUBCASE("path-Stieltjes D analogue at a single point is the conditional variance") {
        Stream s{StreamSeed{14, {}}};
        const GridPath p = simulate_subordinator_exceeding(0.5, 1.0, 512, s);
        const CovarianceModel C{CovarianceModel::Form::max_power, 0.0};
        const double d = d_alpha_beta({1.0}, {1.0}, C, p);
        const double lvl = 1.0;
        const double w_inv = invert_subordinator(p, std::span<const double>(&lvl, 1))[0];
        CHECK(d == doctest::Approx(w_inv).epsilon(1e-12));
    }
}

TEST_CASE("joint Z law satisfies the conditional-CF identity") {
    // E[exp(i z sum_j w_j Z(u_j))] equals E[exp(-D(path) z^2/2)] with the
    // path functional D computed independently on fresh paths
    const CovarianceModel C{CovarianceModel::Form::max_power, -0.25};
    const std::vector<double> grid{0.5, 1.0};
    const std::vector<double> weights{1.0, 0.7};
    const std::size_t n = 6000;
    ZOptions zo;
    zo.n_steps = 1024;
    zo.jobs = 2;
    const FddSample z = sample_Z(0.5, C, grid, n, StreamSeed{91, {}}, zo);
    for (double zz : {0.5, 1.0, 2.0}) {
        double lre = 0.0, lim = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double l = weights[0] * z.at(r, 0) + weights[1] * z.at(r, 1);
            lre += std::cos(zz * l);
            lim += std::sin(zz * l);
        }
        lre /= static_cast<double>(n);
        lim /= static_cast<double>(n);
        double rhs = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            Stream s{derive_stream(StreamSeed{92, {}}, r)};
            const GridPath p = simulate_subordinator_exceeding(0.5, grid.back(), 1024, s);
            rhs += std::exp(-0.5 * zz * zz * d_alpha_beta(weights, grid, C, p));
        }
        rhs /= static_cast<double>(n);
        CHECK(std::hypot(lre - rhs, lim) < 0.04);
    }
}

TEST_CASE("monotone structure of simulated paths") {
    Stream s{StreamSeed{15, {}}};
    const GridPath p = simulate_subordinator_exceeding(0.5, 2.0, 2048, s);
    for (std::size_t i = 1; i < p.values.size(); ++i) {
        CHECK(p.values[i] >= p.values[i - 1]);
        CHECK(p.times[i] > p.times[i - 1]);
    }
    const std::vector<double> grid{0.2, 0.6, 1.2, 1.8};
    const auto inv = invert_subordinator(p, grid);
    for (std::size_t i = 1; i < inv.size(); ++i) CHECK(inv[i] >= inv[i - 1]);
    const auto q = fractional_integral_inverse(0.5, 0.5, grid, p);
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i] >= q[i - 1]);
}

TEST_CASE("grid refinement stability of the Q mean") {
    StreamSeed seed{16, {}};
    auto mean_at = [&](std::size_t steps, std::uint64_t salt) {
        const std::size_t n = 30000;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Stream s{derive_stream(derive_stream(seed, salt), i)};
            const GridPath p = simulate_subordinator_exceeding(0.5, 1.0, steps, s);
            acc += fractional_integral_inverse(0.5, 1.0, {1.0}, p)[0];
        }
        return acc / n;
    };
    const double a = mean_at(1024, 0);
    const double b = mean_at(2048, 1);
    CHECK(std::abs(a / b - 1.0) < 0.01);
}
