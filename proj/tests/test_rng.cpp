#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "renimm/rng.hpp"
#include "renimm/stats.hpp"

using namespace renimm;

namespace {
constexpr double kPi = 3.14159265358979323846;

struct MeanSe {
    double mean;
    double se;
};

template <class F>
MeanSe mc(std::size_t n, F&& draw) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double mean = s / static_cast<double>(n);
    const double var = s2 / static_cast<double>(n) - mean * mean;
    return {mean, std::sqrt(var / static_cast<double>(n))};
}
} // namespace

TEST_CASE("stream derivation: distinct children, path composition, determinism") {
    StreamSeed root;
    root.root = 42;
    CHECK(derive_stream(root, 0).state() != derive_stream(root, 1).state());
    CHECK(derive_stream(derive_stream(root, 1), 2).state() ==
          StreamSeed{42, {1, 2}}.state());
    // allocation-free fold agrees with path derivation
    for (std::uint64_t i : {0ull, 1ull, 17ull, 1048576ull}) {
        CHECK(fold_stream_state(root.state(), i) == derive_stream(root, i).state());
        const StreamSeed nested = derive_stream(root, 5);
        CHECK(fold_stream_state(nested.state(), i) == derive_stream(nested, i).state());
    }

    Stream a{StreamSeed{42, {3, 1}}};
    Stream b{StreamSeed{42, {3, 1}}};
    for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("u01 stays inside the open unit interval") {
    Stream s{StreamSeed{1, {}}};
    for (int i = 0; i < 100000; ++i) {
        const double u = s.u01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("positive stable, alpha=1/2: Levy(1/2) median") {
    Stream s{StreamSeed{7, {0}}};
    const std::size_t n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_positive_stable(0.5, s);
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    // 1/(2 median(chi^2_1)) = 1/(2*0.45494) = 1.0990
    CHECK(xs[n / 2] == doctest::Approx(1.0990).epsilon(0.02));
}

TEST_CASE("positive stable: negative moment and Laplace transform identities") {
    const StreamSeed root{7, {1}};
    const std::size_t n = 100000;
    std::uint64_t child = 0;

    // E[S^{-1/2}] = 1/Gamma(1.5) = 2/sqrt(pi) for alpha = 1/2
    {
        Stream s{derive_stream(root, child++)};
        const auto [mean, se] = mc(n, [&] { return std::pow(sample_positive_stable(0.5, s), -0.5); });
        CHECK(mean == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(0.01));
    }
    for (double alpha : {0.3, 0.5, 0.7}) {
        // E[S^{-alpha}] = 1/Gamma(1+alpha) within 3 standard errors
        Stream s{derive_stream(root, child++)};
        const auto neg =
            mc(n, [&] { return std::pow(sample_positive_stable(alpha, s), -alpha); });
        CHECK(std::abs(neg.mean - 1.0 / std::tgamma(1.0 + alpha)) < 3.0 * neg.se);
        for (double z : {0.5, 1.0, 2.0}) {
            Stream sz{derive_stream(root, child++)};
            const auto lap =
                mc(n, [&] { return std::exp(-z * sample_positive_stable(alpha, sz)); });
            CHECK(std::abs(lap.mean - std::exp(-std::pow(z, alpha))) < 3.0 * lap.se);
        }
    }
}

TEST_CASE("theory scale convention multiplies by Gamma(1-alpha)^{1/alpha}") {
    Stream s1{StreamSeed{11, {}}};
    Stream s2{StreamSeed{11, {}}};
    for (int i = 0; i < 50; ++i) {
        const double std_draw = sample_positive_stable(0.5, s1, StableScale::standard);
        const double theory_draw = sample_positive_stable(0.5, s2, StableScale::theory);
        // Gamma(1/2)^2 = pi
        CHECK(theory_draw == doctest::Approx(kPi * std_draw).epsilon(1e-12));
    }
}

TEST_CASE("stable increments: Gaussian endpoint alpha = 2") {
    StableSpec spec;
    spec.alpha = 2.0;
    spec.skew = StableSkew::spectrally_negative;
    Stream s{StreamSeed{7, {2}}};
    const std::size_t n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sample_stable_increment(spec, 1.0, s);
        s1 += x;
        s2 += x * x;
    }
    const double var = s2 / n - (s1 / n) * (s1 / n);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("stable increments: self-similarity dt^{1/alpha}, alpha = 1.5") {
    StableSpec spec;
    spec.alpha = 1.5;
    spec.skew = StableSkew::spectrally_negative;
    const std::size_t n = 10000;
    Stream s{StreamSeed{7, {3}}};
    std::vector<double> direct(n), scaled(n);
    for (auto& x : direct) x = sample_stable_increment(spec, 8.0, s);
    for (auto& x : scaled) x = std::pow(8.0, 1.0 / 1.5) * sample_stable_increment(spec, 1.0, s);
    const double d = ks_statistic(direct, scaled);
    CHECK(ks_p_value(d, n, n) > 0.01);
}

TEST_CASE("stable increments: centered, alpha = 1.5") {
    StableSpec spec;
    spec.alpha = 1.5;
    spec.skew = StableSkew::spectrally_negative;
    Stream s{StreamSeed{7, {4}}};
    const auto m = mc(100000, [&] { return sample_stable_increment(spec, 1.0, s); });
    CHECK(std::abs(m.mean) < 3.0 * m.se);
}

TEST_CASE("spectrally negative characteristic function matches the analytic form") {
    StableSpec spec;
    spec.alpha = 1.5;
    spec.skew = StableSkew::spectrally_negative;
    Stream s{StreamSeed{7, {5}}};
    const std::size_t n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample_stable_increment(spec, 1.0, s);
    const double g = std::tgamma(1.0 - 1.5);
    for (double z : {0.5, 1.0}) {
        std::complex<double> emp(0.0, 0.0);
        for (double x : xs) emp += std::complex<double>(std::cos(z * x), std::sin(z * x));
        emp /= static_cast<double>(n);
        const std::complex<double> expo(-std::pow(z, 1.5) * g * std::cos(kPi * 0.75),
                                        -std::pow(z, 1.5) * g * std::sin(kPi * 0.75));
        CHECK(std::abs(emp - std::exp(expo)) < 0.02);
    }
}

TEST_CASE("sibling streams are decorrelated") {
    StreamSeed root;
    root.root = 99;
    const std::size_t n = 10000;
    for (std::uint64_t k = 0; k < 4; ++k) {
        Stream a{derive_stream(root, k)};
        Stream b{derive_stream(root, k + 1)};
        std::vector<double> xa(n), xb(n);
        for (std::size_t i = 0; i < n; ++i) {
            xa[i] = a.u01();
            xb[i] = b.u01();
        }
        CHECK(std::abs(pearson_correlation(xa, xb)) < 4.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("parameter validation") {
    Stream s{StreamSeed{1, {}}};
    CHECK_THROWS_AS(sample_positive_stable(1.0, s), parameter_error);
    CHECK_THROWS_AS(sample_positive_stable(0.0, s), parameter_error);
    StableSpec bad;
    bad.alpha = 0.5;
    bad.skew = StableSkew::spectrally_negative;
    CHECK_THROWS_AS(sample_stable_increment(bad, 1.0, s), parameter_error);
    StableSpec bad2;
    bad2.alpha = 1.5;
    bad2.skew = StableSkew::positive_subordinator;
    CHECK_THROWS_AS(sample_stable_increment(bad2, 1.0, s), parameter_error);
    StableSpec ok;
    ok.alpha = 1.5;
    ok.skew = StableSkew::spectrally_negative;
    CHECK_THROWS_AS(sample_stable_increment(ok, 0.0, s), parameter_error);
}
