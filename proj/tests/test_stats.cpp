#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renimm/special.hpp"
#include "renimm/stats.hpp"

using namespace renimm;

namespace {

FddSample gaussian_sample(std::size_t n, std::size_t dim, std::uint64_t root, double shift = 0.0) {
    FddSample s;
    for (std::size_t k = 0; k < dim; ++k) s.u_grid.push_back(static_cast<double>(k + 1));
    s.values.resize(n * dim);
    Stream stream{StreamSeed{root, {}}};
    for (auto& v : s.values) v = stream.normal() + shift;
    s.case_label = "test";
    return s;
}

} // namespace

TEST_CASE("KS statistic basics") {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(ks_statistic(a, a) == 0.0);
    std::vector<double> b{10.0, 11.0, 12.0, 13.0};
    CHECK(ks_statistic(a, b) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(0.0) == 1.0);
    CHECK(kolmogorov_q(10.0) < 1e-12);
}

TEST_CASE("one-sample KS against the normal CDF accepts normal data") {
    Stream s{StreamSeed{31, {}}};
    std::vector<double> x(5000);
    for (auto& v : x) v = s.normal();
    const double d = ks_statistic_normal(x, 0.0, 1.0);
    CHECK(ks_p_value(d, x.size()) > 0.01);
}

TEST_CASE("two-sample KS null behavior over repeated seeds") {
    std::size_t below = 0;
    const std::size_t trials = 100, n = 500;
    for (std::size_t k = 0; k < trials; ++k) {
        Stream s{StreamSeed{32, {k}}};
        std::vector<double> a(n), b(n);
        for (auto& v : a) v = s.normal();
        for (auto& v : b) v = s.normal();
        if (ks_p_value(ks_statistic(a, b), n, n) < 0.05) ++below;
    }
    // asymptotic p-values are slightly conservative at this n
    CHECK(below >= 0);
    CHECK(static_cast<double>(below) / trials < 0.12);
}

TEST_CASE("energy distance: identity, null, and power") {
    SUBCASE("identical samples have zero statistic") {
        const FddSample x = gaussian_sample(400, 2, 7);
        const EnergyResult r = energy_distance_test(x, x, 100, StreamSeed{1, {}}, 400);
        CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.p_value > 0.5);
    }
    SUBCASE("same law passes at the 1% level") {
        const FddSample x = gaussian_sample(800, 2, 8);
        const FddSample y = gaussian_sample(800, 2, 9);
        const EnergyResult r = energy_distance_test(x, y, 300, StreamSeed{2, {}}, 800);
        CHECK(r.p_value > 0.01);
    }
    SUBCASE("a half-sigma shift is detected") {
        const FddSample x = gaussian_sample(500, 2, 10);
        const FddSample y = gaussian_sample(500, 2, 11, 0.5);
        const EnergyResult r = energy_distance_test(x, y, 300, StreamSeed{3, {}}, 500);
        CHECK(r.p_value < 0.05);
    }
    SUBCASE("cap bounds the rows used") {
        const FddSample x = gaussian_sample(5000, 2, 12);
        const FddSample y = gaussian_sample(5000, 2, 13);
        const EnergyResult r = energy_distance_test(x, y, 50, StreamSeed{4, {}}, 1000);
        CHECK(r.n_used == 1000);
        CHECK(r.m_used == 1000);
    }
    SUBCASE("relabeling symmetry within noise") {
        double p_sum_xy = 0.0, p_sum_yx = 0.0;
        for (std::uint64_t k = 0; k < 20; ++k) {
            const FddSample x = gaussian_sample(300, 1, 100 + k);
            const FddSample y = gaussian_sample(300, 1, 200 + k);
            p_sum_xy += energy_distance_test(x, y, 200, StreamSeed{5, {k}}, 300).p_value;
            p_sum_yx += energy_distance_test(y, x, 200, StreamSeed{5, {k}}, 300).p_value;
        }
        CHECK(std::abs(p_sum_xy - p_sum_yx) / 20.0 < 0.15);
    }
}

TEST_CASE("characteristic-function gaps") {
    const std::vector<double> zgrid{-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
    SUBCASE("gaussian sample against its own closed form") {
        const FddSample x = gaussian_sample(20000, 1, 14);
        CHECK(cf_gap_gaussian(x, 1.0, zgrid) < 0.03);
    }
    SUBCASE("two gaussian samples") {
        const FddSample x = gaussian_sample(20000, 1, 15);
        const FddSample y = gaussian_sample(20000, 1, 16);
        CHECK(cf_gap(x, y, zgrid) < 0.04);
    }
    SUBCASE("scale mismatch shows up") {
        FddSample x = gaussian_sample(20000, 1, 17);
        for (auto& v : x.values) v *= 2.0;
        CHECK(cf_gap_gaussian(x, 1.0, zgrid) > 0.2);
    }
}

TEST_CASE("pearson correlation") {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    std::vector<double> b{2.0, 4.0, 6.0, 8.0};
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    std::vector<double> c{4.0, 3.0, 2.0, 1.0};
    CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
}
