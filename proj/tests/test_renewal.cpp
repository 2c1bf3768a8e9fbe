#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renimm/limit_processes.hpp"
#include "renimm/renewal.hpp"
#include "renimm/stats.hpp"

using namespace renimm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("deterministic walk materializes the exact lattice") {
    Stream s{StreamSeed{1, {}}};
    const RenewalPath path = simulate_walk(IncrementLaw::deterministic(1.0), 3.5, s);
    const std::vector<double> expected{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(path.partial_sums == expected);
}

TEST_CASE("first passage counts arrivals at or below t") {
    RenewalPath path;
    path.partial_sums = {0.0, 1.2, 3.4, 5.0};
    path.horizon = 4.0;
    CHECK(path.first_passage(2.0) == 2);
    CHECK(path.first_passage(-1.0) == 0);
    CHECK(path.first_passage(0.0) == 1);
    CHECK_THROWS_AS(path.first_passage(4.5), out_of_range_error);

    // monotone in t along one path
    std::size_t prev = 0;
    for (double t = 0.0; t <= 4.0; t += 0.25) {
        const std::size_t now = path.first_passage(t);
        CHECK(now >= prev);
        prev = now;
    }
}

TEST_CASE("law of large numbers and elementary renewal rate") {
    Stream s{StreamSeed{5, {}}};
    const double horizon = 1e4;
    const RenewalPath path = simulate_walk(IncrementLaw::exponential(1.0), horizon, s);
    const double rate = static_cast<double>(path.first_passage(horizon)) / horizon;
    CHECK(rate == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("heavy-tailed walk: scaled arrival count matches the inverse mean") {
    // E[P{xi>t} nu(t)] -> 1/(Gamma(1-a)Gamma(1+a)) = 2/pi at a = 1/2
    const IncrementLaw law = IncrementLaw::pareto(0.5, 1.0);
    StreamSeed seed{17, {}};
    const double t = 1e4;
    double acc = 0.0;
    const std::size_t reps = 1000;
    for (std::size_t r = 0; r < reps; ++r) {
        Stream s{derive_stream(seed, r)};
        const RenewalPath path = simulate_walk(law, t, s);
        acc += law.survival(t) * static_cast<double>(path.first_passage(t));
    }
    CHECK(acc / reps == doctest::Approx(2.0 / kPi).epsilon(0.05));
}

TEST_CASE("renewal function estimates") {
    StreamSeed seed{23, {}};
    SUBCASE("exponential oracle U(t) = t + 1") {
        const auto rows =
            estimate_renewal_function(IncrementLaw::exponential(1.0), {5.0}, 100000, seed);
        CHECK(rows[0].u_hat == doctest::Approx(6.0).epsilon(0.005));
        CHECK(std::abs(rows[0].u_hat - 6.0) < 0.03);
    }
    SUBCASE("deterministic counting is exact") {
        const auto rows =
            estimate_renewal_function(IncrementLaw::deterministic(1.0), {2.5}, 10, seed);
        CHECK(rows[0].u_hat == 3.0);
        CHECK(rows[0].std_err == 0.0);
    }
    SUBCASE("infinite-mean scaling U(t) P{xi>t} -> 2/pi") {
        const auto rows =
            estimate_renewal_function(IncrementLaw::pareto(0.5, 1.0), {1000.0}, 5000, seed);
        CHECK(rows[0].u_hat * std::pow(1000.0, -0.5) == doctest::Approx(2.0 / kPi).epsilon(0.05));
    }
    SUBCASE("reps floor") {
        CHECK_THROWS_AS(estimate_renewal_function(IncrementLaw::exponential(1.0), {1.0}, 1, seed),
                        parameter_error);
    }
}

TEST_CASE("norming function c(t)") {
    CHECK(IncrementLaw::exponential(1.0).norming_c(100.0) == doctest::Approx(10.0));
    CHECK(IncrementLaw::pareto(1.5, 1.0).norming_c(1e6) == doctest::Approx(1e4));
    CHECK(IncrementLaw::exponential(1.0).norming_c(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(IncrementLaw::pareto(0.5, 1.0).norming_c(10.0), unsupported_scenario_error);
    CHECK_THROWS_AS(IncrementLaw::exponential(1.0).norming_c(0.0), parameter_error);
}

TEST_CASE("increment law catalog invariants") {
    CHECK(IncrementLaw::pareto(0.5, 1.0).mu() == std::numeric_limits<double>::infinity());
    CHECK(IncrementLaw::pareto(1.5, 1.0).mu() == doctest::Approx(3.0));
    CHECK(!std::isfinite(IncrementLaw::pareto(1.5, 1.0).sigma2()));
    CHECK(IncrementLaw::exponential(2.0).mu() == doctest::Approx(0.5));
    CHECK_THROWS_AS(IncrementLaw::pareto(1.0, 1.0), parameter_error); // excluded index
    CHECK_THROWS_AS(IncrementLaw::pareto(2.5, 1.0), parameter_error);
    CHECK_THROWS_AS(IncrementLaw::exponential(0.0), parameter_error);

    // survival plug-in: P{xi > 100} = 0.1 for the square-root tail
    CHECK(IncrementLaw::pareto(0.5, 1.0).survival(100.0) == doctest::Approx(0.1));
}

TEST_CASE("pareto(1.5) sample mean approaches mu = 3") {
    Stream s{StreamSeed{31, {}}};
    const IncrementLaw law = IncrementLaw::pareto(1.5, 1.0);
    double acc = 0.0;
    const std::size_t n = 1000000;
    for (std::size_t i = 0; i < n; ++i) acc += law.sample(s);
    CHECK(acc / n == doctest::Approx(3.0).epsilon(0.03));
}

TEST_CASE("increment sampling hits the textbook moments and tails") {
    Stream s{StreamSeed{33, {}}};
    const std::size_t n = 100000;
    SUBCASE("exponential mean within 1%") {
        const IncrementLaw law = IncrementLaw::exponential(1.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += law.sample(s);
        CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("pareto square-root tail at level 100") {
        const IncrementLaw law = IncrementLaw::pareto(0.5, 1.0);
        std::size_t exceed = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (law.sample(s) > 100.0) ++exceed;
        CHECK(std::abs(static_cast<double>(exceed) / n - 0.1) < 0.01);
    }
    SUBCASE("all draws are strictly positive") {
        for (const auto& law : {IncrementLaw::exponential(2.0), IncrementLaw::pareto(0.5, 1.0),
                                IncrementLaw::lognormal(0.0, 1.0), IncrementLaw::deterministic(2.0)})
            for (int i = 0; i < 1000; ++i) CHECK(law.sample(s) > 0.0);
    }
}

TEST_CASE("first-passage fluctuation endpoints") {
    SUBCASE("finite variance: Gaussian limit") {
        const IncrementLaw law = IncrementLaw::exponential(1.0);
        const double t = 1e4;
        const std::size_t n = 2000;
        std::vector<double> stat(n);
        StreamSeed seed{41, {}};
        for (std::size_t i = 0; i < n; ++i) {
            Stream s{derive_stream(seed, i)};
            const RenewalPath path = simulate_walk(law, t, s);
            stat[i] = (static_cast<double>(path.first_passage(t)) - t / law.mu()) /
                      (std::pow(law.mu(), -1.5) * law.norming_c(t));
        }
        CHECK(ks_p_value(ks_statistic_normal(stat, 0.0, 1.0), n) > 0.01);
    }
    SUBCASE("infinite mean: inverse-subordinator limit") {
        const IncrementLaw law = IncrementLaw::pareto(0.5, 1.0);
        const double t = 1e3;
        const std::size_t n = 2000;
        std::vector<double> stat(n), ref(n);
        StreamSeed seed{91, {}};
        for (std::size_t i = 0; i < n; ++i) {
            Stream s{derive_stream(seed, i)};
            const RenewalPath path = simulate_walk(law, t, s);
            stat[i] = law.survival(t) * static_cast<double>(path.first_passage(t));
            Stream s2{derive_stream(derive_stream(seed, 1), i)};
            ref[i] = sample_inverse_marginal(0.5, 1.0, s2);
        }
        CHECK(ks_p_value(ks_statistic(stat, ref), n, n) > 0.01);
    }
}

TEST_CASE("walk budget guard") {
    Stream s{StreamSeed{1, {}}};
    CHECK_THROWS_AS(simulate_walk(IncrementLaw::deterministic(1.0), 1000.0, s, 10),
                    resource_error);
    CHECK_THROWS_AS(simulate_walk(IncrementLaw::exponential(1.0), 0.0, s), parameter_error);
}
