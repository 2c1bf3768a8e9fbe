#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "renimm/asymptotics.hpp"

using namespace renimm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Karamata ratio") {
    SUBCASE("pure powers are exact up to the lower endpoint") {
        CHECK(karamata_ratio(FunctionSpec::power(2.0), 2.0, 1.0, 1e3) ==
              doctest::Approx(1.0).epsilon(1e-6));
        CHECK(karamata_ratio(FunctionSpec::power(0.5), 0.5, 0.0, 1e4) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("log-perturbed power approaches 1") {
        const double r = karamata_ratio(FunctionSpec::power_log(0.5), 0.5, 2.0, 1e6);
        CHECK(r == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("ladder trend: the largest t sits closest to the limit") {
        double prev_gap = 1e9;
        for (double t : {1e2, 1e3, 1e4, 1e6}) {
            const double gap = std::abs(karamata_ratio(FunctionSpec::power_log(0.5), 0.5, 2.0, t) - 1.0);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
    SUBCASE("domain guards") {
        CHECK_THROWS_AS(karamata_ratio(FunctionSpec::power(0.5), -1.0, 0.0, 10.0),
                        parameter_error);
        CHECK_THROWS_AS(karamata_ratio(FunctionSpec::power(0.5), 0.5, 10.0, 5.0), parameter_error);
    }
}

TEST_CASE("windowed renewal integral against the Poisson oracle") {
    const IncrementLaw law = IncrementLaw::exponential(1.0);
    const FunctionSpec phi = FunctionSpec::power(0.5);
    const double t = 1e4;
    StreamSeed seed{21, {}};

    SUBCASE("full window: ratio 1, exact numerator sqrt(t) + (2/3) t^{3/2}") {
        double se = 0.0;
        const double window = renewal_window_sum(phi, law, 0.0, 1.0, t, 400, seed, &se);
        const double exact = std::sqrt(t) + (2.0 / 3.0) * std::pow(t, 1.5);
        CHECK(std::abs(window - exact) < 3.0 * se);
        const double ratio = sgibnev_ratio(phi, 0.5, law, 0.0, 1.0, t, 400, seed);
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("constant test function reproduces U(t) = t + 1") {
        double se = 0.0;
        const double window =
            renewal_window_sum(FunctionSpec::power(0.0), law, 0.0, 1.0, t, 400, seed, &se);
        CHECK(std::abs(window - (t + 1.0)) < 3.0 * se);
        const double ratio = sgibnev_ratio(FunctionSpec::power(0.0), 0.0, law, 0.0, 1.0, t, 400,
                                           seed);
        CHECK(ratio == doctest::Approx((t + 1.0) / t).epsilon(0.01));
    }
    SUBCASE("half window carries the (1-r1)^{1+beta} constant") {
        const double ratio =
            sgibnev_ratio(phi, 0.5, law, 0.5, 1.0, t, 400, derive_stream(seed, 1));
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.03));
    }
    SUBCASE("poisson oracle holds along the whole ladder") {
        for (double tt : {1e2, 1e3, 1e4}) {
            double se = 0.0;
            const double window =
                renewal_window_sum(phi, law, 0.0, 1.0, tt, 400, derive_stream(seed, 2), &se);
            const double exact = std::sqrt(tt) + (2.0 / 3.0) * std::pow(tt, 1.5);
            CHECK(std::abs(window - exact) < 3.0 * se);
        }
    }
    SUBCASE("infinite-mean laws are rejected") {
        CHECK_THROWS_AS(
            sgibnev_ratio(phi, 0.5, IncrementLaw::pareto(0.5, 1.0), 0.0, 1.0, 100.0, 10, seed),
            unsupported_scenario_error);
    }
}

TEST_CASE("infinite-mean renewal limit") {
    const IncrementLaw law = IncrementLaw::pareto(0.5, 1.0);
    StreamSeed seed{22, {}};
    SUBCASE("gamma = 0 gives 2/pi") {
        const double v = infinite_mean_renewal_limit(FunctionSpec::power(0.0), 0.0, law, 1e3,
                                                     10000, seed);
        CHECK(v == doctest::Approx(2.0 / kPi).epsilon(0.10));
        CHECK(infinite_mean_renewal_constant(0.5, 0.0) == doctest::Approx(2.0 / kPi));
    }
    SUBCASE("gamma = 1 gives 4/(3 pi)") {
        const double v = infinite_mean_renewal_limit(FunctionSpec::power(1.0), 1.0, law, 1e3,
                                                     10000, derive_stream(seed, 1));
        CHECK(v == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(0.10));
    }
    SUBCASE("gamma = -alpha collapses the constant to 1") {
        CHECK(infinite_mean_renewal_constant(0.5, -0.5) == doctest::Approx(1.0));
    }
    SUBCASE("monotone trend along the ladder") {
        double prev_gap = 1e9;
        for (double t : {1e2, 1e3, 1e4}) {
            const double v = infinite_mean_renewal_limit(FunctionSpec::power(0.0), 0.0, law, t,
                                                          10000, derive_stream(seed, 2));
            const double gap = std::abs(v - 2.0 / kPi);
            CHECK(gap < prev_gap + 0.02); // within Monte Carlo noise
            prev_gap = gap;
        }
    }
}

TEST_CASE("uniform-in-strips statistic") {
    SUBCASE("survival indicator: decreasing toward zero") {
        const auto model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
        const auto rows = uniform_strip_check(model, 0.5, 2.0, 1.0, {1e2, 1e3, 1e4});
        CHECK(rows[0].sup_gap > rows[1].sup_gap);
        CHECK(rows[1].sup_gap > rows[2].sup_gap);
        CHECK(rows[2].sup_gap < 5e-3);
    }
    SUBCASE("shifted-time Brownian model: small gaps at moderate t") {
        const auto model = ResponseModel::shrinking_bm(0.5);
        const auto rows = uniform_strip_check(model, 0.5, 2.0, 1.0, {1e3, 1e4});
        CHECK(rows[0].sup_gap < 1e-2);
        CHECK(rows[1].sup_gap < 1e-3);
    }
    SUBCASE("fictitious model vanishes off the diagonal exponentially fast") {
        const auto model = ResponseModel::ou_modulated(-0.5);
        const auto rows = uniform_strip_check(model, 0.5, 2.0, 1.0, {1e2});
        CHECK(rows[0].sup_gap < 1e-20);
    }
    SUBCASE("argument guards") {
        const auto model = ResponseModel::shrinking_bm(0.5);
        CHECK_THROWS_AS(uniform_strip_check(model, 2.0, 1.0, 1.0, {10.0}), parameter_error);
        CHECK_THROWS_AS(uniform_strip_check(model, 0.5, 2.0, 0.0, {10.0}), parameter_error);
    }
}

TEST_CASE("Lindeberg truncation ratio") {
    StreamSeed seed{23, {}};
    SUBCASE("bounded indicator fluctuations vanish once the threshold passes 1") {
        const auto model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
        const auto law = IncrementLaw::exponential(1.0);
        // y sqrt(t v(t)) = sqrt(100 * 0.09) = 3 > 1
        const double r =
            lindeberg_ratio(model, 100.0, 1.0, LindebergRegime::finite_mean, law, 20000, seed);
        CHECK(r == 0.0);
    }
    SUBCASE("square-integrable scaled variable truncates away") {
        const auto model = ResponseModel::scaled_variable(EtaLaw::normal(0.0, 1.0), 1.0);
        const auto law = IncrementLaw::exponential(1.0);
        const double r =
            lindeberg_ratio(model, 1e4, 1.0, LindebergRegime::finite_mean, law, 20000, seed);
        CHECK(r < 0.01);
    }
    SUBCASE("shrinking Brownian response under the heavy-tailed threshold") {
        const auto model = ResponseModel::shrinking_bm(0.5);
        const auto law = IncrementLaw::pareto(0.5, 1.0);
        const double r =
            lindeberg_ratio(model, 1e3, 1.0, LindebergRegime::infinite_mean, law, 20000, seed);
        CHECK(r < 0.01);
    }
    SUBCASE("degenerate variance short-circuits to zero") {
        const auto model = ResponseModel::deterministic_h(0.5);
        const auto law = IncrementLaw::exponential(1.0);
        CHECK(lindeberg_ratio(model, 10.0, 1.0, LindebergRegime::finite_mean, law, 10, seed) ==
              0.0);
    }
}

TEST_CASE("lemma CSV format") {
    std::vector<LemmaRow> rows{{"karamata", 100.0, 1.01, 1.0}};
    std::ostringstream os;
    write_lemma_csv(os, rows);
    const std::string text = os.str();
    CHECK(text.rfind("lemma,t,statistic,limit,abs_gap\n", 0) == 0);
    CHECK(text.find("karamata,100,") != std::string::npos);
}
