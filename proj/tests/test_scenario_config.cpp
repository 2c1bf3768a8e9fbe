#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renimm/scenario_config.hpp"

using namespace renimm;

TEST_CASE("parsing a complete scenario file") {
    const std::string text = R"(# comment line
law.kind = exponential
law.rate = 1
model.id = indicator_survival
model.eta_kind = pareto
model.eta_a = 0.5
model.eta_b = 1
case = thm21
norm = example_display
u_grid = 0.5, 1, 2
t = 1000
reps = 500
)";
    const Scenario sc = scenario_from_config(parse_config_text(text));
    CHECK(sc.law.kind() == LawKind::exponential);
    CHECK(sc.model.id() == ModelId::indicator_survival);
    CHECK(sc.kase == TheoremCase::thm21);
    CHECK(sc.norm == NormVariant::example_display);
    CHECK(sc.u_grid == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(sc.t == 1000.0);
    CHECK(sc.reps == 500);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("law.kind = exponential\nwhatever = 3\n"), parameter_error);
    KeyValueMap kv = parse_config_text("law.kind = exponential\n");
    CHECK_THROWS_AS(apply_overrides(kv, {"nope=1"}), parameter_error);
    CHECK_THROWS_AS(apply_overrides(kv, {"no-equals-sign"}), parameter_error);
}

TEST_CASE("missing and malformed keys") {
    CHECK_THROWS_AS(scenario_from_config(parse_config_text("law.kind = exponential\n")),
                    parameter_error);
    CHECK_THROWS_AS(parse_config_text("law.kind exponential\n"), parameter_error);
    CHECK_THROWS_AS(scenario_from_config(parse_config_text(
                        "law.kind = exponential\nmodel.id = deterministic_h\nmodel.rho = 0\n"
                        "case = nope\nu_grid = 1\nt = 10\nreps = 10\n")),
                    parameter_error);
    CHECK_THROWS_AS(scenario_from_config(parse_config_text(
                        "law.kind = pareto\nlaw.alpha = abc\nmodel.id = deterministic_h\n"
                        "model.rho = 0\ncase = thm21\nu_grid = 1\nt = 10\nreps = 10\n")),
                    parameter_error);
}

TEST_CASE("overrides win over file values") {
    KeyValueMap kv = parse_config_text(
        "law.kind = exponential\nlaw.rate = 1\nmodel.id = deterministic_h\nmodel.rho = 0\n"
        "case = thm21\nu_grid = 1\nt = 10\nreps = 10\n");
    apply_overrides(kv, {"t=250", "reps=33"});
    const Scenario sc = scenario_from_config(kv);
    CHECK(sc.t == 250.0);
    CHECK(sc.reps == 33);
}

TEST_CASE("every catalog model round-trips through its config keys") {
    std::vector<std::string> sources = {
        "law.kind = exponential\nlaw.rate = 1\nmodel.id = indicator_hit\n"
        "model.eta_kind = exponential\nmodel.eta_a = 1\ncase = thm21\nu_grid = 1\nt = 10\nreps = 5\n",
        "law.kind = pareto\nlaw.alpha = 0.5\nlaw.x_min = 1\nmodel.id = noisy_h\n"
        "model.rho = -0.25\nmodel.noise_kind = rademacher\nmodel.noise_sd = 1\n"
        "case = thm22\nu_grid = 0.5,1\nt = 10\nreps = 5\n",
        "law.kind = exponential\nlaw.rate = 1\nmodel.id = scaled_variable\n"
        "model.eta_kind = normal\nmodel.eta_a = 0\nmodel.eta_b = 1\nmodel.beta = 1\n"
        "case = prop21\nu_grid = 1,2\nt = 10\nreps = 5\n",
        "law.kind = exponential\nlaw.rate = 1\nmodel.id = ou_modulated\nmodel.beta = -0.5\n"
        "case = prop21\nu_grid = 1,2\nt = 10\nreps = 5\n",
        "law.kind = pareto\nlaw.alpha = 0.5\nlaw.x_min = 1\nmodel.id = shrinking_bm\n"
        "model.a = 0.5\ncase = prop22\nu_grid = 1,2\nt = 10\nreps = 5\n",
        "law.kind = pareto\nlaw.alpha = 0.5\nlaw.x_min = 1\nmodel.id = indicator_survival\n"
        "model.coupling = coupled\nmodel.kappa = 2\ncase = prop21\nu_grid = 1\nt = 10\nreps = 5\n",
    };
    // the last source pairs a coupled model with a finite-mean case on an
    // infinite-mean law; fix the case up front
    sources.back() =
        "law.kind = exponential\nlaw.rate = 1\nmodel.id = indicator_survival\n"
        "model.coupling = coupled\nmodel.kappa = 2\ncase = prop21\nu_grid = 1\nt = 10\nreps = 5\n";
    for (const auto& text : sources) {
        const Scenario sc = scenario_from_config(parse_config_text(text));
        const KeyValueMap out = scenario_to_config(sc);
        const Scenario rt = scenario_from_config(out);
        CHECK(rt.model.id() == sc.model.id());
        CHECK(rt.kase == sc.kase);
        CHECK(rt.u_grid == sc.u_grid);
        CHECK(rt.t == sc.t);
        CHECK(rt.model.describe() == sc.model.describe());
    }
}
