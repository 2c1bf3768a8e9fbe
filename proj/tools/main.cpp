// Command-line front end: scenario simulation, limit-law sampling,
// renewal-calculus checks, convergence studies, and the statistical
// acceptance suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "renimm/acceptance.hpp"
#include "renimm/asymptotics.hpp"
#include "renimm/scenario_config.hpp"
#include "renimm/verification.hpp"
#include "renimm/version.hpp"

namespace fs = std::filesystem;
using namespace renimm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitAcceptanceFail = 3;

std::string default_out_dir() {
    if (const char* env = std::getenv("RENIMM_OUT")) return env;
    return ".";
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

KeyValueMap load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const KeyValueMap& resolved, std::uint64_t seed) {
    nlohmann::json j;
    j["tool"] = "renimm";
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = seed;
    nlohmann::json cfg;
    for (const auto& [k, v] : resolved) cfg[k] = v;
    j["config"] = cfg;
    write_file(dir / "manifest.json", j.dump(2) + "\n");
}

CovarianceModel cov_from_name(const std::string& name, double beta) {
    if (name == "max_power") return {CovarianceModel::Form::max_power, beta};
    if (name == "prod_power") return {CovarianceModel::Form::prod_power, beta};
    if (name == "fictitious") return {CovarianceModel::Form::fictitious, beta};
    throw parameter_error("unknown limit-function form: " + name);
}

struct CommonArgs {
    std::string out_dir = default_out_dir();
    std::uint64_t seed = 0;
    unsigned jobs = 0;
};

int cmd_simulate(const std::string& scenario_path, const std::vector<std::string>& overrides,
                 const CommonArgs& common) {
    KeyValueMap kv = load_scenario_file(scenario_path);
    apply_overrides(kv, overrides);
    Scenario sc = scenario_from_config(kv);
    sc.seed.root = common.seed;
    sc.jobs = common.jobs;
    const FddSample sample = normalized_fdd_sample(sc);
    const fs::path dir(common.out_dir);
    std::ostringstream csv;
    sample.write_csv(csv);
    write_file(dir / "fdd.csv", csv.str());
    write_manifest(dir, "simulate", scenario_to_config(sc), common.seed);
    std::cout << "wrote " << (dir / "fdd.csv").string() << " (" << sample.reps() << " x "
              << sample.u_grid.size() << ")\n";
    return kExitOk;
}

int cmd_limit_sample(const std::string& case_name, double alpha, double beta, double rho, double p,
                     double q, double mu, const std::string& cov_form, const std::string& u_csv,
                     std::size_t reps, std::size_t n_steps, const CommonArgs& common) {
    LimitFddSpec spec;
    if (case_name == "v_beta") spec.kase = LimitFddSpec::Case::v_beta;
    else if (case_name == "z") spec.kase = LimitFddSpec::Case::z;
    else if (case_name == "frac_stable") spec.kase = LimitFddSpec::Case::frac_stable;
    else if (case_name == "frac_inverse") spec.kase = LimitFddSpec::Case::frac_inverse;
    else if (case_name == "thm21_mix") spec.kase = LimitFddSpec::Case::thm21_mix;
    else if (case_name == "thm22_mix") spec.kase = LimitFddSpec::Case::thm22_mix;
    else throw parameter_error("unknown limit case: " + case_name);
    spec.alpha = alpha;
    spec.rho = rho;
    spec.p = p;
    spec.q = q;
    spec.mu = mu;
    spec.C = cov_from_name(cov_form, beta);
    spec.u_grid = parse_list(u_csv);
    spec.n_steps = n_steps;

    StreamSeed seed;
    seed.root = common.seed;
    const FddSample sample = sample_limit_fdd(spec, reps, seed, common.jobs);
    const fs::path dir(common.out_dir);
    std::ostringstream csv;
    sample.write_csv(csv);
    write_file(dir / "limit_fdd.csv", csv.str());
    KeyValueMap resolved{{"case", case_name},
                         {"alpha", std::to_string(alpha)},
                         {"beta", std::to_string(beta)},
                         {"rho", std::to_string(rho)},
                         {"p", std::to_string(p)},
                         {"q", std::to_string(q)},
                         {"mu", std::to_string(mu)},
                         {"cov", cov_form},
                         {"u_grid", u_csv},
                         {"reps", std::to_string(reps)},
                         {"n_steps", std::to_string(n_steps)}};
    write_manifest(dir, "limit-sample", resolved, common.seed);
    std::cout << "wrote " << (dir / "limit_fdd.csv").string() << "\n";
    return kExitOk;
}

int cmd_renewal_calc(const std::string& check, const std::string& scenario_path, double index,
                     double a, double b, double w, double y, double r1, double r2, double gamma,
                     const std::string& t_csv, std::size_t reps, const std::string& regime,
                     const CommonArgs& common) {
    const std::vector<double> t_list = parse_list(t_csv);
    if (t_list.empty()) throw parameter_error("renewal-calc: empty --t-list");
    StreamSeed seed;
    seed.root = common.seed;
    std::vector<LemmaRow> rows;

    if (check == "karamata") {
        for (double t : t_list)
            rows.push_back({"karamata", t,
                            karamata_ratio(FunctionSpec::power(index), index, a, t), 1.0});
    } else if (check == "sgibnev") {
        const IncrementLaw law = IncrementLaw::exponential(1.0);
        for (std::size_t i = 0; i < t_list.size(); ++i)
            rows.push_back({"sgibnev", t_list[i],
                            sgibnev_ratio(FunctionSpec::power(index), index, law, r1, r2,
                                          t_list[i], reps, derive_stream(seed, i)),
                            1.0});
    } else if (check == "renewal-limit") {
        const IncrementLaw law = IncrementLaw::pareto(index, 1.0);
        const double limit = infinite_mean_renewal_constant(index, gamma);
        for (std::size_t i = 0; i < t_list.size(); ++i)
            rows.push_back({"renewal_limit", t_list[i],
                            infinite_mean_renewal_limit(FunctionSpec::power(gamma), gamma, law,
                                                        t_list[i], reps, derive_stream(seed, i)),
                            limit});
    } else if (check == "strips") {
        Scenario sc = scenario_from_config(load_scenario_file(scenario_path));
        const auto table = uniform_strip_check(sc.model, a, b, w, t_list);
        for (const auto& row : table) rows.push_back({"strips", row.t, row.sup_gap, 0.0});
    } else if (check == "lindeberg") {
        Scenario sc = scenario_from_config(load_scenario_file(scenario_path));
        const LindebergRegime reg = regime == "infinite_mean" ? LindebergRegime::infinite_mean
                                                              : LindebergRegime::finite_mean;
        for (std::size_t i = 0; i < t_list.size(); ++i)
            rows.push_back({"lindeberg", t_list[i],
                            lindeberg_ratio(sc.model, t_list[i], y, reg, sc.law, reps,
                                            derive_stream(seed, i)),
                            0.0});
    } else {
        throw parameter_error("unknown check: " + check);
    }

    const fs::path dir(common.out_dir);
    std::ostringstream csv;
    write_lemma_csv(csv, rows);
    write_file(dir / "lemma.csv", csv.str());
    KeyValueMap resolved{{"check", check}, {"t_list", t_csv}, {"reps", std::to_string(reps)}};
    write_manifest(dir, "renewal-calc", resolved, common.seed);
    for (const auto& row : rows)
        std::cout << row.lemma << " t=" << row.t << " statistic=" << row.statistic
                  << " limit=" << row.limit << "\n";
    return kExitOk;
}

int cmd_study(const std::string& scenario_path, const std::vector<std::string>& overrides,
              const std::string& t_csv, const CommonArgs& common) {
    KeyValueMap kv = load_scenario_file(scenario_path);
    apply_overrides(kv, overrides);
    Scenario sc = scenario_from_config(kv);
    sc.seed.root = common.seed;
    sc.jobs = common.jobs;
    const std::vector<double> t_list = parse_list(t_csv);
    const ReferenceSpec ref = derive_reference(sc);

    StudyOptions opt;
    opt.compare.seed = derive_stream(sc.seed, 0xABCD);
    opt.compare.jobs = common.jobs;
    const StudyResult result = convergence_study(sc, t_list, ref, opt);

    const fs::path dir(common.out_dir);
    std::ostringstream csv;
    write_trend_csv(csv, result);
    write_file(dir / "trend.csv", csv.str());
    for (std::size_t i = 0; i < result.reports.size(); ++i)
        write_file(dir / ("report_t" + std::to_string(static_cast<long long>(result.t_list[i])) +
                          ".json"),
                   result.reports[i].to_json() + "\n");
    write_manifest(dir, "study", scenario_to_config(sc), common.seed);

    for (const auto& report : result.reports) report.write_text(std::cout);
    std::cout << "trend " << (result.trend_ok ? "ok" : "NOT improving") << ", final gap "
              << (result.final_ok ? "below" : "ABOVE") << " threshold\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, const CommonArgs& common) {
    AcceptanceConfig config;
    config.seed = common.seed;
    config.jobs = common.jobs;
    if (suite != "all") config.filter = suite;
    const AcceptanceSummary summary = run_acceptance_suite(config, &std::cout);
    const fs::path dir(common.out_dir);
    write_file(dir / "acceptance.json", summary.to_json() + "\n");
    KeyValueMap resolved{{"suite", suite}};
    write_manifest(dir, "verify", resolved, common.seed);
    std::cout << (summary.all_pass() ? "acceptance suite: all criteria passed\n"
                                     : "acceptance suite: FAILURES present\n");
    return summary.all_pass() ? kExitOk : kExitAcceptanceFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"renewal-immigration process simulation and verification"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonArgs common;

    // simulate
    auto* simulate = app.add_subcommand("simulate", "simulate a scenario and write the FDD CSV");
    std::string scenario_path;
    std::vector<std::string> overrides;
    simulate->add_option("--scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--override", overrides, "key=value override (repeatable)");
    std::string t_override, reps_override;
    simulate->add_option("--t", t_override, "override time scale t");
    simulate->add_option("--reps", reps_override, "override replication count");

    // limit-sample
    auto* limit = app.add_subcommand("limit-sample", "draw from a limit process");
    std::string limit_case = "v_beta", cov_form = "max_power", u_csv = "1";
    double alpha = 0.5, beta = 0.0, rho = 0.0, p = 0.0, q = 0.0, mu = 1.0;
    std::size_t reps = 1000, n_steps = 4096;
    limit->add_option("--case", limit_case,
                      "v_beta|z|frac_stable|frac_inverse|thm21_mix|thm22_mix")->required();
    limit->add_option("--alpha", alpha, "stable index");
    limit->add_option("--beta", beta, "limit-function homogeneity index");
    limit->add_option("--rho", rho, "fractional-integral exponent");
    limit->add_option("--p", p, "finite-mean mixing parameter");
    limit->add_option("--q", q, "infinite-mean mixing parameter");
    limit->add_option("--mu", mu, "increment mean");
    limit->add_option("--cov", cov_form, "max_power|prod_power|fictitious");
    limit->add_option("--u", u_csv, "comma-separated scale grid");
    limit->add_option("--reps", reps, "replications");
    limit->add_option("--n-steps", n_steps, "discretization steps");

    // renewal-calc
    auto* calc = app.add_subcommand("renewal-calc", "regular-variation / renewal lemma checks");
    std::string check = "karamata", t_csv = "100,1000,10000", regime = "finite_mean",
                calc_scenario;
    double index = 0.5, a_par = 1.0, b_par = 2.0, w_par = 1.0, y_par = 1.0, r1 = 0.0, r2 = 1.0,
           gamma = 0.0;
    std::size_t calc_reps = 1000;
    calc->add_option("--check", check, "karamata|sgibnev|renewal-limit|strips|lindeberg")
        ->required();
    calc->add_option("--scenario", calc_scenario, "scenario file (strips, lindeberg)");
    calc->add_option("--index", index, "power index (karamata/sgibnev phi, renewal-limit alpha)");
    calc->add_option("--a", a_par, "lower endpoint / strip lower bound");
    calc->add_option("--b", b_par, "strip upper bound");
    calc->add_option("--w", w_par, "strip gap");
    calc->add_option("--y", y_par, "truncation level");
    calc->add_option("--r1", r1, "window lower fraction");
    calc->add_option("--r2", r2, "window upper fraction");
    calc->add_option("--gamma", gamma, "test-function index");
    calc->add_option("--t-list", t_csv, "comma-separated t ladder");
    calc->add_option("--reps", calc_reps, "Monte Carlo replications");
    calc->add_option("--regime", regime, "finite_mean|infinite_mean");

    // study
    auto* study = app.add_subcommand("study", "convergence study along a t ladder");
    std::string study_scenario, study_t_csv = "100,1000";
    std::vector<std::string> study_overrides;
    study->add_option("--scenario", study_scenario, "scenario file")->required();
    study->add_option("--override", study_overrides, "key=value override (repeatable)");
    study->add_option("--t-list", study_t_csv, "comma-separated t ladder");

    // verify
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    std::string suite = "all";
    verify->add_option("--suite", suite, "all, a criterion id, or a name substring");

    for (auto* sub : {simulate, limit, calc, study, verify}) {
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--jobs", common.jobs, "worker threads (0 = hardware)");
        auto* opt = sub->add_option("--seed", common.seed, "root seed");
        if (sub == verify) opt->required(); // reproducibility contract
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            if (!t_override.empty()) overrides.push_back("t=" + t_override);
            if (!reps_override.empty()) overrides.push_back("reps=" + reps_override);
            return cmd_simulate(scenario_path, overrides, common);
        }
        if (limit->parsed())
            return cmd_limit_sample(limit_case, alpha, beta, rho, p, q, mu, cov_form, u_csv, reps,
                                    n_steps, common);
        if (calc->parsed())
            return cmd_renewal_calc(check, calc_scenario, index, a_par, b_par, w_par, y_par, r1,
                                    r2, gamma, t_csv, calc_reps, regime, common);
        if (study->parsed()) return cmd_study(study_scenario, study_overrides, study_t_csv, common);
        if (verify->parsed()) return cmd_verify(suite, common);
    } catch (const parameter_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const unsupported_scenario_error& e) {
        std::cerr << "unsupported scenario: " << e.what() << "\n";
        return kExitUsage;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << " (count " << e.count << ")\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
