#include "renimm/verification.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "renimm/quadrature.hpp"

namespace renimm {

namespace {

using json = nlohmann::json;

void fill_marginals(VerificationReport& report, const FddSample& emp,
                    const std::vector<double>& ref_mean, const std::vector<double>& ref_var) {
    const std::size_t m = emp.u_grid.size();
    const double n = static_cast<double>(emp.reps());
    for (std::size_t j = 0; j < m; ++j) {
        MarginalCheck check;
        check.u = emp.u_grid[j];
        check.emp_mean = emp.col_mean(j);
        check.emp_var = emp.col_variance(j);
        check.se_mean = std::sqrt(check.emp_var / n);
        check.ref_mean = ref_mean[j];
        check.ref_var = ref_var[j];
        report.marginals.push_back(check);
    }
}

void fill_pairs(VerificationReport& report, const FddSample& emp,
                const std::vector<double>& ref_cov) {
    const std::size_t m = emp.u_grid.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            PairCheck pair;
            pair.u_i = emp.u_grid[i];
            pair.u_j = emp.u_grid[j];
            pair.emp_cov = emp.cov(i, j);
            pair.ref_cov = ref_cov[i * m + j];
            report.pairs.push_back(pair);
        }
}

void add_moment_verdicts(VerificationReport& report, const CompareOptions& opt) {
    for (const auto& mc : report.marginals) {
        const double scale = std::max(std::abs(mc.ref_var), 1e-12);
        Verdict v;
        v.name = "var_gap(u=" + std::to_string(mc.u) + ")";
        v.value = std::abs(mc.emp_var - mc.ref_var) / scale;
        v.threshold = opt.moment_tol;
        v.pass = v.value < v.threshold;
        report.verdicts.push_back(v);

        Verdict ks;
        ks.name = "ks_p(u=" + std::to_string(mc.u) + ")";
        ks.value = mc.ks_p;
        ks.threshold = opt.p_threshold;
        ks.pass = mc.ks_p > opt.p_threshold;
        report.verdicts.push_back(ks);
    }
    for (const auto& pc : report.pairs) {
        const double scale = std::max(std::abs(pc.ref_cov), 1e-12);
        Verdict v;
        v.name = "cov_gap(" + std::to_string(pc.u_i) + "," + std::to_string(pc.u_j) + ")";
        v.value = std::abs(pc.emp_cov - pc.ref_cov) / scale;
        v.threshold = opt.moment_tol;
        v.pass = v.value < v.threshold;
        report.verdicts.push_back(v);
    }
    if (report.energy) {
        Verdict v;
        v.name = "energy_p";
        v.value = report.energy->p_value;
        v.threshold = opt.p_threshold;
        v.pass = v.value > v.threshold;
        report.verdicts.push_back(v);
    }
}

} // namespace

bool VerificationReport::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string VerificationReport::to_json() const {
    json j;
    j["empirical"] = empirical_label;
    j["reference"] = reference_label;
    j["marginals"] = json::array();
    for (const auto& m : marginals)
        j["marginals"].push_back({{"u", m.u},
                                  {"emp_mean", m.emp_mean},
                                  {"se_mean", m.se_mean},
                                  {"ref_mean", m.ref_mean},
                                  {"emp_var", m.emp_var},
                                  {"ref_var", m.ref_var},
                                  {"ks_stat", m.ks_stat},
                                  {"ks_p", m.ks_p}});
    j["pairs"] = json::array();
    for (const auto& p : pairs)
        j["pairs"].push_back(
            {{"u_i", p.u_i}, {"u_j", p.u_j}, {"emp_cov", p.emp_cov}, {"ref_cov", p.ref_cov}});
    if (energy)
        j["energy"] = {{"statistic", energy->statistic},
                       {"p_value", energy->p_value},
                       {"n_used", energy->n_used},
                       {"m_used", energy->m_used}};
    j["cf_sup_gap"] = cf_sup_gap;
    j["cf_by_z"] = json::array();
    for (const auto& [z, gap] : cf_by_z) j["cf_by_z"].push_back({{"z", z}, {"gap", gap}});
    j["verdicts"] = json::array();
    for (const auto& v : verdicts)
        j["verdicts"].push_back(
            {{"name", v.name}, {"pass", v.pass}, {"value", v.value}, {"threshold", v.threshold}});
    j["all_pass"] = all_pass();
    return j.dump(2);
}

void VerificationReport::write_text(std::ostream& os) const {
    os << "comparison: " << empirical_label << " vs " << reference_label << "\n";
    os << "  u        mean (se)          ref_mean   var        ref_var    ks_p\n";
    char buf[160];
    for (const auto& m : marginals) {
        std::snprintf(buf, sizeof buf, "  %-8.4g %-9.4g (%-7.2g) %-10.4g %-10.4g %-10.4g %-8.4g\n",
                      m.u, m.emp_mean, m.se_mean, m.ref_mean, m.emp_var, m.ref_var, m.ks_p);
        os << buf;
    }
    for (const auto& p : pairs) {
        std::snprintf(buf, sizeof buf, "  cov(%.4g,%.4g) = %.5g  (ref %.5g)\n", p.u_i, p.u_j,
                      p.emp_cov, p.ref_cov);
        os << buf;
    }
    if (energy) {
        std::snprintf(buf, sizeof buf, "  energy stat %.5g  p=%.4g  (n=%zu,m=%zu)\n",
                      energy->statistic, energy->p_value, energy->n_used, energy->m_used);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "  cf sup-gap %.5g\n", cf_sup_gap);
    os << buf;
    for (const auto& v : verdicts) {
        std::snprintf(buf, sizeof buf, "  [%s] %-28s value %.5g  threshold %.4g\n",
                      v.pass ? "pass" : "FAIL", v.name.c_str(), v.value, v.threshold);
        os << buf;
    }
}

VerificationReport compare_fdds(const FddSample& emp, const FddSample& ref,
                                const CompareOptions& opt) {
    if (emp.u_grid != ref.u_grid)
        throw parameter_error("compare_fdds: u_grids must match");
    VerificationReport report;
    report.empirical_label = emp.case_label + "@t=" + std::to_string(emp.t);
    report.reference_label = ref.case_label;

    const std::size_t m = emp.u_grid.size();
    std::vector<double> ref_mean(m), ref_var(m), ref_cov(m * m);
    for (std::size_t j = 0; j < m; ++j) {
        ref_mean[j] = ref.col_mean(j);
        ref_var[j] = ref.col_variance(j);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) ref_cov[i * m + j] = i == j ? ref_var[i] : ref.cov(i, j);
    fill_marginals(report, emp, ref_mean, ref_var);
    fill_pairs(report, emp, ref_cov);

    Stream dither_stream(derive_stream(opt.seed, 0xD));
    for (std::size_t j = 0; j < m; ++j) {
        auto ea = emp.column(j);
        if (opt.lattice_delta > 0.0) ea = dither_lattice(ea, opt.lattice_delta, dither_stream);
        const auto eb = ref.column(j);
        report.marginals[j].ks_stat = ks_statistic(ea, eb);
        report.marginals[j].ks_p = ks_p_value(report.marginals[j].ks_stat, ea.size(), eb.size());
    }
    if (opt.run_energy)
        report.energy = energy_distance_test(emp, ref, opt.n_perms, opt.seed, opt.energy_cap,
                                             opt.jobs);
    for (double z : opt.z_grid) {
        const auto [xr, xi] = empirical_cf(emp, z);
        const auto [yr, yi] = empirical_cf(ref, z);
        const double gap = std::hypot(xr - yr, xi - yi);
        report.cf_by_z.emplace_back(z, gap);
        report.cf_sup_gap = std::max(report.cf_sup_gap, gap);
    }
    add_moment_verdicts(report, opt);
    return report;
}

VerificationReport compare_fdds_gaussian(const FddSample& emp, const std::vector<double>& cov,
                                         const CompareOptions& opt) {
    const std::size_t m = emp.u_grid.size();
    if (cov.size() != m * m) throw parameter_error("compare_fdds_gaussian: covariance shape");
    VerificationReport report;
    report.empirical_label = emp.case_label + "@t=" + std::to_string(emp.t);
    report.reference_label = "gaussian(closed form)";

    std::vector<double> ref_mean(m, 0.0), ref_var(m);
    for (std::size_t j = 0; j < m; ++j) ref_var[j] = cov[j * m + j];
    fill_marginals(report, emp, ref_mean, ref_var);
    fill_pairs(report, emp, cov);

    Stream dither_stream(derive_stream(opt.seed, 0xD));
    for (std::size_t j = 0; j < m; ++j) {
        auto col = emp.column(j);
        if (opt.lattice_delta > 0.0) col = dither_lattice(col, opt.lattice_delta, dither_stream);
        report.marginals[j].ks_stat = ks_statistic_normal(col, 0.0, std::sqrt(ref_var[j]));
        report.marginals[j].ks_p = ks_p_value(report.marginals[j].ks_stat, col.size());
    }
    if (opt.run_energy) {
        const std::size_t nref = std::min(emp.reps(), opt.energy_cap);
        const FddSample ref =
            sample_gaussian_fdd(cov, emp.u_grid, nref, derive_stream(opt.seed, 0xE), opt.jobs);
        report.energy =
            energy_distance_test(emp, ref, opt.n_perms, opt.seed, opt.energy_cap, opt.jobs);
    }
    // CF of the unit-weight functional: variance 1' cov 1
    double functional_var = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) functional_var += cov[i * m + j];
    for (double z : opt.z_grid) {
        const auto [xr, xi] = empirical_cf(emp, z);
        const double ref = std::exp(-0.5 * z * z * functional_var);
        const double gap = std::hypot(xr - ref, xi);
        report.cf_by_z.emplace_back(z, gap);
        report.cf_sup_gap = std::max(report.cf_sup_gap, gap);
    }
    add_moment_verdicts(report, opt);
    return report;
}

std::vector<double> thm21_limit_cov(const Scenario& sc, double p) {
    const std::size_t m = sc.u_grid.size();
    const double mu = sc.law.mu();
    std::vector<double> cov(m * m, 0.0);
    if (p < 1.0) {
        const CovarianceModel C = sc.model.cov_model();
        const std::vector<double> vcov = v_cov_matrix(C, sc.u_grid);
        const double coef = sc.norm == NormVariant::example_display
                                ? 1.0 // display scale converges to V_beta itself when p = 0
                                : (1.0 - p) * (1.0 + C.beta) / mu;
        for (std::size_t k = 0; k < m * m; ++k) cov[k] += coef * vcov[k];
    }
    if (p > 0.0) {
        if (sc.norm == NormVariant::example_display)
            throw unsupported_scenario_error("display normalization only supports p = 0");
        if (sc.law.alpha() != 2.0)
            throw unsupported_scenario_error(
                "thm21 closed-form covariance needs alpha = 2 (finite variance)");
        const double rho = sc.model.rho();
        const double coef = p * std::pow(mu, -3.0); // (sqrt(p) mu^{-3/2})^2
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double u = std::min(sc.u_grid[i], sc.u_grid[j]);
                const double w = std::max(sc.u_grid[i], sc.u_grid[j]);
                double iso;
                if (rho == 0.0) {
                    iso = u;
                } else {
                    const double gap = w - u;
                    auto f = [&](double z) {
                        return std::pow(z, rho) * std::pow(gap + z, rho);
                    };
                    iso = integrate_power_endpoint(f, u, std::min(rho, 0.0), 1e-8);
                }
                cov[i * m + j] += coef * iso;
            }
    }
    return cov;
}

ReferenceSpec derive_reference(const Scenario& sc) {
    Scenario scenario = sc;
    scenario.validate();
    ReferenceSpec ref;
    switch (scenario.kase) {
    case TheoremCase::prop21: {
        ref.kind = ReferenceSpec::Kind::gaussian_closed_form;
        ref.cov = v_cov_matrix(scenario.model.cov_model(), scenario.u_grid);
        ref.label = "V_beta";
        return ref;
    }
    case TheoremCase::prop22: {
        ref.kind = ReferenceSpec::Kind::sampled_limit;
        ref.limit.kase = LimitFddSpec::Case::z;
        ref.limit.alpha = scenario.law.alpha();
        ref.limit.C = scenario.model.cov_model();
        ref.limit.u_grid = scenario.u_grid;
        ref.label = "Z_alpha_beta";
        return ref;
    }
    case TheoremCase::thm21: {
        const MixingResult mix = scenario.model.mixing_parameter(scenario.law);
        if (scenario.law.alpha() == 2.0 || mix.value == 0.0) {
            ref.kind = ReferenceSpec::Kind::gaussian_closed_form;
            ref.cov = thm21_limit_cov(scenario, mix.value);
            ref.label = "thm21 limit (" + mix.case_label + ")";
        } else {
            ref.kind = ReferenceSpec::Kind::sampled_limit;
            ref.limit.kase = LimitFddSpec::Case::thm21_mix;
            ref.limit.alpha = scenario.law.alpha();
            ref.limit.p = mix.value;
            ref.limit.mu = scenario.law.mu();
            ref.limit.rho = scenario.model.rho();
            if (mix.value < 1.0) ref.limit.C = scenario.model.cov_model();
            ref.limit.u_grid = scenario.u_grid;
            ref.label = "thm21 limit (" + mix.case_label + ")";
        }
        return ref;
    }
    case TheoremCase::thm22: {
        const MixingResult mix = scenario.model.mixing_parameter(scenario.law);
        ref.kind = ReferenceSpec::Kind::sampled_limit;
        ref.limit.kase = LimitFddSpec::Case::thm22_mix;
        ref.limit.alpha = scenario.law.alpha();
        ref.limit.q = mix.value;
        if (mix.value < 1.0) ref.limit.C = scenario.model.cov_model();
        if (mix.value > 0.0 && mix.value < 1.0)
            ref.limit.rho = (scenario.model.beta() - scenario.law.alpha()) / 2.0;
        else if (mix.value == 1.0)
            ref.limit.rho = scenario.model.rho();
        ref.limit.u_grid = scenario.u_grid;
        ref.label = "thm22 limit (" + mix.case_label + ")";
        return ref;
    }
    }
    throw parameter_error("derive_reference: unknown case");
}

StudyResult convergence_study(const Scenario& base, const std::vector<double>& t_list,
                              const ReferenceSpec& ref, const StudyOptions& opt) {
    if (t_list.empty()) throw parameter_error("convergence_study: empty t ladder");
    for (std::size_t i = 1; i < t_list.size(); ++i)
        if (!(t_list[i] > t_list[i - 1]))
            throw parameter_error("convergence_study: t ladder must increase");

    StudyResult result;
    result.t_list = t_list;

    std::optional<FddSample> ref_sample;
    if (ref.kind == ReferenceSpec::Kind::sampled_limit) {
        LimitFddSpec spec = ref.limit;
        ref_sample = sample_limit_fdd(spec, ref.ref_reps, derive_stream(opt.compare.seed, 0xF),
                                      opt.compare.jobs);
        ref_sample->case_label = ref.label;
    }

    std::vector<double> gaps;
    for (double t : t_list) {
        Scenario sc = base;
        sc.t = t;
        const FddSample emp = normalized_fdd_sample(sc);
        CompareOptions copt = opt.compare;
        if (opt.auto_lattice && (base.model.id() == ModelId::indicator_survival ||
                                 base.model.id() == ModelId::indicator_hit))
            copt.lattice_delta = 1.0 / normalization_scale(sc);
        VerificationReport report =
            ref.kind == ReferenceSpec::Kind::gaussian_closed_form
                ? compare_fdds_gaussian(emp, ref.cov, copt)
                : compare_fdds(emp, *ref_sample, copt);
        gaps.push_back(report.cf_sup_gap);
        result.rows.push_back({t, "cf_sup_gap", report.cf_sup_gap, 0.0});
        for (const auto& m : report.marginals) {
            result.rows.push_back({t, "var(u=" + std::to_string(m.u) + ")", m.emp_var, m.ref_var});
            result.rows.push_back({t, "ks_p(u=" + std::to_string(m.u) + ")", m.ks_p,
                                   opt.compare.p_threshold});
        }
        for (const auto& p : report.pairs)
            result.rows.push_back({t, "cov(" + std::to_string(p.u_i) + "," + std::to_string(p.u_j) + ")",
                                   p.emp_cov, p.ref_cov});
        if (report.energy)
            result.rows.push_back({t, "energy_p", report.energy->p_value, opt.compare.p_threshold});
        result.reports.push_back(std::move(report));
    }

    result.trend_ok = true;
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (gaps[i] > gaps[i - 1] + opt.trend_slack) result.trend_ok = false;
    result.final_ok = gaps.back() < opt.final_gap_threshold;
    return result;
}

void write_trend_csv(std::ostream& os, const StudyResult& study) {
    os << "t,statistic,value,target\n";
    char buf[64];
    for (const auto& row : study.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.t);
        os << buf << ',' << row.statistic << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.value);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.target);
        os << buf << '\n';
    }
}

} // namespace renimm
