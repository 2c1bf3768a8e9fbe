#ifndef RENIMM_VERIFICATION_HPP
#define RENIMM_VERIFICATION_HPP

#include <iosfwd>
#include <optional>

#include "renimm/immigration.hpp"
#include "renimm/limit_processes.hpp"
#include "renimm/stats.hpp"

namespace renimm {

struct CompareOptions {
    std::size_t n_perms = 500;
    std::size_t energy_cap = 2000;
    std::vector<double> z_grid{-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0};
    double p_threshold = 0.01;
    double moment_tol = 0.10;
    StreamSeed seed;
    unsigned jobs = 0;
    bool run_energy = true;
    /// Lattice width of a counting statistic (0 = continuous data). When
    /// set, marginal KS comparisons smooth the empirical sample with one
    /// cell of uniform dither first.
    double lattice_delta = 0.0;
};

struct MarginalCheck {
    double u = 0.0;
    double emp_mean = 0.0, se_mean = 0.0, ref_mean = 0.0;
    double emp_var = 0.0, ref_var = 0.0;
    double ks_stat = 0.0, ks_p = 1.0;
};

struct PairCheck {
    double u_i = 0.0, u_j = 0.0;
    double emp_cov = 0.0, ref_cov = 0.0;
};

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
};

/// Statistical comparison of an empirical FDD sample against a reference
/// (sampled or closed-form Gaussian). All verdicts are recomputable from
/// the raw numbers carried in the report.
struct VerificationReport {
    std::vector<MarginalCheck> marginals;
    std::vector<PairCheck> pairs;
    std::optional<EnergyResult> energy;
    double cf_sup_gap = 0.0;
    std::vector<std::pair<double, double>> cf_by_z; // (z, |gap|)
    std::vector<Verdict> verdicts;
    std::string empirical_label, reference_label;

    bool all_pass() const;
    std::string to_json() const;
    void write_text(std::ostream& os) const;
};

/// Two-sample comparison (matching grids required).
VerificationReport compare_fdds(const FddSample& emp, const FddSample& ref,
                                const CompareOptions& opt = {});

/// Closed-form centered-Gaussian reference with the given covariance
/// matrix; marginal KS is one-sample, the energy test draws a Gaussian
/// sample from a stream derived from opt.seed.
VerificationReport compare_fdds_gaussian(const FddSample& emp, const std::vector<double>& cov,
                                         const CompareOptions& opt = {});

/// Reference description for a scenario's theorem case.
struct ReferenceSpec {
    enum class Kind { gaussian_closed_form, sampled_limit };
    Kind kind = Kind::gaussian_closed_form;
    std::vector<double> cov; // gaussian case, built on the scenario grid
    LimitFddSpec limit;      // sampled case
    std::size_t ref_reps = 5000;
    std::string label;
};

/// Build the matching limit reference from the scenario's mixing
/// parameter and catalog analytics.
ReferenceSpec derive_reference(const Scenario& sc);

/// Covariance of the limit of the thm21-normalized statistic on the grid
/// (finite-variance stable part requires alpha = 2).
std::vector<double> thm21_limit_cov(const Scenario& sc, double p);

struct StudyRow {
    double t = 0.0;
    std::string statistic;
    double value = 0.0;
    double target = 0.0;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<VerificationReport> reports; // one per t
    std::vector<double> t_list;
    bool trend_ok = false;
    bool final_ok = false;
};

struct StudyOptions {
    CompareOptions compare;
    double final_gap_threshold = 0.10;
    double trend_slack = 0.0; // extra allowance on top of monotone decrease
    /// Indicator responses make Y integer-valued; smooth the lattice of
    /// width 1/scale before marginal KS comparisons.
    bool auto_lattice = true;
};

/// Run the scenario at each t, compare against the reference, and track
/// the primary distance (CF sup-gap) along the ladder.
StudyResult convergence_study(const Scenario& base, const std::vector<double>& t_list,
                              const ReferenceSpec& ref, const StudyOptions& opt = {});

/// Plot-ready CSV: t,statistic,value,target.
void write_trend_csv(std::ostream& os, const StudyResult& study);

} // namespace renimm

#endif
