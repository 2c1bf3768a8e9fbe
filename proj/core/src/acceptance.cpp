#include "renimm/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "renimm/asymptotics.hpp"
#include "renimm/parallel.hpp"
#include "renimm/special.hpp"
#include "renimm/verification.hpp"

namespace renimm {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct Ctx {
    StreamSeed seed;
    unsigned jobs = 0;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// --- criterion 1: inverse-subordinator mean --------------------------------

CriterionResult criterion_inverse_mean(const Ctx& ctx) {
    CriterionResult res{1, "inverse-subordinator mean", false, 0.0, 30.0, ""};
    const double target = 2.0 / kPi;

    const std::size_t n_marginal = 1'000'000;
    std::vector<double> marginal(n_marginal);
    parallel_for(n_marginal, ctx.jobs, [&](std::size_t i) {
        Stream stream(derive_stream(derive_stream(ctx.seed, 0), i));
        marginal[i] = sample_inverse_marginal(0.5, 1.0, stream);
    });
    const double marginal_mean = mean_of(marginal);

    const std::size_t n_paths = 10'000;
    std::vector<double> inverted(n_paths);
    parallel_for(n_paths, ctx.jobs, [&](std::size_t i) {
        Stream stream(derive_stream(derive_stream(ctx.seed, 1), i));
        const GridPath path = simulate_subordinator_exceeding(0.5, 1.0, 1u << 14, stream);
        const double s = 1.0;
        inverted[i] = invert_subordinator(path, std::span<const double>(&s, 1))[0];
    });
    const double path_mean = mean_of(inverted);

    const double gap_marginal = std::abs(marginal_mean / target - 1.0);
    const double gap_path = std::abs(path_mean / target - 1.0);
    res.pass = gap_marginal < 0.01 && gap_path < 0.05;
    res.details = fmt("marginal mean %.5f (gap %.2f%%), ", marginal_mean, 100.0 * gap_marginal) +
                  fmt("path mean %.5f (gap %.2f%%), target 0.63662", path_mean, 100.0 * gap_path);
    return res;
}

// --- criterion 2: sampler cross-validation ---------------------------------

CriterionResult criterion_sampler_crossval(const Ctx& ctx) {
    CriterionResult res{2, "inverse-sampler cross-validation (KS)", false, 0.0, 60.0, ""};
    const std::size_t n = 10'000;
    std::vector<double> a(n), b(n);
    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        Stream s1(derive_stream(derive_stream(ctx.seed, 0), i));
        const GridPath path = simulate_subordinator_exceeding(0.5, 1.0, 1u << 14, s1);
        const double lvl = 1.0;
        a[i] = invert_subordinator(path, std::span<const double>(&lvl, 1))[0];
        Stream s2(derive_stream(derive_stream(ctx.seed, 1), i));
        b[i] = sample_inverse_marginal(0.5, 1.0, s2);
    });
    const double d = ks_statistic(a, b);
    const double p = ks_p_value(d, n, n);
    res.pass = p > 0.01;
    res.details = fmt("two-sample KS D=%.5f p=%.4f (need p>0.01)", d, p);
    return res;
}

// --- criterion 3: Z second moment -------------------------------------------

CriterionResult criterion_z_variance(const Ctx& ctx) {
    CriterionResult res{3, "Z second moment", false, 0.0, 90.0, ""};
    const struct {
        double alpha, beta, u;
    } cases[] = {{0.5, 0.0, 1.0}, {0.5, 0.5, 1.0}, {0.7, -0.3, 2.0}};
    bool ok = true;
    std::string details;
    int idx = 0;
    for (const auto& c : cases) {
        const CovarianceModel C{CovarianceModel::Form::max_power, c.beta};
        ZOptions opt;
        opt.n_steps = 4096;
        opt.jobs = ctx.jobs;
        const FddSample z =
            sample_Z(c.alpha, C, {c.u}, 10'000, derive_stream(ctx.seed, idx), opt);
        double m2 = 0.0;
        for (double v : z.values) m2 += v * v;
        m2 /= static_cast<double>(z.values.size());
        const double target = z_second_moment(c.alpha, c.beta, c.u);
        const double gap = std::abs(m2 / target - 1.0);
        ok = ok && gap < 0.05;
        details += fmt("(a=%.1f,b=%.1f", c.alpha, c.beta) + fmt(",u=%.0f): ", c.u) +
                   fmt("%.4f vs %.4f (gap %.1f%%); ", m2, target, 100.0 * gap);
        ++idx;
    }
    res.pass = ok;
    res.details = details;
    return res;
}

// --- criterion 4: Q integral mean -------------------------------------------

CriterionResult criterion_q_mean(const Ctx& ctx) {
    CriterionResult res{4, "Q-integral mean", false, 0.0, 30.0, ""};
    const std::size_t n = 10'000;
    std::vector<double> q(n);
    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        Stream stream(derive_stream(derive_stream(ctx.seed, 0), i));
        const GridPath path = simulate_subordinator_exceeding(0.5, 1.0, 4096, stream);
        q[i] = fractional_integral_inverse(0.5, 1.0, {1.0}, path)[0];
    });
    const double m = mean_of(q);
    const double target = q_integral_mean(0.5, 1.0, 1.0); // 4/(3 pi)
    const double gap = std::abs(m / target - 1.0);
    res.pass = gap < 0.05;
    res.details = fmt("mean %.5f vs %.5f (gap %.2f%%)", m, target, 100.0 * gap);
    return res;
}

// --- criterion 5: survival-indicator scenario, p = 0 ------------------------

CriterionResult criterion_survival_gaussian(const Ctx& ctx) {
    CriterionResult res{5, "survival indicator -> Gaussian limit (p=0)", false, 0.0, 180.0, ""};
    Scenario sc;
    sc.law = IncrementLaw::exponential(1.0);
    sc.model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
    sc.kase = TheoremCase::thm21;
    sc.norm = NormVariant::example_display;
    sc.u_grid = {0.5, 1.0, 2.0};
    sc.reps = 10'000;
    sc.jobs = ctx.jobs;
    sc.seed = derive_stream(ctx.seed, 0);

    const std::vector<double> cov = v_cov_matrix(sc.model.cov_model(), sc.u_grid);
    const std::size_t m = sc.u_grid.size();

    double max_gap_prev = 0.0, max_gap_final = 0.0;
    bool entries_ok = true, ks_ok = true;
    std::string details;
    const double ts[2] = {100.0, 1000.0};
    for (int step = 0; step < 2; ++step) {
        sc.t = ts[step];
        sc.seed = derive_stream(ctx.seed, step);
        const FddSample sample = normalized_fdd_sample(sc);
        double max_gap = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                const double emp = i == j ? sample.col_variance(i) : sample.cov(i, j);
                const double gap = std::abs(emp / cov[i * m + j] - 1.0);
                max_gap = std::max(max_gap, gap);
                if (step == 1 && gap >= 0.10) entries_ok = false;
            }
        if (step == 0) max_gap_prev = max_gap;
        else max_gap_final = max_gap;
        if (step == 1) {
            // indicator sums are integer counts: the statistic lives on a
            // lattice of width 1/scale, smoothed out before the KS test.
            // The zero-epoch immigrant shifts the finite-t mean by exactly
            // h(ut)/scale (closed-form renewal function of the exponential
            // law); the KS reference carries that known mean.
            const double scale = normalization_scale(sc);
            const double delta = 1.0 / scale;
            Stream dstream(derive_stream(ctx.seed, 5));
            for (std::size_t j = 0; j < m; ++j) {
                const auto col = dither_lattice(sample.column(j), delta, dstream);
                const double exact_mean = sc.model.h(sc.u_grid[j] * sc.t) / scale;
                const double d =
                    ks_statistic_normal(col, exact_mean, std::sqrt(cov[j * m + j]));
                const double p = ks_p_value(d, col.size());
                if (p <= 0.01) ks_ok = false;
                details += fmt("ks_p(u=%.1f)=%.3f ", sc.u_grid[j], p);
            }
        }
    }
    const bool decreasing = max_gap_final < max_gap_prev;
    res.pass = entries_ok && ks_ok && decreasing;
    res.details = fmt("max cov gap %.1f%% (t=100) -> %.1f%% (t=1000); ", 100.0 * max_gap_prev,
                      100.0 * max_gap_final) +
                  details + (decreasing ? "" : "[gap not decreasing] ") +
                  (entries_ok ? "" : "[entry above 10%] ");
    return res;
}

// --- criterion 6: hit indicator -> Brownian (p=1) ----------------------------

CriterionResult criterion_hit_brownian(const Ctx& ctx) {
    CriterionResult res{6, "hit indicator -> Brownian limit (p=1)", false, 0.0, 120.0, ""};
    Scenario sc;
    sc.law = IncrementLaw::exponential(1.0);
    sc.model = ResponseModel::indicator_hit(EtaLaw::exponential(1.0));
    sc.kase = TheoremCase::thm21;
    sc.u_grid = {0.5, 1.0};
    sc.t = 1000.0;
    sc.reps = 10'000;
    sc.jobs = ctx.jobs;
    sc.seed = derive_stream(ctx.seed, 0);
    const FddSample sample = normalized_fdd_sample(sc);
    bool ok = true;
    std::string details;
    // hit counts are integers (lattice width 1/scale) and the zero-epoch
    // immigrant contributes the exactly-known finite-t mean h(ut)/scale
    const double scale = normalization_scale(sc);
    const double delta = 1.0 / scale;
    Stream dstream(derive_stream(ctx.seed, 5));
    for (std::size_t j = 0; j < sc.u_grid.size(); ++j) {
        const double target = sc.u_grid[j]; // Var S_2(u) = u (mu = 1)
        const double var = sample.col_variance(j);
        const double gap = std::abs(var / target - 1.0);
        const auto col = dither_lattice(sample.column(j), delta, dstream);
        const double exact_mean = sc.model.h(sc.u_grid[j] * sc.t) / scale;
        const double d = ks_statistic_normal(col, exact_mean, std::sqrt(target));
        const double p = ks_p_value(d, col.size());
        ok = ok && gap < 0.10 && p > 0.01;
        details += fmt("u=%.1f: var %.3f ", sc.u_grid[j], var) +
                   fmt("(gap %.1f%%) ks_p=%.3f; ", 100.0 * gap, p);
    }
    res.pass = ok;
    res.details = details;
    return res;
}

// --- criterion 7: first-passage limits ---------------------------------------

CriterionResult criterion_flt_endpoints(const Ctx& ctx) {
    CriterionResult res{7, "first-passage limit endpoints", false, 0.0, 120.0, ""};
    const std::size_t n = 2000;

    // finite variance: (nu(t) - t/mu)/(mu^{-3/2} c(t)) vs N(0,1)
    const IncrementLaw exp_law = IncrementLaw::exponential(1.0);
    const double t1 = 1e4;
    std::vector<double> norm_stat(n);
    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        Stream stream(derive_stream(derive_stream(ctx.seed, 0), i));
        const RenewalPath path = simulate_walk(exp_law, t1, stream);
        const double nu = static_cast<double>(path.first_passage(t1));
        norm_stat[i] = (nu - t1 / exp_law.mu()) /
                       (std::pow(exp_law.mu(), -1.5) * exp_law.norming_c(t1));
    });
    const double d1 = ks_statistic_normal(norm_stat, 0.0, 1.0);
    const double p1 = ks_p_value(d1, n);

    // infinite mean: P{xi>t} nu(t) vs the inverse-subordinator marginal;
    // the arrival count lives on a lattice of width P{xi>t}, dithered out
    const IncrementLaw par_law = IncrementLaw::pareto(0.5, 1.0);
    const double t2 = 1e3;
    std::vector<double> scaled(n), ref(n);
    parallel_for(n, ctx.jobs, [&](std::size_t i) {
        Stream stream(derive_stream(derive_stream(ctx.seed, 1), i));
        const RenewalPath path = simulate_walk(par_law, t2, stream);
        scaled[i] = par_law.survival(t2) * static_cast<double>(path.first_passage(t2));
        Stream mstream(derive_stream(derive_stream(ctx.seed, 2), i));
        ref[i] = sample_inverse_marginal(0.5, 1.0, mstream);
    });
    Stream dstream(derive_stream(ctx.seed, 3));
    const auto smoothed = dither_lattice(scaled, par_law.survival(t2), dstream);
    const double d2 = ks_statistic(smoothed, ref);
    const double p2 = ks_p_value(d2, n, n);

    res.pass = p1 > 0.01 && p2 > 0.01;
    res.details = fmt("gaussian endpoint p=%.3f, inverse endpoint p=%.3f (need >0.01)", p1, p2);
    return res;
}

// --- criterion 8: white-noise decorrelation ----------------------------------

CriterionResult criterion_white_noise(const Ctx& ctx) {
    CriterionResult res{8, "modulated-OU white noise decorrelation", false, 0.0, 120.0, ""};
    Scenario sc;
    sc.law = IncrementLaw::exponential(1.0);
    sc.model = ResponseModel::ou_modulated(-0.5);
    sc.kase = TheoremCase::prop21;
    sc.u_grid = {1.0, 2.0};
    sc.t = 500.0;
    sc.reps = 10'000;
    sc.jobs = ctx.jobs;
    sc.seed = derive_stream(ctx.seed, 0);
    const FddSample sample = normalized_fdd_sample(sc);
    const auto c1 = sample.column(0);
    const auto c2 = sample.column(1);
    const double corr = pearson_correlation(c1, c2);
    res.pass = std::abs(corr) < 0.05;
    res.details = fmt("corr(u=1,u=2) = %.4f (need |corr| < 0.05)", corr);
    return res;
}

// --- criterion 9: dependent mixture (q = 1/2) ---------------------------------

CriterionResult criterion_thm22_mixture(const Ctx& ctx) {
    CriterionResult res{9, "infinite-mean mixture (q=0.5)", false, 0.0, 240.0, ""};
    Scenario sc;
    sc.law = IncrementLaw::pareto(0.5, 1.0);
    sc.model = ResponseModel::noisy_h(-0.25, 1.0, EtaLaw::rademacher(1.0));
    sc.kase = TheoremCase::thm22;
    sc.u_grid = {0.5, 1.0, 2.0};
    sc.reps = 5000;
    sc.jobs = ctx.jobs;

    const MixingResult mix = sc.model.mixing_parameter(sc.law);

    LimitFddSpec spec;
    spec.kase = LimitFddSpec::Case::thm22_mix;
    spec.alpha = 0.5;
    spec.q = mix.value;
    spec.rho = -0.25;
    spec.C = CovarianceModel{CovarianceModel::Form::prod_power, 0.0};
    spec.u_grid = sc.u_grid;
    spec.n_steps = 4096;
    const FddSample limit =
        sample_limit_fdd(spec, 5000, derive_stream(ctx.seed, 10), ctx.jobs);

    CompareOptions copt;
    copt.seed = derive_stream(ctx.seed, 11);
    copt.jobs = ctx.jobs;
    copt.energy_cap = 2000;

    double gap_prev = 0.0, gap_final = 0.0, energy_p = 0.0;
    const double ts[2] = {100.0, 1000.0};
    for (int step = 0; step < 2; ++step) {
        sc.t = ts[step];
        sc.seed = derive_stream(ctx.seed, step);
        const FddSample emp = normalized_fdd_sample(sc);
        CompareOptions local = copt;
        local.run_energy = step == 1; // energy verdict pinned at the final t
        const VerificationReport report = compare_fdds(emp, limit, local);
        if (step == 0) gap_prev = report.cf_sup_gap;
        else {
            gap_final = report.cf_sup_gap;
            energy_p = report.energy->p_value;
        }
    }
    const bool decreasing = gap_final < gap_prev;
    res.pass = energy_p > 0.01 && decreasing;
    res.details = fmt("q=%.3f; ", mix.value) +
                  fmt("cf gap %.4f -> %.4f; ", gap_prev, gap_final) +
                  fmt("energy p=%.4f (need >0.01)", energy_p) +
                  (decreasing ? "" : " [gap not decreasing]");
    return res;
}

// --- criterion 10: renewal-calculus lemmas -----------------------------------

CriterionResult criterion_lemma_suite(const Ctx& ctx) {
    CriterionResult res{10, "regular-variation and renewal lemmas", false, 0.0, 120.0, ""};
    bool ok = true;
    std::string details;

    // Karamata ratio for pure powers at t = 1e6
    {
        const double r1 = karamata_ratio(FunctionSpec::power(2.0), 2.0, 1.0, 1e6);
        const double r2 = karamata_ratio(FunctionSpec::power(0.5), 0.5, 0.0, 1e6);
        ok = ok && std::abs(r1 - 1.0) < 0.02 && std::abs(r2 - 1.0) < 0.02;
        details += fmt("karamata %.4f / %.4f; ", r1, r2);
    }
    // windowed renewal asymptotics, exponential oracle U(t) = t + 1
    {
        const IncrementLaw law = IncrementLaw::exponential(1.0);
        const FunctionSpec phi = FunctionSpec::power(0.5);
        const double t = 1e4;
        const double ratio =
            sgibnev_ratio(phi, 0.5, law, 0.0, 1.0, t, 400, derive_stream(ctx.seed, 0));
        double se = 0.0;
        const double window =
            renewal_window_sum(phi, law, 0.0, 1.0, t, 400, derive_stream(ctx.seed, 0), &se);
        const double exact = std::sqrt(t) + (2.0 / 3.0) * std::pow(t, 1.5);
        const double half_ratio =
            sgibnev_ratio(phi, 0.5, law, 0.5, 1.0, t, 400, derive_stream(ctx.seed, 1));
        const bool exact_ok = std::abs(window - exact) < 3.0 * se;
        ok = ok && std::abs(ratio - 1.0) < 0.03 && std::abs(half_ratio - 1.0) < 0.03 && exact_ok;
        details += fmt("window ratio %.4f, half-window %.4f, ", ratio, half_ratio) +
                   fmt("oracle gap %.3g (3se=%.3g); ", std::abs(window - exact), 3.0 * se);
    }
    // infinite-mean renewal limit at t = 1e3
    {
        const IncrementLaw law = IncrementLaw::pareto(0.5, 1.0);
        const double c0 = infinite_mean_renewal_limit(FunctionSpec::power(0.0), 0.0, law, 1e3,
                                                      10'000, derive_stream(ctx.seed, 2));
        const double c1 = infinite_mean_renewal_limit(FunctionSpec::power(1.0), 1.0, law, 1e3,
                                                      10'000, derive_stream(ctx.seed, 3));
        const double t0 = infinite_mean_renewal_constant(0.5, 0.0); // 2/pi
        const double t1 = infinite_mean_renewal_constant(0.5, 1.0); // 4/(3 pi)
        ok = ok && std::abs(c0 / t0 - 1.0) < 0.10 && std::abs(c1 / t1 - 1.0) < 0.10;
        details += fmt("renewal-limit gamma=0: %.4f (target %.4f), ", c0, t0) +
                   fmt("gamma=1: %.4f (target %.4f)", c1, t1);
    }
    res.pass = ok;
    res.details = details;
    return res;
}

// --- criterion 11: structural properties --------------------------------------

CriterionResult criterion_property_suite(const Ctx& ctx) {
    CriterionResult res{11, "structural property suite", false, 0.0, 120.0, ""};
    bool ok = true;
    std::string details;

    // PSD of catalog limit-function matrices on grids of size 8
    {
        std::vector<double> grid(8);
        for (int i = 0; i < 8; ++i) grid[i] = 0.25 * (i + 1);
        const CovarianceModel cs[] = {{CovarianceModel::Form::max_power, -0.5},
                                      {CovarianceModel::Form::max_power, -0.25},
                                      {CovarianceModel::Form::prod_power, 1.0},
                                      {CovarianceModel::Form::prod_power, 0.0},
                                      {CovarianceModel::Form::fictitious, -0.5}};
        double worst = 0.0;
        for (const auto& C : cs) {
            std::vector<double> m(64);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) m[i * 8 + j] = C(grid[i], grid[j]);
            worst = std::min(worst, min_eigenvalue_sym(m, 8));
        }
        ok = ok && worst >= -1e-10;
        details += fmt("min C-eigenvalue %.2e; ", worst);
    }
    // pathwise decomposition identity, recomputed Y
    {
        Scenario sc;
        sc.law = IncrementLaw::exponential(1.0);
        sc.model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
        sc.kase = TheoremCase::thm21;
        sc.u_grid = {0.5, 1.0, 2.0};
        sc.t = 200.0;
        sc.reps = 1;
        sc.validate();
        double worst = 0.0;
        for (std::size_t r = 0; r < 25; ++r) {
            const StreamSeed rep = derive_stream(derive_stream(ctx.seed, 1), r);
            const PathValues pv = decompose(sc, rep);
            const std::vector<double> y = simulate_Y(sc, rep);
            for (std::size_t j = 0; j < y.size(); ++j) {
                const double rel = std::abs(pv.mart[j] + pv.mean[j] - y[j]) /
                                   std::max(1.0, std::abs(y[j]));
                worst = std::max(worst, rel);
            }
        }
        ok = ok && worst <= 1e-10;
        details += fmt("decomposition residual %.2e; ", worst);
    }
    // monotone paths: subordinator, inverse, Q, and hit-indicator Y
    {
        Stream stream(derive_stream(ctx.seed, 2));
        const GridPath path = simulate_subordinator_exceeding(0.5, 2.0, 4096, stream);
        bool monotone = true;
        for (std::size_t i = 1; i < path.values.size(); ++i)
            monotone = monotone && path.values[i] >= path.values[i - 1];
        const std::vector<double> levels = {0.1, 0.5, 1.0, 1.5, 1.9};
        const auto inv = invert_subordinator(path, levels);
        for (std::size_t i = 1; i < inv.size(); ++i) monotone = monotone && inv[i] >= inv[i - 1];
        const std::vector<double> ugrid = {0.25, 0.5, 1.0, 1.5};
        const auto q = fractional_integral_inverse(0.5, 1.0, ugrid, path);
        for (std::size_t i = 1; i < q.size(); ++i) monotone = monotone && q[i] >= q[i - 1];

        Scenario sc;
        sc.law = IncrementLaw::exponential(1.0);
        sc.model = ResponseModel::indicator_hit(EtaLaw::exponential(1.0));
        sc.kase = TheoremCase::thm21;
        sc.u_grid = {0.5, 1.0, 1.5, 2.0};
        sc.t = 100.0;
        sc.reps = 1;
        sc.validate();
        for (std::size_t r = 0; r < 50; ++r) {
            const auto y = simulate_Y(sc, derive_stream(derive_stream(ctx.seed, 3), r));
            for (std::size_t j = 1; j < y.size(); ++j) monotone = monotone && y[j] >= y[j - 1];
        }
        ok = ok && monotone;
        details += monotone ? "paths monotone; " : "MONOTONICITY VIOLATED; ";
    }
    // bit-identical reruns, jobs-independence
    {
        Scenario sc;
        sc.law = IncrementLaw::exponential(1.0);
        sc.model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
        sc.kase = TheoremCase::thm21;
        sc.u_grid = {1.0, 2.0};
        sc.t = 100.0;
        sc.reps = 500;
        sc.seed = derive_stream(ctx.seed, 4);
        sc.jobs = 1;
        const FddSample s1 = normalized_fdd_sample(sc);
        sc.jobs = 2;
        const FddSample s2 = normalized_fdd_sample(sc);
        bool identical = s1.values == s2.values;
        LimitFddSpec spec;
        spec.kase = LimitFddSpec::Case::thm22_mix;
        spec.alpha = 0.5;
        spec.q = 0.5;
        spec.rho = -0.25;
        spec.C = CovarianceModel{CovarianceModel::Form::prod_power, 0.0};
        spec.u_grid = {0.5, 1.0};
        spec.n_steps = 512;
        const FddSample l1 = sample_limit_fdd(spec, 200, derive_stream(ctx.seed, 5), 1);
        const FddSample l2 = sample_limit_fdd(spec, 200, derive_stream(ctx.seed, 5), 2);
        identical = identical && l1.values == l2.values;
        ok = ok && identical;
        details += identical ? "reruns bit-identical; " : "REPRODUCIBILITY VIOLATED; ";
    }
    // KS null calibration
    {
        std::size_t below = 0;
        const std::size_t trials = 200, n = 500;
        std::vector<std::uint32_t> flags(trials, 0);
        parallel_for(trials, ctx.jobs, [&](std::size_t k) {
            Stream stream(derive_stream(derive_stream(ctx.seed, 6), k));
            std::vector<double> a(n), b(n);
            for (auto& x : a) x = stream.normal();
            for (auto& x : b) x = stream.normal();
            const double p = ks_p_value(ks_statistic(a, b), n, n);
            flags[k] = p < 0.05 ? 1 : 0;
        });
        for (auto f : flags) below += f;
        const double frac = static_cast<double>(below) / static_cast<double>(trials);
        ok = ok && frac >= 0.01 && frac <= 0.12;
        details += fmt("null KS rejection fraction %.3f (band [0.01,0.12])", frac);
    }
    res.pass = ok;
    res.details = details;
    return res;
}

} // namespace

bool AcceptanceSummary::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string AcceptanceSummary::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["all_pass"] = all_pass();
    j["criteria"] = nlohmann::json::array();
    for (const auto& r : results)
        j["criteria"].push_back({{"id", r.id},
                                 {"name", r.name},
                                 {"pass", r.pass},
                                 {"elapsed_s", r.elapsed_s},
                                 {"budget_s", r.budget_s},
                                 {"details", r.details}});
    return j.dump(2);
}

AcceptanceSummary run_acceptance_suite(const AcceptanceConfig& config, std::ostream* progress) {
    Ctx ctx;
    ctx.seed.root = config.seed;
    ctx.jobs = config.jobs;

    struct Entry {
        int id;
        const char* name;
        std::function<CriterionResult(const Ctx&)> fn;
    };
    const std::vector<Entry> criteria = {
        {1, "inverse-subordinator mean", criterion_inverse_mean},
        {2, "inverse-sampler cross-validation (KS)", criterion_sampler_crossval},
        {3, "Z second moment", criterion_z_variance},
        {4, "Q-integral mean", criterion_q_mean},
        {5, "survival indicator -> Gaussian limit (p=0)", criterion_survival_gaussian},
        {6, "hit indicator -> Brownian limit (p=1)", criterion_hit_brownian},
        {7, "first-passage limit endpoints", criterion_flt_endpoints},
        {8, "modulated-OU white noise decorrelation", criterion_white_noise},
        {9, "infinite-mean mixture (q=0.5)", criterion_thm22_mixture},
        {10, "regular-variation and renewal lemmas", criterion_lemma_suite},
        {11, "structural property suite", criterion_property_suite}};

    AcceptanceSummary summary;
    summary.seed = config.seed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!config.filter.empty() &&
            std::string(criteria[i].name).find(config.filter) == std::string::npos &&
            std::to_string(criteria[i].id) != config.filter)
            continue;
        Ctx local = ctx;
        local.seed = derive_stream(ctx.seed, 1000 + i);
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r = criteria[i].fn(local);
        r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.elapsed_s > r.budget_s) {
            r.pass = false;
            r.details += fmt(" [over budget: %.1fs > %.0fs]", r.elapsed_s, r.budget_s);
        }
        if (progress) {
            char line[512];
            std::snprintf(line, sizeof line, "[%2d] %s  %-42s (%6.1fs)  %s\n", r.id,
                          r.pass ? "PASS" : "FAIL", r.name.c_str(), r.elapsed_s,
                          r.details.c_str());
            (*progress) << line << std::flush;
        }
        summary.results.push_back(std::move(r));
    }
    return summary;
}

} // namespace renimm
