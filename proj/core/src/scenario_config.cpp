#include "renimm/scenario_config.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace renimm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

const std::set<std::string> kKnownKeys = {
    "law.kind", "law.rate",  "law.alpha",     "law.x_min",      "law.m",
    "law.s",    "law.value", "model.id",      "model.eta_kind", "model.eta_a",
    "model.eta_b", "model.beta", "model.a",   "model.rho",      "model.coef",
    "model.noise_kind", "model.noise_sd", "model.coupling", "model.kappa",
    "case",     "norm",      "u_grid",        "t",              "reps",
    "seed",     "jobs"};

double to_double(const KeyValueMap& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw parameter_error("scenario config: missing key " + key);
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw parameter_error("scenario config: bad numeric value for " + key);
    }
}

double to_double_or(const KeyValueMap& kv, const std::string& key, double fallback) {
    return kv.count(key) ? to_double(kv, key) : fallback;
}

std::string get(const KeyValueMap& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw parameter_error("scenario config: missing key " + key);
    return it->second;
}

EtaLaw eta_from_config(const KeyValueMap& kv, const std::string& kind_key,
                       const std::string& a_key, const std::string& b_key) {
    const std::string kind = get(kv, kind_key);
    if (kind == "pareto") return EtaLaw::pareto(to_double(kv, a_key), to_double_or(kv, b_key, 1.0));
    if (kind == "exponential") return EtaLaw::exponential(to_double(kv, a_key));
    if (kind == "deterministic") return EtaLaw::deterministic(to_double(kv, a_key));
    if (kind == "normal") return EtaLaw::normal(to_double(kv, a_key), to_double(kv, b_key));
    if (kind == "rademacher") return EtaLaw::rademacher(to_double(kv, a_key));
    throw parameter_error("scenario config: unknown eta kind '" + kind + "'");
}

} // namespace

KeyValueMap parse_config_text(const std::string& text) {
    KeyValueMap kv;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("scenario config: line " + std::to_string(lineno) +
                                  " is not key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw parameter_error("scenario config: unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

void apply_overrides(KeyValueMap& kv, const std::vector<std::string>& overrides) {
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw parameter_error("override must be key=value: " + ov);
        const std::string key = trim(ov.substr(0, eq));
        if (!kKnownKeys.count(key)) throw parameter_error("unknown override key '" + key + "'");
        kv[key] = trim(ov.substr(eq + 1));
    }
}

Scenario scenario_from_config(const KeyValueMap& kv) {
    for (const auto& [key, value] : kv)
        if (!kKnownKeys.count(key)) throw parameter_error("unknown key '" + key + "'");

    Scenario sc;
    const std::string law_kind = get(kv, "law.kind");
    if (law_kind == "exponential") {
        sc.law = IncrementLaw::exponential(to_double_or(kv, "law.rate", 1.0));
    } else if (law_kind == "pareto") {
        sc.law = IncrementLaw::pareto(to_double(kv, "law.alpha"), to_double_or(kv, "law.x_min", 1.0));
    } else if (law_kind == "lognormal") {
        sc.law = IncrementLaw::lognormal(to_double(kv, "law.m"), to_double(kv, "law.s"));
    } else if (law_kind == "deterministic") {
        sc.law = IncrementLaw::deterministic(to_double(kv, "law.value"));
    } else {
        throw parameter_error("scenario config: unknown law.kind '" + law_kind + "'");
    }

    const std::string coupling = kv.count("model.coupling") ? kv.at("model.coupling") : "independent";
    const CouplingMode mode = coupling == "coupled" ? CouplingMode::coupled
                              : coupling == "independent"
                                  ? CouplingMode::independent
                                  : throw parameter_error("model.coupling must be independent|coupled");
    const double kappa = to_double_or(kv, "model.kappa", 1.0);

    const std::string model_id = get(kv, "model.id");
    if (model_id == "indicator_survival") {
        sc.model = mode == CouplingMode::coupled
                       ? ResponseModel::indicator_survival(EtaLaw{}, mode, kappa)
                       : ResponseModel::indicator_survival(
                             eta_from_config(kv, "model.eta_kind", "model.eta_a", "model.eta_b"));
    } else if (model_id == "indicator_hit") {
        sc.model = mode == CouplingMode::coupled
                       ? ResponseModel::indicator_hit(EtaLaw{}, mode, kappa)
                       : ResponseModel::indicator_hit(
                             eta_from_config(kv, "model.eta_kind", "model.eta_a", "model.eta_b"));
    } else if (model_id == "scaled_variable") {
        sc.model = ResponseModel::scaled_variable(
            eta_from_config(kv, "model.eta_kind", "model.eta_a", "model.eta_b"),
            to_double(kv, "model.beta"));
    } else if (model_id == "ou_modulated") {
        sc.model = ResponseModel::ou_modulated(to_double(kv, "model.beta"));
    } else if (model_id == "shrinking_bm") {
        sc.model = ResponseModel::shrinking_bm(to_double(kv, "model.a"));
    } else if (model_id == "deterministic_h") {
        sc.model = ResponseModel::deterministic_h(to_double(kv, "model.rho"),
                                                  to_double_or(kv, "model.coef", 1.0));
    } else if (model_id == "noisy_h") {
        const std::string noise_kind = kv.count("model.noise_kind") ? kv.at("model.noise_kind")
                                                                    : "rademacher";
        const double sd = to_double_or(kv, "model.noise_sd", 1.0);
        const EtaLaw noise = noise_kind == "normal" ? EtaLaw::normal(0.0, sd)
                                                    : EtaLaw::rademacher(sd);
        sc.model = ResponseModel::noisy_h(to_double(kv, "model.rho"),
                                          to_double_or(kv, "model.coef", 1.0), noise);
    } else {
        throw parameter_error("scenario config: unknown model.id '" + model_id + "'");
    }

    const std::string case_str = get(kv, "case");
    if (case_str == "prop21") sc.kase = TheoremCase::prop21;
    else if (case_str == "prop22") sc.kase = TheoremCase::prop22;
    else if (case_str == "thm21") sc.kase = TheoremCase::thm21;
    else if (case_str == "thm22") sc.kase = TheoremCase::thm22;
    else throw parameter_error("scenario config: unknown case '" + case_str + "'");

    if (kv.count("norm")) {
        const std::string norm = kv.at("norm");
        if (norm == "printed") sc.norm = NormVariant::printed;
        else if (norm == "example_display") sc.norm = NormVariant::example_display;
        else throw parameter_error("scenario config: norm must be printed|example_display");
    }

    {
        std::istringstream is(get(kv, "u_grid"));
        std::string tok;
        sc.u_grid.clear();
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) sc.u_grid.push_back(std::stod(tok));
        }
    }
    sc.t = to_double(kv, "t");
    sc.reps = static_cast<std::size_t>(to_double(kv, "reps"));
    if (kv.count("seed")) sc.seed.root = static_cast<std::uint64_t>(std::stoull(kv.at("seed")));
    if (kv.count("jobs")) sc.jobs = static_cast<unsigned>(std::stoul(kv.at("jobs")));
    sc.validate();
    return sc;
}

KeyValueMap scenario_to_config(const Scenario& sc) {
    KeyValueMap kv;
    char buf[64];
    auto put = [&](const std::string& key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        kv[key] = buf;
    };
    switch (sc.law.kind()) {
    case LawKind::exponential:
        kv["law.kind"] = "exponential";
        put("law.rate", sc.law.param1());
        break;
    case LawKind::pareto:
        kv["law.kind"] = "pareto";
        put("law.alpha", sc.law.param1());
        put("law.x_min", sc.law.param2());
        break;
    case LawKind::lognormal:
        kv["law.kind"] = "lognormal";
        put("law.m", sc.law.param1());
        put("law.s", sc.law.param2());
        break;
    case LawKind::deterministic:
        kv["law.kind"] = "deterministic";
        put("law.value", sc.law.param1());
        break;
    }
    kv["model.id"] = [&] {
        switch (sc.model.id()) {
        case ModelId::indicator_survival: return "indicator_survival";
        case ModelId::indicator_hit: return "indicator_hit";
        case ModelId::scaled_variable: return "scaled_variable";
        case ModelId::ou_modulated: return "ou_modulated";
        case ModelId::shrinking_bm: return "shrinking_bm";
        case ModelId::deterministic_h: return "deterministic_h";
        case ModelId::noisy_h: return "noisy_h";
        }
        return "?";
    }();
    auto put_eta = [&](const char* kind_key, const char* a_key, const char* b_key) {
        const EtaLaw& eta = sc.model.eta();
        switch (eta.kind) {
        case EtaLaw::Kind::pareto: kv[kind_key] = "pareto"; break;
        case EtaLaw::Kind::exponential: kv[kind_key] = "exponential"; break;
        case EtaLaw::Kind::deterministic: kv[kind_key] = "deterministic"; break;
        case EtaLaw::Kind::normal: kv[kind_key] = "normal"; break;
        case EtaLaw::Kind::rademacher: kv[kind_key] = "rademacher"; break;
        case EtaLaw::Kind::scaled_xi: return; // carried by model.coupling/kappa
        }
        put(a_key, eta.a);
        put(b_key, eta.b);
    };
    switch (sc.model.id()) {
    case ModelId::indicator_survival:
    case ModelId::indicator_hit:
        if (sc.model.coupling() == CouplingMode::coupled) {
            kv["model.coupling"] = "coupled";
            put("model.kappa", sc.model.kappa());
        } else {
            put_eta("model.eta_kind", "model.eta_a", "model.eta_b");
        }
        break;
    case ModelId::scaled_variable:
        put_eta("model.eta_kind", "model.eta_a", "model.eta_b");
        put("model.beta", sc.model.beta());
        break;
    case ModelId::ou_modulated: put("model.beta", sc.model.beta()); break;
    case ModelId::shrinking_bm: put("model.a", sc.model.bm_exponent()); break;
    case ModelId::deterministic_h:
        put("model.rho", sc.model.rho());
        put("model.coef", sc.model.coef());
        break;
    case ModelId::noisy_h:
        put("model.rho", sc.model.rho());
        put("model.coef", sc.model.coef());
        kv["model.noise_kind"] =
            sc.model.eta().kind == EtaLaw::Kind::normal ? "normal" : "rademacher";
        put("model.noise_sd", sc.model.eta().kind == EtaLaw::Kind::normal
                                  ? sc.model.eta().b
                                  : sc.model.eta().a);
        break;
    }
    kv["case"] = case_name(sc.kase);
    kv["norm"] = sc.norm == NormVariant::printed ? "printed" : "example_display";
    {
        std::string grid;
        for (std::size_t i = 0; i < sc.u_grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", sc.u_grid[i]);
            grid += buf;
            if (i + 1 < sc.u_grid.size()) grid += ",";
        }
        kv["u_grid"] = grid;
    }
    put("t", sc.t);
    kv["reps"] = std::to_string(sc.reps);
    kv["seed"] = std::to_string(sc.seed.root);
    return kv;
}

} // namespace renimm
