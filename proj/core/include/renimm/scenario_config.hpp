#ifndef RENIMM_SCENARIO_CONFIG_HPP
#define RENIMM_SCENARIO_CONFIG_HPP

#include <map>
#include <string>

#include "renimm/immigration.hpp"

namespace renimm {

/// Flat key=value scenario description. Recognized keys:
///   law.kind, law.rate, law.alpha, law.x_min, law.m, law.s, law.value
///   model.id, model.eta_kind, model.eta_a, model.eta_b, model.beta,
///   model.a, model.rho, model.coef, model.noise_kind, model.noise_sd,
///   model.coupling, model.kappa
///   case, norm, u_grid, t, reps
/// Unknown keys are rejected.
using KeyValueMap = std::map<std::string, std::string>;

/// Parse `key=value` lines; '#' starts a comment; blank lines ignored.
KeyValueMap parse_config_text(const std::string& text);

/// Apply `key=value` override strings on top of a parsed map.
void apply_overrides(KeyValueMap& kv, const std::vector<std::string>& overrides);

/// Build a validated Scenario (seed/reps/jobs may come from the map or
/// be filled by the caller afterwards).
Scenario scenario_from_config(const KeyValueMap& kv);

/// Resolved scenario as a key=value map (manifest content).
KeyValueMap scenario_to_config(const Scenario& sc);

} // namespace renimm

#endif
