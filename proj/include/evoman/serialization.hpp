#pragma once

#include <nlohmann/json.hpp>

#include "evoman/bosses.hpp"
#include "evoman/state.hpp"

namespace evoman {

// JSON forms of the match config and boss specs. Fixed values are written
// in pixels. Readers start from `base`, override the keys present and reject
// unknown keys with std::invalid_argument.

nlohmann::ordered_json to_json(const MatchConfig& config);
MatchConfig match_config_from_json(const nlohmann::json& doc, const MatchConfig& base = {});

nlohmann::ordered_json to_json(const BossSpec& spec);
BossSpec boss_spec_from_json(const nlohmann::json& doc, const BossSpec& base);

nlohmann::ordered_json to_json(const Roster& roster);
/// Accepts {"version": ..., "bosses": [ {boss_id, ...}, ... ]}; listed
/// bosses override the matching entries of `base`.
Roster roster_from_json(const nlohmann::json& doc, const Roster& base = default_roster());

}  // namespace evoman
