#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "evoman/bosses.hpp"
#include "evoman/evolution.hpp"
#include "evoman/server.hpp"
#include "evoman/state.hpp"

namespace evoman::cli {

inline constexpr int kRunConfigVersion = 1;
inline constexpr const char* kConfigEnv = "EVOMAN_CONFIG";

struct EvalSettings {
  int repetitions = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool operator==(const EvalSettings&) const = default;
};

struct ServerSettings {
  std::string bind_address = "127.0.0.1";
  std::uint16_t port = kDefaultPort;
  std::int64_t action_timeout_ms = 30000;  // 0 disables
  bool operator==(const ServerSettings&) const = default;
};

struct OutputPaths {
  std::string genome = "best_genome.json";
  std::string history = "history.jsonl";
  std::string report = "report.json";
  std::string replay = "match.evr";
  bool operator==(const OutputPaths&) const = default;
};

/// Everything a command needs. Built from defaults, then the config file,
/// then command-line flags.
struct RunConfig {
  MatchConfig match;
  EvoConfig evolution;
  int hidden = 10;
  Roster roster = default_roster();
  EvalSettings eval;
  ServerSettings server;
  OutputPaths output;
};

nlohmann::ordered_json to_json(const RunConfig& config);

/// Overrides `base` with the keys of `doc`. Unknown keys and invalid values
/// throw std::invalid_argument.
RunConfig run_config_from_json(const nlohmann::json& doc, const RunConfig& base = {});

/// Reads a config file. Throws std::invalid_argument with the path in the
/// message on I/O or syntax errors.
RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base = {});

EvoModeKind mode_from_string(const std::string& s);
std::string_view to_string(EvoModeKind kind);

}  // namespace evoman::cli
