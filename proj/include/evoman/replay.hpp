#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evoman/match.hpp"

namespace evoman {

inline constexpr int kReplayFormatVersion = 1;
inline constexpr std::string_view kReplayExtension = ".evr";
inline constexpr std::string_view kHumanAgent = "human";

/// FNV-1a over the canonical JSON of the match config and the roster.
std::uint64_t config_digest(const MatchConfig& config, const Roster& roster = default_roster());

struct ReplayHeader {
  int format_version = kReplayFormatVersion;
  std::string roster_version{kRosterVersion};
  int boss_id = 1;
  std::uint64_t seed = 0;
  std::uint64_t config_digest = 0;
  std::string agent{kHumanAgent};  // genome digest (hex) or "human"

  bool operator==(const ReplayHeader&) const = default;
};

struct ReplayTrailer {
  std::int32_t player_energy = 0;
  std::int32_t enemy_energy = 0;
  Outcome outcome = Outcome::Ongoing;
  std::uint64_t state_hash = 0;

  bool operator==(const ReplayTrailer&) const = default;
};

/// Seed, config identity and the per-tick action log of one match. Action
/// i was applied at tick i.
struct Replay {
  ReplayHeader header;
  std::vector<ActionSet> actions;
  ReplayTrailer trailer;

  bool operator==(const Replay&) const = default;
};

struct RecordedMatch {
  Replay replay;
  MatchResult result;
};

/// Plays a match and records it.
RecordedMatch record_replay(Controller& controller, int boss_id, const MatchConfig& config, std::uint64_t seed,
                            std::string agent = std::string(kHumanAgent), const Roster& roster = default_roster());

/// Line-delimited text: header line, one line per action, trailer line.
std::string write_replay(const Replay& replay);
/// Throws ParseError naming the 1-based line for version mismatches, tick
/// gaps, malformed lines and trailing garbage.
Replay read_replay(std::string_view text);

void save_replay(const Replay& replay, const std::filesystem::path& path);
Replay load_replay(const std::filesystem::path& path);

enum class VerifyStatus { Verified, HashMismatch, ConfigMismatch };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Verified;
  std::optional<std::uint32_t> tick;  // set when the action log and the simulation disagree on length
  std::string detail;

  bool ok() const { return status == VerifyStatus::Verified; }
};

std::string_view to_string(VerifyStatus s);

/// Re-simulates from the header seed with the recorded actions and compares
/// the final hash, energies and outcome with the trailer.
VerifyResult verify_replay(const Replay& replay, const MatchConfig& config, const Roster& roster = default_roster());

/// Structured export for the replay viewer: header, one wire State message
/// per tick (re-simulated), trailer and gain. Throws IllegalStateError if
/// the replay does not verify.
nlohmann::ordered_json export_replay_json(const Replay& replay, const MatchConfig& config,
                                          const Roster& roster = default_roster());

}  // namespace evoman
