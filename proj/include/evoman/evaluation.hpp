#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evoman/match.hpp"

namespace evoman {

inline constexpr double kGainOffset = 100.01;
inline constexpr double kMinGain = kGainOffset - kMaxEnergy;  // 0.01
inline constexpr double kMaxGain = kGainOffset + kMaxEnergy;  // 200.01

/// 100.01 + ep - ee. Throws std::invalid_argument unless ep, ee in [0, 100].
double gain(double ep, double ee);
double gain(const MatchResult& r);

/// n / sum(1/v). Throws std::domain_error for an empty list or any v <= 0.
double harmonic_mean(std::span<const double> values);
/// Throws std::domain_error for an empty list.
double arithmetic_mean(std::span<const double> values);

struct BossGain {
  int boss_id = 1;
  double mean_gain = 0.0;
  int wins = 0;  // repetitions that ended with ee = 0

  bool operator==(const BossGain&) const = default;
};

/// One agent's results over the gauntlet, shaped like one column of the
/// baseline table.
struct GainReport {
  std::string agent_name;
  std::string roster_version{kRosterVersion};
  int repetitions = 1;
  std::vector<BossGain> per_boss;
  double harmonic_mean = 0.0;

  /// Bosses whose mean enemy energy is zero, i.e. won in every repetition.
  int wins() const;
  std::vector<double> gains() const;

  bool operator==(const GainReport&) const = default;
};

/// Builds a report from fixed per-boss gains (boss ids 1..n in order).
GainReport make_report(std::string agent_name, std::span<const double> per_boss_gains, int repetitions = 1);

/// Seed of repetition `rep` against `boss_id` for an evaluation seeded with `seed`.
std::uint64_t evaluation_seed(std::uint64_t seed, int boss_id, int repetition);

struct EvalOptions {
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::string agent_name = "agent";
  unsigned threads = 0;  // 0 = hardware concurrency; ignored for non-shareable controllers
  std::vector<int> bosses{1, 2, 3, 4, 5, 6, 7, 8};
};

/// Runs `repetitions` matches against each boss and aggregates per boss
/// first, then takes the harmonic mean across bosses in boss order.
GainReport evaluate_all(Controller& controller, const MatchConfig& config, const EvalOptions& options,
                        const Roster& roster = default_roster());

/// Text table with one row per boss plus a final "Mean" row holding the
/// harmonic mean; one column per report, values to 2 decimals.
std::string render_report(std::span<const GainReport> reports);

nlohmann::ordered_json report_to_json(const GainReport& report);
/// Throws ParseError.
GainReport report_from_json(const nlohmann::json& doc);
void save_report(const GainReport& report, const std::filesystem::path& path);
GainReport load_report(const std::filesystem::path& path);

}  // namespace evoman
