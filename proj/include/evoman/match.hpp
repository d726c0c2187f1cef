#pragma once

#include <cstdint>
#include <functional>

#include "evoman/bosses.hpp"
#include "evoman/controllers.hpp"
#include "evoman/sim.hpp"

namespace evoman {

struct MatchResult {
  int boss_id = 1;
  std::int32_t player_energy = 0;  // ep
  std::int32_t enemy_energy = 0;   // ee
  Outcome outcome = Outcome::Ongoing;
  std::uint32_t ticks = 0;
  std::uint64_t state_hash = 0;
  std::uint64_t seed = 0;

  bool operator==(const MatchResult&) const = default;
};

/// Called after every step with the pre-step state, the applied action and
/// the successor.
using TickObserver = std::function<void(const SimState& before, const ActionSet& action, const SimState& after)>;

/// Plays one match to completion. Any exception raised by the controller is
/// rethrown as MatchAbortError.
MatchResult run_match(Controller& controller, int boss_id, const MatchConfig& config, std::uint64_t seed,
                      const Roster& roster = default_roster(), const TickObserver& observer = {});

}  // namespace evoman
