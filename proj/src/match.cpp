#include "evoman/match.hpp"

#include "evoman/errors.hpp"
#include "evoman/sensors.hpp"

namespace evoman {

MatchResult run_match(Controller& controller, int boss_id, const MatchConfig& config, std::uint64_t seed,
                      const Roster& roster, const TickObserver& observer) {
  SimState state = new_match(boss_id, config, seed, roster);
  while (state.outcome == Outcome::Ongoing) {
    ActionSet action;
    try {
      action = controller.act(state, extract_sensors(state));
    } catch (const MatchAbortError&) {
      throw;
    } catch (const std::exception& e) {
      throw MatchAbortError(std::string("controller failed at tick ") + std::to_string(state.tick) + ": " + e.what());
    }
    SimState next = step(state, action, config, roster);
    if (observer) observer(state, action, next);
    state = next;
  }
  return MatchResult{boss_id,     state.player_energy, state.enemy_energy, state.outcome,
                     state.tick, state_hash(state),    seed};
}

}  // namespace evoman
