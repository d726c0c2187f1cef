#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evoman/state.hpp"

namespace evoman {

enum class Archetype : std::uint8_t {
  Rusher = 1,      // walks at the player, periodic lunge
  Hopper = 2,      // arc jumps toward the player, fires at the apex
  Gunner = 3,      // stationary, horizontal bursts
  Rainer = 4,      // relocates, drops falling bullets
  Tracker = 5,     // fires at the player's current position
  Zigzag = 6,      // oscillating approach, diagonal bullets
  Shielder = 7,    // invulnerable while shielded, radial spread when open
  Teleporter = 8,  // jumps to the far side of the player, then bursts
};

std::string_view to_string(Archetype a);
Archetype archetype_from_string(std::string_view s);

/// Parameters of one boss. The meaning of the generic fields depends on the
/// archetype; see the table in docs/bosses.md.
struct BossSpec {
  int boss_id = 1;
  Archetype archetype = Archetype::Rusher;
  std::string name;
  Fixed half_width = Fixed::from_px(20);
  Fixed half_height = Fixed::from_px(24);
  Fixed spawn_x = Fixed::from_px(656);
  Fixed move_speed{};
  Fixed dash_speed{};
  Fixed jump_impulse{};
  Fixed bullet_speed{};
  Fixed spread{};  // spacing between pattern bullets, or a velocity offset
  Fixed range{};   // preferred distance / relocation radius
  std::int32_t cooldown_ticks = 30;
  std::int32_t phase_ticks = 30;
  std::int32_t burst_size = 1;
  std::int32_t burst_interval = 1;

  bool operator==(const BossSpec&) const = default;
};

/// Throws std::invalid_argument if a cooldown is < 1 tick or a burst would
/// not fit in the enemy bullet slots.
void validate(const BossSpec& spec);

inline constexpr std::string_view kRosterVersion = "archetypes-v1";

struct Roster {
  std::string version{kRosterVersion};
  std::array<BossSpec, kBossCount> specs;

  /// Throws std::invalid_argument for ids outside 1..8.
  const BossSpec& at(int boss_id) const;

  bool operator==(const Roster&) const = default;
};

/// The built-in eight archetypes, ids 1..8.
const Roster& default_roster();
std::vector<BossSpec> boss_roster();

struct SpawnRequest {
  Fixed pos_x, pos_y;
  Fixed vel_x, vel_y;

  bool operator==(const SpawnRequest&) const = default;
};

/// Output of one FSM tick.
struct BossStep {
  ActionSet action;
  Fixed move_speed{};
  Fixed jump_impulse{};
  std::int8_t facing = -1;
  bool teleport = false;
  Fixed teleport_x;
  bool shielded = false;
  std::vector<SpawnRequest> spawns;  // already capped to the free enemy slots
  BossFsmState next;
  std::uint64_t rng = 0;

  bool operator==(const BossStep&) const = default;
};

/// Pure FSM transition for the boss in `state`. Positional logic is relative
/// to the player; a mirrored input gives the mirrored output. Randomness
/// comes from `state.rng`; the advanced generator is returned in `rng`.
BossStep advance_boss(const BossSpec& spec, const BossFsmState& fsm, const SimState& state);

/// Convenience overload resolving `state.boss_id` in `roster`.
BossStep advance_boss(const Roster& roster, const SimState& state);

/// Keeps the newest requests that fit alongside `alive` enemy bullets.
std::vector<SpawnRequest> cap_spawns(std::vector<SpawnRequest> requests, std::size_t alive);

}  // namespace evoman
