#pragma once

#include <cstdint>
#include <vector>

#include "evoman/bosses.hpp"
#include "evoman/state.hpp"

namespace evoman {

/// Axis-aligned box given by center and half-extents.
struct Box {
  Fixed cx, cy;
  Fixed half_w, half_h;
};

Box box_of(const EntityState& e);
Box box_of(const Bullet& b, const MatchConfig& config);

/// Closed-interval overlap: boxes touching along an edge intersect.
constexpr bool aabb_overlap(const Box& a, const Box& b) {
  return abs(a.cx - b.cx) <= a.half_w + b.half_w && abs(a.cy - b.cy) <= a.half_h + b.half_h;
}

/// Fresh match: both energies at 100, player at the left spawn point, boss
/// at its archetype spawn. Throws std::invalid_argument for boss ids outside
/// 1..8 or an invalid config.
SimState new_match(int boss_id, const MatchConfig& config, std::uint64_t seed,
                   const Roster& roster = default_roster());

/// Advances one tick. Phase order:
///   0. timers, input digest
///   1. boss FSM
///   2. player kinematics
///   3. enemy kinematics
///   4. bullet integration and culling
///   5. bullet spawns (player cooldown, 8 enemy slots)
///   6. collisions and damage
///   7. outcome (simultaneous zero resolves to EnemyWon)
/// Throws IllegalStateError if the match is already over.
SimState step(const SimState& state, const ActionSet& action, const MatchConfig& config,
              const Roster& roster = default_roster());

/// Little-endian serialization hashed by state_hash. The layout is the
/// normative table in docs/state_hash.md.
std::vector<std::uint8_t> canonical_bytes(const SimState& state);

/// FNV-1a 64 over canonical_bytes.
std::uint64_t state_hash(const SimState& state);

/// Reflects every x coordinate about the arena centerline and negates
/// x-velocities and facings.
SimState mirror_state(const SimState& state, const MatchConfig& config);

}  // namespace evoman
