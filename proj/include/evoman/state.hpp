#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

#include "evoman/fixed.hpp"

namespace evoman {

inline constexpr std::size_t kEnemyBulletSlots = 8;
inline constexpr std::size_t kPlayerBulletSlots = 4;
inline constexpr std::size_t kBulletSlots = kEnemyBulletSlots + kPlayerBulletSlots;
inline constexpr std::int32_t kMaxEnergy = 100;
inline constexpr int kBossCount = 8;

/// Tunables of a match. Distances and speeds are Fixed (pixels, pixels/tick,
/// pixels/tick^2); durations are ticks.
struct MatchConfig {
  std::int32_t damage_per_hit = 1;
  std::int32_t max_ticks = 3000;
  std::int32_t ticks_per_second = 30;  // documentation only, the sim is tick based

  std::int32_t arena_width = 736;
  std::int32_t arena_height = 512;
  std::int32_t floor_y = 480;

  Fixed gravity = Fixed::from_raw(256);
  Fixed max_fall_speed = Fixed::from_px(12);
  Fixed player_speed = Fixed::from_px(4);
  Fixed player_jump_impulse = Fixed::from_px(12);
  Fixed player_bullet_speed = Fixed::from_px(10);
  Fixed player_half_width = Fixed::from_px(12);
  Fixed player_half_height = Fixed::from_px(16);
  Fixed player_spawn_x = Fixed::from_px(64);
  Fixed bullet_half_size = Fixed::from_px(4);

  std::int32_t shoot_cooldown_ticks = 6;
  std::int32_t contact_iframe_ticks = 15;
  std::int32_t player_hit_iframe_ticks = 0;
  std::int32_t enemy_hit_iframe_ticks = 0;

  Fixed arena_w() const { return Fixed::from_px(arena_width); }
  Fixed arena_h() const { return Fixed::from_px(arena_height); }
  Fixed floor() const { return Fixed::from_px(floor_y); }

  bool operator==(const MatchConfig&) const = default;
};

/// Throws std::invalid_argument when a field is outside its documented range.
void validate(const MatchConfig& config);

struct ActionSet {
  bool left = false;
  bool right = false;
  bool jump = false;
  bool shoot = false;
  bool release = false;

  bool operator==(const ActionSet&) const = default;
};

/// Left and right exchanged; everything else kept.
constexpr ActionSet mirrored(ActionSet a) {
  std::swap(a.left, a.right);
  return a;
}

struct EntityState {
  Fixed pos_x, pos_y;
  Fixed vel_x, vel_y;
  std::int8_t facing = 1;  // -1 left, +1 right
  Fixed width, height;     // AABB half-extents
  bool grounded = false;

  bool operator==(const EntityState&) const = default;
};

enum class Owner : std::uint8_t { Player = 0, Enemy = 1 };

struct Bullet {
  Owner owner = Owner::Enemy;
  Fixed pos_x, pos_y;
  Fixed vel_x, vel_y;
  bool alive = false;

  bool operator==(const Bullet&) const = default;
};

/// Per-archetype behavior state. `target_x` is an absolute x coordinate and
/// is reflected by mirror_state; `target_y` is not.
struct BossFsmState {
  std::uint8_t phase = 0;
  std::uint32_t phase_timer = 0;
  std::uint32_t burst_counter = 0;
  Fixed target_x, target_y;

  bool operator==(const BossFsmState&) const = default;
};

enum class Outcome : std::uint8_t { Ongoing = 0, PlayerWon = 1, EnemyWon = 2, Timeout = 3 };

std::string_view to_string(Outcome o);
/// Inverse of to_string; throws std::invalid_argument.
Outcome outcome_from_string(std::string_view s);

/// Complete world snapshot. Slots [0, 8) hold enemy bullets and [8, 12)
/// player bullets.
///
/// `input_digest` chains every applied action into the state; the final state
/// hash commits to the whole input stream. Left and right fold into a single
/// press count (mirror invariant).
struct SimState {
  std::uint32_t tick = 0;
  EntityState player;
  EntityState enemy;
  std::array<Bullet, kBulletSlots> bullets{};
  std::int32_t player_energy = kMaxEnergy;
  std::int32_t enemy_energy = kMaxEnergy;
  std::uint32_t player_iframes = 0;
  std::uint32_t enemy_iframes = 0;
  std::uint32_t shoot_cooldown = 0;
  BossFsmState boss_fsm;
  std::uint64_t rng = 0;
  std::uint8_t boss_id = 1;
  Outcome outcome = Outcome::Ongoing;
  std::uint64_t input_digest = 0;

  std::size_t alive_enemy_bullets() const;

  bool operator==(const SimState&) const = default;
};

}  // namespace evoman
