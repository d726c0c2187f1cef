#pragma once

#include <array>
#include <cstddef>

#include "evoman/state.hpp"

namespace evoman {

inline constexpr std::size_t kSensorCount = 20;

/// Sensor index layout (shared with the wire protocol and the web UI):
///
///   0..15  (dx, dy) to enemy bullet slots 1..8, in slot order
///   16     dx to the enemy
///   17     dy to the enemy
///   18     player facing
///   19     enemy facing
///
/// Distances are target minus player, in pixels. Dead slots read 0.
namespace sensor_index {
inline constexpr std::size_t kBulletBase = 0;
inline constexpr std::size_t kEnemyDx = 16;
inline constexpr std::size_t kEnemyDy = 17;
inline constexpr std::size_t kPlayerFacing = 18;
inline constexpr std::size_t kEnemyFacing = 19;
constexpr std::size_t bullet_dx(std::size_t slot) { return 2 * slot; }
constexpr std::size_t bullet_dy(std::size_t slot) { return 2 * slot + 1; }
}  // namespace sensor_index

struct SensorVector {
  std::array<double, kSensorCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  static constexpr std::size_t size() { return kSensorCount; }

  bool operator==(const SensorVector&) const = default;
};

/// Padding for dead bullet slots, identical before and after normalization.
inline constexpr double kSensorPadding = 0.0;

SensorVector extract_sensors(const SimState& state);

/// dx / arena_width, dy / arena_height, facings {-1,+1} -> {0,1}. Apply once.
SensorVector normalize(const SensorVector& raw, const MatchConfig& config);

}  // namespace evoman
