#include "evoman/sensors.hpp"

namespace evoman {

SensorVector extract_sensors(const SimState& state) {
  using namespace sensor_index;
  SensorVector v;
  const auto& p = state.player;
  for (std::size_t slot = 0; slot < kEnemyBulletSlots; ++slot) {
    const auto& b = state.bullets[slot];
    if (b.alive) {
      v[bullet_dx(slot)] = (b.pos_x - p.pos_x).to_px();
      v[bullet_dy(slot)] = (b.pos_y - p.pos_y).to_px();
    } else {
      v[bullet_dx(slot)] = kSensorPadding;
      v[bullet_dy(slot)] = kSensorPadding;
    }
  }
  v[kEnemyDx] = (state.enemy.pos_x - p.pos_x).to_px();
  v[kEnemyDy] = (state.enemy.pos_y - p.pos_y).to_px();
  v[kPlayerFacing] = p.facing;
  v[kEnemyFacing] = state.enemy.facing;
  return v;
}

SensorVector normalize(const SensorVector& raw, const MatchConfig& config) {
  using namespace sensor_index;
  SensorVector v;
  const double w = config.arena_width;
  const double h = config.arena_height;
  for (std::size_t i = 0; i < kEnemyDx; i += 2) {
    v[i] = raw[i] / w;
    v[i + 1] = raw[i + 1] / h;
  }
  v[kEnemyDx] = raw[kEnemyDx] / w;
  v[kEnemyDy] = raw[kEnemyDy] / h;
  v[kPlayerFacing] = (raw[kPlayerFacing] + 1.0) / 2.0;
  v[kEnemyFacing] = (raw[kEnemyFacing] + 1.0) / 2.0;
  return v;
}

}  // namespace evoman
