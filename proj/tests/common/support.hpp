#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "evoman/controllers.hpp"
#include "evoman/rng.hpp"
#include "evoman/sim.hpp"

namespace evoman::testing {

inline ActionSet random_action(Rng& rng) {
  return {rng.bernoulli(0.4), rng.bernoulli(0.4), rng.bernoulli(0.15), rng.bernoulli(0.3), rng.bernoulli(0.1)};
}

inline std::vector<ActionSet> random_script(Rng& rng, std::size_t n) {
  std::vector<ActionSet> out(n);
  for (auto& a : out) a = random_action(rng);
  return out;
}

/// Reachable state: a fresh match advanced by up to `max_steps` random actions.
inline SimState random_reachable_state(Rng& rng, const MatchConfig& cfg = {}, std::uint32_t max_steps = 600) {
  const int boss = 1 + static_cast<int>(rng.below(kBossCount));
  SimState s = new_match(boss, cfg, rng.next());
  const auto steps = rng.below(max_steps + 1);
  for (std::uint64_t i = 0; i < steps && s.outcome == Outcome::Ongoing; ++i) s = step(s, random_action(rng), cfg);
  return s;
}

/// Arbitrary in-bounds state, not necessarily reachable.
inline SimState random_state(Rng& rng, const MatchConfig& cfg = {}) {
  SimState s = new_match(1 + static_cast<int>(rng.below(kBossCount)), cfg, rng.next());
  auto coord = [&](std::int32_t limit) { return Fixed::from_raw(static_cast<std::int32_t>(rng.below(limit * 256 + 1))); };
  const auto w = cfg.arena_width, h = cfg.arena_height;
  s.player.pos_x = coord(w);
  s.player.pos_y = coord(h);
  s.player.facing = rng.bernoulli(0.5) ? 1 : -1;
  s.enemy.pos_x = coord(w);
  s.enemy.pos_y = coord(h);
  s.enemy.facing = rng.bernoulli(0.5) ? 1 : -1;
  for (std::size_t i = 0; i < kBulletSlots; ++i) {
    auto& b = s.bullets[i];
    b.owner = i < kEnemyBulletSlots ? Owner::Enemy : Owner::Player;
    b.alive = rng.bernoulli(0.5);
    b.pos_x = coord(w);
    b.pos_y = coord(h);
  }
  return s;
}

inline Genome random_genome(Rng& rng, int hidden, double range = 1.0) {
  Genome g = zero_genome({static_cast<int>(kSensorCount), hidden, kActionCount});
  for (auto& w : g.weights) w = static_cast<float>(rng.uniform(-range, range));
  return g;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("evoman-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace evoman::testing
