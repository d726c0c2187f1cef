#include "evoman/sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "evoman/errors.hpp"
#include "evoman/hash.hpp"
#include "evoman/rng.hpp"

namespace evoman {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("match config: ") + what);
}

bool speed_ok(Fixed v) { return v.raw >= 0 && v <= Fixed::from_px(64); }

std::uint64_t fold_input(std::uint64_t digest, const ActionSet& a) {
  const std::uint8_t bytes[4] = {
      static_cast<std::uint8_t>(int{a.left} + int{a.right}),
      static_cast<std::uint8_t>(a.jump),
      static_cast<std::uint8_t>(a.shoot),
      static_cast<std::uint8_t>(a.release),
  };
  return fnv1a64(bytes, digest);
}

void settle_vertical(EntityState& e, const MatchConfig& config) {
  const Fixed floor = config.floor();
  if (e.pos_y + e.height >= floor) {
    e.pos_y = floor - e.height;
    e.vel_y = Fixed{};
    e.grounded = true;
  } else {
    e.grounded = false;
  }
  if (e.pos_y - e.height < Fixed{}) {
    e.pos_y = e.height;
    if (e.vel_y.raw < 0) e.vel_y = Fixed{};
  }
}

void clamp_horizontal(EntityState& e, const MatchConfig& config) {
  e.pos_x = clamp(e.pos_x, e.width, config.arena_w() - e.width);
}

void integrate(EntityState& e, int dir, Fixed speed, bool jump, Fixed impulse, bool release,
               const MatchConfig& config) {
  e.vel_x = speed * dir;
  if (jump && e.grounded) {
    e.vel_y = -impulse;
    e.grounded = false;
  }
  if (release && e.vel_y.raw < 0) e.vel_y = Fixed{};
  if (!e.grounded) e.vel_y = std::min(e.vel_y + config.gravity, config.max_fall_speed);
  e.pos_x += e.vel_x;
  e.pos_y += e.vel_y;
  clamp_horizontal(e, config);
  settle_vertical(e, config);
}

bool out_of_bounds(const Bullet& b, const MatchConfig& config) {
  return b.pos_x.raw < 0 || b.pos_y.raw < 0 || b.pos_x > config.arena_w() || b.pos_y > config.arena_h();
}

void damage(std::int32_t& energy, std::int32_t amount) { energy = std::max(0, energy - amount); }

void write_entity(ByteWriter& w, const EntityState& e) {
  w.i32(e.pos_x.raw);
  w.i32(e.pos_y.raw);
  w.i32(e.vel_x.raw);
  w.i32(e.vel_y.raw);
  w.i8(e.facing);
  w.i32(e.width.raw);
  w.i32(e.height.raw);
  w.boolean(e.grounded);
}

void mirror_entity(EntityState& e, Fixed arena_w) {
  e.pos_x = arena_w - e.pos_x;
  e.vel_x = -e.vel_x;
  e.facing = static_cast<std::int8_t>(-e.facing);
}

}  // namespace

void validate(const MatchConfig& c) {
  require(c.damage_per_hit >= 1, "damage_per_hit must be >= 1");
  require(c.max_ticks >= 1, "max_ticks must be >= 1");
  require(c.ticks_per_second >= 1, "ticks_per_second must be >= 1");
  require(c.arena_width >= 64 && c.arena_width <= 4096, "arena_width must be in [64, 4096]");
  require(c.arena_height >= 64 && c.arena_height <= 4096, "arena_height must be in [64, 4096]");
  require(c.floor_y > 0 && c.floor_y <= c.arena_height, "floor_y must be in (0, arena_height]");
  require(speed_ok(c.gravity) && speed_ok(c.max_fall_speed) && speed_ok(c.player_speed) &&
              speed_ok(c.player_jump_impulse) && speed_ok(c.player_bullet_speed),
          "speeds must be in [0, 64] px/tick");
  require(c.player_half_width.raw >= 0 && c.player_half_height.raw >= 0 && c.bullet_half_size.raw >= 0,
          "extents must be non-negative");
  require(c.shoot_cooldown_ticks >= 1, "shoot_cooldown_ticks must be >= 1");
  require(c.contact_iframe_ticks >= 0 && c.player_hit_iframe_ticks >= 0 && c.enemy_hit_iframe_ticks >= 0,
          "iframe ticks must be >= 0");
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::PlayerWon: return "player_won";
    case Outcome::EnemyWon: return "enemy_won";
    case Outcome::Timeout: return "timeout";
  }
  return "unknown";
}

Outcome outcome_from_string(std::string_view s) {
  for (auto o : {Outcome::Ongoing, Outcome::PlayerWon, Outcome::EnemyWon, Outcome::Timeout})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("unknown outcome '" + std::string(s) + "'");
}

std::size_t SimState::alive_enemy_bullets() const {
  return static_cast<std::size_t>(
      std::count_if(bullets.begin(), bullets.begin() + kEnemyBulletSlots, [](const Bullet& b) { return b.alive; }));
}

Box box_of(const EntityState& e) { return {e.pos_x, e.pos_y, e.width, e.height}; }

Box box_of(const Bullet& b, const MatchConfig& config) {
  return {b.pos_x, b.pos_y, config.bullet_half_size, config.bullet_half_size};
}

SimState new_match(int boss_id, const MatchConfig& config, std::uint64_t seed, const Roster& roster) {
  validate(config);
  const BossSpec& spec = roster.at(boss_id);

  SimState s;
  s.boss_id = static_cast<std::uint8_t>(boss_id);
  s.rng = derive_seed(seed, {static_cast<std::uint64_t>(boss_id)});
  s.input_digest = kFnvOffset;

  s.player.width = config.player_half_width;
  s.player.height = config.player_half_height;
  s.player.pos_x = config.player_spawn_x;
  s.player.pos_y = config.floor() - s.player.height;
  s.player.facing = 1;
  s.player.grounded = true;

  s.enemy.width = spec.half_width;
  s.enemy.height = spec.half_height;
  s.enemy.pos_x = spec.spawn_x;
  s.enemy.pos_y = config.floor() - s.enemy.height;
  s.enemy.facing = -1;
  s.enemy.grounded = true;
  clamp_horizontal(s.enemy, config);

  for (std::size_t i = 0; i < kBulletSlots; ++i) s.bullets[i].owner = i < kEnemyBulletSlots ? Owner::Enemy : Owner::Player;
  return s;
}

SimState step(const SimState& state, const ActionSet& action, const MatchConfig& config, const Roster& roster) {
  if (state.outcome != Outcome::Ongoing)
    throw IllegalStateError("step on a finished match (tick " + std::to_string(state.tick) + ")");

  SimState n = state;
  n.tick = state.tick + 1;
  n.input_digest = fold_input(state.input_digest, action);
  if (n.player_iframes > 0) --n.player_iframes;
  if (n.enemy_iframes > 0) --n.enemy_iframes;
  if (n.shoot_cooldown > 0) --n.shoot_cooldown;

  // 1. boss
  BossStep cmd = advance_boss(roster.at(state.boss_id), state.boss_fsm, state);
  n.boss_fsm = cmd.next;
  n.rng = cmd.rng;

  // 2. player
  const int dir = int{action.right} - int{action.left};
  if (dir != 0) n.player.facing = static_cast<std::int8_t>(dir);
  integrate(n.player, dir, config.player_speed, action.jump, config.player_jump_impulse, action.release, config);

  // 3. enemy
  n.enemy.facing = cmd.facing;
  if (cmd.teleport) {
    n.enemy.pos_x = cmd.teleport_x;
    integrate(n.enemy, 0, Fixed{}, cmd.action.jump, cmd.jump_impulse, cmd.action.release, config);
  } else {
    const int edir = int{cmd.action.right} - int{cmd.action.left};
    integrate(n.enemy, edir, cmd.move_speed, cmd.action.jump, cmd.jump_impulse, cmd.action.release, config);
  }

  // 4. bullets
  for (auto& b : n.bullets) {
    if (!b.alive) continue;
    b.pos_x += b.vel_x;
    b.pos_y += b.vel_y;
    if (out_of_bounds(b, config)) b.alive = false;
  }

  // 5. spawns
  if (action.shoot && n.shoot_cooldown == 0) {
    for (std::size_t i = kEnemyBulletSlots; i < kBulletSlots; ++i) {
      auto& b = n.bullets[i];
      if (b.alive) continue;
      b = Bullet{Owner::Player, n.player.pos_x + n.player.width * n.player.facing, n.player.pos_y,
                 config.player_bullet_speed * n.player.facing, Fixed{}, true};
      n.shoot_cooldown = static_cast<std::uint32_t>(config.shoot_cooldown_ticks);
      break;
    }
  }
  std::size_t slot = 0;
  for (const auto& req : cmd.spawns) {
    while (slot < kEnemyBulletSlots && n.bullets[slot].alive) ++slot;
    if (slot == kEnemyBulletSlots) break;
    n.bullets[slot] = Bullet{Owner::Enemy, req.pos_x, req.pos_y, req.vel_x, req.vel_y, true};
  }

  // 6. collisions
  const Box pbox = box_of(n.player);
  const Box ebox = box_of(n.enemy);
  for (std::size_t i = 0; i < kBulletSlots; ++i) {
    auto& b = n.bullets[i];
    if (!b.alive) continue;
    const bool enemy_owned = i < kEnemyBulletSlots;
    if (!aabb_overlap(box_of(b, config), enemy_owned ? pbox : ebox)) continue;
    b.alive = false;
    if (enemy_owned) {
      if (n.player_iframes == 0) {
        damage(n.player_energy, config.damage_per_hit);
        n.player_iframes = static_cast<std::uint32_t>(config.player_hit_iframe_ticks);
      }
    } else if (!cmd.shielded && n.enemy_iframes == 0) {
      damage(n.enemy_energy, config.damage_per_hit);
      n.enemy_iframes = static_cast<std::uint32_t>(config.enemy_hit_iframe_ticks);
    }
  }
  if (aabb_overlap(pbox, ebox) && n.player_iframes == 0) {
    damage(n.player_energy, config.damage_per_hit);
    n.player_iframes = static_cast<std::uint32_t>(config.contact_iframe_ticks);
  }

  // 7. outcome
  if (n.player_energy == 0) {
    n.outcome = Outcome::EnemyWon;
  } else if (n.enemy_energy == 0) {
    n.outcome = Outcome::PlayerWon;
  } else if (n.tick >= static_cast<std::uint32_t>(config.max_ticks)) {
    n.outcome = Outcome::Timeout;
  }
  return n;
}

std::vector<std::uint8_t> canonical_bytes(const SimState& s) {
  ByteWriter w;
  w.u32(s.tick);
  write_entity(w, s.player);
  write_entity(w, s.enemy);
  for (const auto& b : s.bullets) {
    w.u8(static_cast<std::uint8_t>(b.owner));
    w.i32(b.pos_x.raw);
    w.i32(b.pos_y.raw);
    w.i32(b.vel_x.raw);
    w.i32(b.vel_y.raw);
    w.boolean(b.alive);
  }
  w.i32(s.player_energy);
  w.i32(s.enemy_energy);
  w.u32(s.player_iframes);
  w.u32(s.enemy_iframes);
  w.u32(s.shoot_cooldown);
  w.u8(s.boss_fsm.phase);
  w.u32(s.boss_fsm.phase_timer);
  w.u32(s.boss_fsm.burst_counter);
  w.i32(s.boss_fsm.target_x.raw);
  w.i32(s.boss_fsm.target_y.raw);
  w.u64(s.rng);
  w.u8(s.boss_id);
  w.u8(static_cast<std::uint8_t>(s.outcome));
  w.u64(s.input_digest);
  return w.bytes();
}

std::uint64_t state_hash(const SimState& state) { return fnv1a64(canonical_bytes(state)); }

SimState mirror_state(const SimState& state, const MatchConfig& config) {
  const Fixed w = config.arena_w();
  SimState m = state;
  mirror_entity(m.player, w);
  mirror_entity(m.enemy, w);
  for (auto& b : m.bullets) {
    b.pos_x = w - b.pos_x;
    b.vel_x = -b.vel_x;
  }
  m.boss_fsm.target_x = w - m.boss_fsm.target_x;
  return m;
}

}  // namespace evoman
