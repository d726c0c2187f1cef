#include "evoman/bosses.hpp"

#include <stdexcept>

#include "evoman/errors.hpp"
#include "evoman/rng.hpp"

namespace evoman {
namespace {

constexpr Fixed px(std::int32_t v) { return Fixed::from_px(v); }

// Upper half-circle in 22.5 degree steps, Q8. Index 0 points at the player.
constexpr std::array<std::array<std::int32_t, 2>, 9> kRadial{{
    {256, 0},
    {237, 98},
    {181, 181},
    {98, 237},
    {0, 256},
    {-98, 237},
    {-181, 181},
    {-237, 98},
    {-256, 0},
}};

Roster make_default_roster() {
  Roster r;
  auto& s = r.specs;

  s[0] = BossSpec{.boss_id = 1, .archetype = Archetype::Rusher, .name = "Rusher"};
  s[0].move_speed = Fixed::from_raw(512);
  s[0].dash_speed = px(7);
  s[0].cooldown_ticks = 60;
  s[0].phase_ticks = 20;

  s[1] = BossSpec{.boss_id = 2, .archetype = Archetype::Hopper, .name = "Hopper"};
  s[1].half_width = px(18);
  s[1].half_height = px(22);
  s[1].move_speed = px(3);
  s[1].jump_impulse = px(14);
  s[1].bullet_speed = px(5);
  s[1].spread = px(2);
  s[1].cooldown_ticks = 30;
  s[1].burst_size = 3;

  s[2] = BossSpec{.boss_id = 3, .archetype = Archetype::Gunner, .name = "Gunner"};
  s[2].bullet_speed = px(6);
  s[2].spread = px(20);
  s[2].cooldown_ticks = 45;
  s[2].burst_size = 3;

  s[3] = BossSpec{.boss_id = 4, .archetype = Archetype::Rainer, .name = "Rainer"};
  s[3].bullet_speed = px(5);
  s[3].spread = px(48);
  s[3].range = px(240);
  s[3].cooldown_ticks = 50;
  s[3].phase_ticks = 150;
  s[3].burst_size = 3;

  s[4] = BossSpec{.boss_id = 5, .archetype = Archetype::Tracker, .name = "Tracker"};
  s[4].move_speed = Fixed::from_raw(384);
  s[4].bullet_speed = px(6);
  s[4].range = px(220);
  s[4].cooldown_ticks = 40;
  s[4].burst_size = 1;

  s[5] = BossSpec{.boss_id = 6, .archetype = Archetype::Zigzag, .name = "Zigzag"};
  s[5].move_speed = px(3);
  s[5].jump_impulse = px(9);
  s[5].bullet_speed = px(5);
  s[5].cooldown_ticks = 1;
  s[5].phase_ticks = 24;
  s[5].burst_size = 2;

  s[6] = BossSpec{.boss_id = 7, .archetype = Archetype::Shielder, .name = "Shielder"};
  s[6].move_speed = px(1);
  s[6].bullet_speed = px(4);
  s[6].cooldown_ticks = 60;
  s[6].phase_ticks = 90;
  s[6].burst_size = 5;

  s[7] = BossSpec{.boss_id = 8, .archetype = Archetype::Teleporter, .name = "Teleporter"};
  s[7].bullet_speed = px(7);
  s[7].range = px(160);
  s[7].cooldown_ticks = 75;
  s[7].burst_size = 4;
  s[7].burst_interval = 5;
  s[7].spawn_x = px(560);

  for (const auto& spec : s) validate(spec);
  return r;
}

struct Frame {
  const BossSpec& spec;
  const SimState& state;
  BossStep out;
  Rng rng;
  int side;  // +1 when the player is to the right of the boss

  Frame(const BossSpec& sp, const BossFsmState& fsm, const SimState& st) : spec(sp), state(st), rng(st.rng) {
    out.next = fsm;
    const int d = sign(st.player.pos_x - st.enemy.pos_x);
    side = d != 0 ? d : st.enemy.facing;
    out.facing = static_cast<std::int8_t>(side);
    out.move_speed = sp.move_speed;
    out.jump_impulse = sp.jump_impulse;
  }

  void walk(int dir) {
    out.action.left = dir < 0;
    out.action.right = dir > 0;
  }

  void toward_player() { walk(sign(state.player.pos_x - state.enemy.pos_x)); }

  void shoot(Fixed x, Fixed y, Fixed vx, Fixed vy) {
    out.spawns.push_back({x, y, vx, vy});
    out.action.shoot = true;
  }

  void enter(std::uint8_t phase) {
    out.next.phase = phase;
    out.next.phase_timer = 0;
  }

  std::uint32_t tick_timer() { return ++out.next.phase_timer; }

  Fixed muzzle_x() const { return state.enemy.pos_x + side * spec.half_width; }
};

void rusher(Frame& f) {
  auto& fsm = f.out.next;
  if (fsm.phase == 0) {
    f.toward_player();
    if (f.tick_timer() >= static_cast<std::uint32_t>(f.spec.cooldown_ticks)) {
      f.enter(1);
      fsm.target_x = f.state.player.pos_x;
    }
    return;
  }
  const int dir = sign(fsm.target_x - f.state.enemy.pos_x);
  f.out.move_speed = f.spec.dash_speed;
  f.walk(dir);
  if (f.tick_timer() >= static_cast<std::uint32_t>(f.spec.phase_ticks) || dir == 0) f.enter(0);
}

void hopper(Frame& f) {
  auto& fsm = f.out.next;
  const auto& enemy = f.state.enemy;
  if (fsm.phase == 0) {
    if (f.tick_timer() >= static_cast<std::uint32_t>(f.spec.cooldown_ticks) && enemy.grounded) {
      f.out.action.jump = true;
      f.toward_player();
      f.enter(1);
      fsm.burst_counter = 1;
    }
    return;
  }
  f.toward_player();
  const auto t = f.tick_timer();
  if (fsm.burst_counter == 1 && !enemy.grounded && enemy.vel_y.raw >= 0) {
    fsm.burst_counter = 0;
    const int n = f.spec.burst_size;
    for (int k = 0; k < n; ++k) {
      const Fixed vy = (f.spec.spread * (2 * k - (n - 1))) / 2 + f.spec.spread * 2;
      f.shoot(f.muzzle_x(), enemy.pos_y, f.spec.bullet_speed * f.side, vy);
    }
  }
  if (enemy.grounded && t > 1) f.enter(0);
}

void gunner(Frame& f) {
  if (f.tick_timer() < static_cast<std::uint32_t>(f.spec.cooldown_ticks)) return;
  f.out.next.phase_timer = 0;
  const auto& enemy = f.state.enemy;
  const Fixed y = enemy.pos_y + enemy.height - Fixed::from_px(12);
  for (int k = 0; k < f.spec.burst_size; ++k) {
    f.shoot(f.muzzle_x() + f.spec.spread * (k * f.side), y, f.spec.bullet_speed * f.side, Fixed{});
  }
}

void rainer(Frame& f) {
  auto& fsm = f.out.next;
  if (fsm.phase == 0) {
    const auto offset = static_cast<std::int32_t>(f.rng.below(static_cast<std::uint64_t>(f.spec.range.raw) + 1));
    f.out.teleport = true;
    f.out.teleport_x = f.state.player.pos_x - Fixed::from_raw(offset) * f.side;
    f.enter(1);
    return;
  }
  const auto t = f.tick_timer();
  if (t % static_cast<std::uint32_t>(f.spec.cooldown_ticks) == 0) {
    const int n = f.spec.burst_size;
    for (int k = 0; k < n; ++k) {
      const Fixed dx = (f.spec.spread * (2 * k - (n - 1))) / 2;
      f.shoot(f.state.player.pos_x + dx * f.side, Fixed::from_px(8), Fixed{}, f.spec.bullet_speed);
    }
  }
  if (t >= static_cast<std::uint32_t>(f.spec.phase_ticks)) f.enter(0);
}

void tracker(Frame& f) {
  const auto& enemy = f.state.enemy;
  const auto& player = f.state.player;
  const Fixed dist = abs(player.pos_x - enemy.pos_x);
  const Fixed slack = Fixed::from_px(16);
  if (dist > f.spec.range + slack) {
    f.walk(f.side);
  } else if (dist < f.spec.range - slack) {
    f.walk(-f.side);
  }
  if (f.tick_timer() < static_cast<std::uint32_t>(f.spec.cooldown_ticks)) return;
  f.out.next.phase_timer = 0;
  const std::int64_t dx = player.pos_x.raw - enemy.pos_x.raw;
  const std::int64_t dy = player.pos_y.raw - enemy.pos_y.raw;
  const auto len = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(dx * dx + dy * dy)));
  f.out.next.target_x = player.pos_x;
  f.out.next.target_y = player.pos_y;
  for (int k = 0; k < f.spec.burst_size; ++k) {
    if (len == 0) {
      f.shoot(enemy.pos_x, enemy.pos_y, f.spec.bullet_speed * f.side, Fixed{});
    } else {
      f.shoot(enemy.pos_x, enemy.pos_y, scale(f.spec.bullet_speed, dx, len), scale(f.spec.bullet_speed, dy, len));
    }
  }
}

void zigzag(Frame& f) {
  auto& fsm = f.out.next;
  const auto advance = static_cast<std::uint32_t>(f.spec.phase_ticks);
  const auto retreat = std::max<std::uint32_t>(1, advance / 2);
  f.walk(fsm.phase == 0 ? f.side : -f.side);
  const auto t = f.tick_timer();
  if (t < (fsm.phase == 0 ? advance : retreat)) return;
  f.enter(fsm.phase == 0 ? 1 : 0);
  if (!f.state.enemy.grounded) return;
  f.out.action.jump = true;
  if (++fsm.burst_counter % static_cast<std::uint32_t>(f.spec.cooldown_ticks) != 0) return;
  for (int k = 0; k < f.spec.burst_size; ++k) {
    const Fixed vy = (k % 2 == 0) ? -f.spec.bullet_speed : f.spec.bullet_speed / 2;
    f.shoot(f.muzzle_x(), f.state.enemy.pos_y, f.spec.bullet_speed * f.side, vy);
  }
}

void shielder(Frame& f) {
  auto& fsm = f.out.next;
  if (fsm.phase == 0) {
    f.out.shielded = true;
    f.toward_player();
    if (f.tick_timer() < static_cast<std::uint32_t>(f.spec.phase_ticks)) return;
    f.enter(1);
    const int n = f.spec.burst_size;
    for (int k = 0; k < n; ++k) {
      const auto& dir = kRadial[n > 1 ? static_cast<std::size_t>(k * 8 / (n - 1)) : 0];
      f.shoot(f.state.enemy.pos_x, f.state.enemy.pos_y, scale(f.spec.bullet_speed, dir[0] * f.side, 256),
              scale(f.spec.bullet_speed, -dir[1], 256));
    }
    return;
  }
  if (f.tick_timer() >= static_cast<std::uint32_t>(f.spec.cooldown_ticks)) f.enter(0);
}

void teleporter(Frame& f) {
  auto& fsm = f.out.next;
  if (fsm.phase == 0) {
    if (f.tick_timer() < static_cast<std::uint32_t>(f.spec.cooldown_ticks)) return;
    f.out.teleport = true;
    f.out.teleport_x = f.state.player.pos_x + f.spec.range * f.side;
    fsm.target_x = f.out.teleport_x;
    fsm.burst_counter = 0;
    f.enter(1);
    return;
  }
  const auto t = f.tick_timer();
  if (t % static_cast<std::uint32_t>(f.spec.burst_interval) == 0 &&
      fsm.burst_counter < static_cast<std::uint32_t>(f.spec.burst_size)) {
    ++fsm.burst_counter;
    f.shoot(f.muzzle_x(), f.state.enemy.pos_y, f.spec.bullet_speed * f.side, Fixed{});
  }
  if (fsm.burst_counter >= static_cast<std::uint32_t>(f.spec.burst_size)) f.enter(0);
}

}  // namespace

std::string_view to_string(Archetype a) {
  switch (a) {
    case Archetype::Rusher: return "rusher";
    case Archetype::Hopper: return "hopper";
    case Archetype::Gunner: return "gunner";
    case Archetype::Rainer: return "rainer";
    case Archetype::Tracker: return "tracker";
    case Archetype::Zigzag: return "zigzag";
    case Archetype::Shielder: return "shielder";
    case Archetype::Teleporter: return "teleporter";
  }
  return "unknown";
}

Archetype archetype_from_string(std::string_view s) {
  for (int i = 1; i <= kBossCount; ++i) {
    const auto a = static_cast<Archetype>(i);
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown archetype '" + std::string(s) + "'");
}

void validate(const BossSpec& spec) {
  const std::string who = "boss " + std::to_string(spec.boss_id) + ": ";
  if (spec.boss_id < 1 || spec.boss_id > kBossCount) throw std::invalid_argument(who + "boss_id out of range");
  if (spec.cooldown_ticks < 1) throw std::invalid_argument(who + "cooldown_ticks must be >= 1");
  if (spec.phase_ticks < 1) throw std::invalid_argument(who + "phase_ticks must be >= 1");
  if (spec.burst_interval < 1) throw std::invalid_argument(who + "burst_interval must be >= 1");
  if (spec.burst_size < 0 || spec.burst_size > static_cast<std::int32_t>(kEnemyBulletSlots))
    throw std::invalid_argument(who + "burst_size must be in [0, 8]");
  if (spec.half_width.raw < 0 || spec.half_height.raw < 0) throw std::invalid_argument(who + "negative extent");
  if (spec.range.raw < 0) throw std::invalid_argument(who + "range must be non-negative");
}

const BossSpec& Roster::at(int boss_id) const {
  if (boss_id < 1 || boss_id > kBossCount)
    throw std::invalid_argument("boss_id " + std::to_string(boss_id) + " out of range 1..8");
  return specs[static_cast<std::size_t>(boss_id - 1)];
}

const Roster& default_roster() {
  static const Roster roster = make_default_roster();
  return roster;
}

std::vector<BossSpec> boss_roster() {
  const auto& r = default_roster();
  return {r.specs.begin(), r.specs.end()};
}

std::vector<SpawnRequest> cap_spawns(std::vector<SpawnRequest> requests, std::size_t alive) {
  const std::size_t free = alive >= kEnemyBulletSlots ? 0 : kEnemyBulletSlots - alive;
  if (requests.size() > free) requests.erase(requests.begin(), requests.end() - static_cast<std::ptrdiff_t>(free));
  return requests;
}

BossStep advance_boss(const BossSpec& spec, const BossFsmState& fsm, const SimState& state) {
  if (state.outcome != Outcome::Ongoing) throw IllegalStateError("advance_boss on a finished match");
  Frame f(spec, fsm, state);
  switch (spec.archetype) {
    case Archetype::Rusher: rusher(f); break;
    case Archetype::Hopper: hopper(f); break;
    case Archetype::Gunner: gunner(f); break;
    case Archetype::Rainer: rainer(f); break;
    case Archetype::Tracker: tracker(f); break;
    case Archetype::Zigzag: zigzag(f); break;
    case Archetype::Shielder: shielder(f); break;
    case Archetype::Teleporter: teleporter(f); break;
    default: throw std::invalid_argument("unknown archetype for boss " + std::to_string(spec.boss_id));
  }
  f.out.spawns = cap_spawns(std::move(f.out.spawns), state.alive_enemy_bullets());
  f.out.rng = f.rng.state();
  return f.out;
}

BossStep advance_boss(const Roster& roster, const SimState& state) {
  return advance_boss(roster.at(state.boss_id), state.boss_fsm, state);
}

}  // namespace evoman
