#include <doctest.h>

#include <set>

#include "evoman/bosses.hpp"
#include "evoman/errors.hpp"
#include "evoman/hash.hpp"
#include "evoman/sim.hpp"
#include "support.hpp"

using namespace evoman;
using evoman::testing::random_action;

namespace {

SpawnRequest mirrored(const SpawnRequest& r, Fixed w) { return {w - r.pos_x, r.pos_y, -r.vel_x, r.vel_y}; }

}  // namespace

TEST_SUITE("bosses") {
  TEST_CASE("roster has eight bosses in id order") {
    const auto r = boss_roster();
    REQUIRE(r.size() == 8);
    for (int i = 0; i < 8; ++i) {
      CHECK(r[static_cast<std::size_t>(i)].boss_id == i + 1);
      CHECK(static_cast<int>(r[static_cast<std::size_t>(i)].archetype) == i + 1);
      CHECK_NOTHROW(validate(r[static_cast<std::size_t>(i)]));
    }
    CHECK(boss_roster() == r);
    CHECK(default_roster().version == kRosterVersion);
    CHECK_THROWS_AS(default_roster().at(9), std::invalid_argument);
  }

  TEST_CASE("archetype names round-trip") {
    for (int i = 1; i <= kBossCount; ++i) {
      const auto a = static_cast<Archetype>(i);
      CHECK(archetype_from_string(to_string(a)) == a);
    }
    CHECK_THROWS_AS(archetype_from_string("metalman"), std::invalid_argument);
  }

  TEST_CASE("boss parameter validation") {
    BossSpec s = default_roster().at(3);
    s.cooldown_ticks = 0;
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
    s = default_roster().at(3);
    s.burst_size = 9;
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
  }

  TEST_CASE("Gunner fires a three-bullet train at cooldown expiry") {
    // Hand-stepped: the timer reaches cooldown_ticks on this tick, player is
    // to the left, so the boss fires three bullets moving left.
    const auto& spec = default_roster().at(3);
    auto s = new_match(3, {}, 1);
    REQUIRE(s.player.pos_x < s.enemy.pos_x);
    s.boss_fsm.phase_timer = static_cast<std::uint32_t>(spec.cooldown_ticks - 1);
    const auto out = advance_boss(spec, s.boss_fsm, s);
    REQUIRE(out.spawns.size() == 3);
    const Fixed muzzle = s.enemy.pos_x - spec.half_width;
    const Fixed y = s.enemy.pos_y + s.enemy.height - Fixed::from_px(12);
    for (int k = 0; k < 3; ++k) {
      const auto& b = out.spawns[static_cast<std::size_t>(k)];
      CHECK(b.vel_x == Fixed::from_px(-6));
      CHECK(b.vel_y == Fixed{});
      CHECK(b.pos_x == muzzle - Fixed::from_px(20 * k));
      CHECK(b.pos_y == y);
    }
    CHECK(out.next.phase_timer == 0);
    CHECK(out.facing == -1);

    // One tick earlier nothing happens.
    s.boss_fsm.phase_timer = static_cast<std::uint32_t>(spec.cooldown_ticks - 2);
    CHECK(advance_boss(spec, s.boss_fsm, s).spawns.empty());
  }

  TEST_CASE("full enemy slots accept no spawns") {
    Rng rng(5);
    for (int boss = 1; boss <= kBossCount; ++boss) {
      CAPTURE(boss);
      for (int i = 0; i < 200; ++i) {
        auto s = evoman::testing::random_reachable_state(rng);
        if (s.outcome != Outcome::Ongoing) continue;
        s.boss_id = static_cast<std::uint8_t>(boss);
        for (std::size_t k = 0; k < kEnemyBulletSlots; ++k) s.bullets[k].alive = true;
        CHECK(advance_boss(default_roster(), s).spawns.empty());
      }
    }
  }

  TEST_CASE("cap_spawns keeps the newest requests") {
    std::vector<SpawnRequest> reqs;
    for (int i = 0; i < 5; ++i) reqs.push_back({Fixed::from_px(i), {}, {}, {}});
    const auto kept = cap_spawns(reqs, 6);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].pos_x == Fixed::from_px(3));
    CHECK(kept[1].pos_x == Fixed::from_px(4));
    CHECK(cap_spawns(reqs, 8).empty());
    CHECK(cap_spawns(reqs, 0).size() == 5);
  }

  TEST_CASE("advance_boss is pure") {
    Rng rng(9);
    for (int boss = 1; boss <= kBossCount; ++boss) {
      for (int i = 0; i < 1000; ++i) {
        auto s = evoman::testing::random_reachable_state(rng, {}, 200);
        if (s.outcome != Outcome::Ongoing) continue;
        s.boss_id = static_cast<std::uint8_t>(boss);
        const SimState copy = s;
        REQUIRE(advance_boss(default_roster(), s) == advance_boss(default_roster(), copy));
      }
    }
  }

  TEST_CASE("mirrored input gives mirrored output for every archetype") {
    const MatchConfig cfg;
    const Fixed w = cfg.arena_w();
    Rng rng(13);
    for (int boss = 1; boss <= kBossCount; ++boss) {
      CAPTURE(boss);
      SimState s = new_match(boss, cfg, rng.next());
      for (int t = 0; t < 2000 && s.outcome == Outcome::Ongoing; ++t) {
        const auto out = advance_boss(default_roster(), s);
        const auto mir = advance_boss(default_roster(), mirror_state(s, cfg));
        REQUIRE(mir.action == mirrored(out.action));
        REQUIRE(mir.facing == -out.facing);
        REQUIRE(mir.shielded == out.shielded);
        REQUIRE(mir.teleport == out.teleport);
        if (out.teleport) REQUIRE(mir.teleport_x == w - out.teleport_x);
        REQUIRE(mir.spawns.size() == out.spawns.size());
        for (std::size_t k = 0; k < out.spawns.size(); ++k) REQUIRE(mir.spawns[k] == mirrored(out.spawns[k], w));
        s = step(s, random_action(rng), cfg);
      }
    }
  }

  TEST_CASE("archetypes are behaviorally distinct") {
    // Fixed probe: the player walks right for 60 ticks, then jumps and shoots.
    const MatchConfig cfg;
    std::set<std::uint64_t> traces;
    for (int boss = 1; boss <= kBossCount; ++boss) {
      SimState s = new_match(boss, cfg, 77);
      ByteWriter w;
      for (std::uint32_t t = 0; t < 300 && s.outcome == Outcome::Ongoing; ++t) {
        ActionSet a;
        a.right = t < 60;
        a.jump = t % 40 == 0;
        a.shoot = t % 10 == 0;
        const auto out = advance_boss(default_roster(), s);
        for (bool b : {out.action.left, out.action.right, out.action.jump, out.action.shoot}) w.boolean(b);
        w.u32(static_cast<std::uint32_t>(out.spawns.size()));
        s = step(s, a, cfg);
      }
      traces.insert(fnv1a64(w.bytes()));
    }
    CHECK(traces.size() == 8);
  }

  TEST_CASE("Shielder suppresses damage while shielded") {
    const MatchConfig cfg;
    auto s = new_match(7, cfg, 3);
    bool saw_shield = false;
    for (int t = 0; t < 400 && !saw_shield; ++t) {
      if (advance_boss(default_roster(), s).shielded) {
        saw_shield = true;
        auto& pb = s.bullets[kEnemyBulletSlots];
        pb.alive = true;
        pb.owner = Owner::Player;
        pb.pos_x = s.enemy.pos_x;
        pb.pos_y = s.enemy.pos_y;
        pb.vel_x = pb.vel_y = Fixed{};
        const auto next = step(s, {}, cfg);
        CHECK(next.enemy_energy == s.enemy_energy);
        break;
      }
      s = step(s, {}, cfg);
    }
    CHECK(saw_shield);
  }

  TEST_CASE("advance_boss refuses finished matches") {
    auto s = new_match(1, {}, 1);
    s.outcome = Outcome::PlayerWon;
    CHECK_THROWS_AS(advance_boss(default_roster(), s), IllegalStateError);
  }
}
