#include <doctest.h>

#include "evoman/sensors.hpp"
#include "evoman/sim.hpp"
#include "support.hpp"

using namespace evoman;
namespace si = evoman::sensor_index;

TEST_SUITE("sensors") {
  TEST_CASE("golden layout") {
    CHECK(kSensorCount == 20);
    CHECK(si::bullet_dx(0) == 0);
    CHECK(si::bullet_dy(0) == 1);
    CHECK(si::bullet_dx(7) == 14);
    CHECK(si::bullet_dy(7) == 15);
    CHECK(si::kEnemyDx == 16);
    CHECK(si::kEnemyDy == 17);
    CHECK(si::kPlayerFacing == 18);
    CHECK(si::kEnemyFacing == 19);
    CHECK(kSensorPadding == 0.0);

    // Concrete state with one bullet in slot 2.
    const MatchConfig cfg;
    auto s = new_match(1, cfg, 1);
    s.player.pos_x = Fixed::from_px(100);
    s.player.pos_y = Fixed::from_px(400);
    s.player.facing = 1;
    s.enemy.pos_x = Fixed::from_px(300);
    s.enemy.pos_y = Fixed::from_px(350);
    s.enemy.facing = -1;
    s.bullets[2].alive = true;
    s.bullets[2].pos_x = Fixed::from_px(90);
    s.bullets[2].pos_y = Fixed::from_px(410);
    const auto v = extract_sensors(s);
    const std::array<double, 20> expected{0, 0, 0, 0, -10, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 200, -50, 1, -1};
    CHECK(v.values == expected);

    const auto n = normalize(v, cfg);
    CHECK(n[4] == doctest::Approx(-10.0 / 736));
    CHECK(n[5] == doctest::Approx(10.0 / 512));
    CHECK(n[16] == doctest::Approx(200.0 / 736));
    CHECK(n[17] == doctest::Approx(-50.0 / 512));
    CHECK(n[18] == 1.0);
    CHECK(n[19] == 0.0);
    CHECK(n[0] == 0.0);
  }

  TEST_CASE("coincident enemy reads zero distance") {
    auto s = new_match(1, {}, 1);
    s.enemy.pos_x = s.player.pos_x;
    s.enemy.pos_y = s.player.pos_y;
    const auto v = extract_sensors(s);
    CHECK(v[si::kEnemyDx] == 0.0);
    CHECK(v[si::kEnemyDy] == 0.0);
  }

  TEST_CASE("no enemy bullets reads padding") {
    auto s = new_match(3, {}, 1);
    s.bullets[kEnemyBulletSlots].alive = true;  // player bullets are not sensed
    s.bullets[kEnemyBulletSlots].pos_x = Fixed::from_px(5);
    const auto v = extract_sensors(s);
    for (std::size_t i = 0; i < 16; ++i) CHECK(v[i] == kSensorPadding);
    const auto n = normalize(v, {});
    for (std::size_t i = 0; i < 16; ++i) CHECK(n[i] == kSensorPadding);
  }

  TEST_CASE("normalize endpoints") {
    const MatchConfig cfg;
    SensorVector v;
    v[si::kEnemyDx] = cfg.arena_width;
    v[si::kEnemyDy] = -cfg.arena_height;
    v[si::kPlayerFacing] = -1;
    v[si::kEnemyFacing] = 1;
    const auto n = normalize(v, cfg);
    CHECK(n[si::kEnemyDx] == 1.0);
    CHECK(n[si::kEnemyDy] == -1.0);
    CHECK(n[si::bullet_dx(0)] == 0.0);
    CHECK(n[si::kPlayerFacing] == 0.0);
    CHECK(n[si::kEnemyFacing] == 1.0);
  }

  TEST_CASE("fuzzed states match a direct recomputation") {
    const MatchConfig cfg;
    Rng rng(41);
    for (int i = 0; i < 10000; ++i) {
      const auto s = i % 2 ? evoman::testing::random_state(rng, cfg) : evoman::testing::random_reachable_state(rng, cfg, 300);
      const auto v = extract_sensors(s);
      REQUIRE(v.size() == 20);
      const double px = s.player.pos_x.raw / 256.0, py = s.player.pos_y.raw / 256.0;
      for (std::size_t k = 0; k < kEnemyBulletSlots; ++k) {
        const auto& b = s.bullets[k];
        REQUIRE(v[2 * k] == (b.alive ? b.pos_x.raw / 256.0 - px : 0.0));
        REQUIRE(v[2 * k + 1] == (b.alive ? b.pos_y.raw / 256.0 - py : 0.0));
      }
      REQUIRE(v[16] == s.enemy.pos_x.raw / 256.0 - px);
      REQUIRE(v[17] == s.enemy.pos_y.raw / 256.0 - py);
      REQUIRE(v[18] == s.player.facing);
      REQUIRE(v[19] == s.enemy.facing);

      const auto n = normalize(v, cfg);
      for (std::size_t k = 0; k < 18; ++k) {
        REQUIRE(n[k] >= -1.0);
        REQUIRE(n[k] <= 1.0);
      }
    }
  }

  TEST_CASE("mirror antisymmetry") {
    const MatchConfig cfg;
    Rng rng(43);
    for (int i = 0; i < 10000; ++i) {
      const auto s = i % 2 ? evoman::testing::random_state(rng, cfg) : evoman::testing::random_reachable_state(rng, cfg, 300);
      const auto a = normalize(extract_sensors(s), cfg);
      const auto b = normalize(extract_sensors(mirror_state(s, cfg)), cfg);
      for (std::size_t k = 0; k < 18; k += 2) {
        REQUIRE(b[k] == -a[k]);          // dx
        REQUIRE(b[k + 1] == a[k + 1]);  // dy
      }
      REQUIRE(b[18] == 1.0 - a[18]);
      REQUIRE(b[19] == 1.0 - a[19]);
    }
  }
}
