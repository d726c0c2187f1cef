#include <doctest.h>

#include <sys/socket.h>

#include <thread>

#include "evoman/errors.hpp"
#include "evoman/evaluation.hpp"
#include "evoman/match.hpp"
#include "evoman/serialization.hpp"
#include "evoman/server.hpp"
#include "evoman/session.hpp"
#include "evoman/sim.hpp"
#include "support.hpp"

using namespace evoman;
using namespace std::chrono_literals;

namespace {

// run_session on one end of a socketpair, the test drives the other end.
class SessionPair {
 public:
  explicit SessionPair(SessionOptions options) {
    int fds[2];
    REQUIRE(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);
    server_ = std::make_unique<SocketChannel>(fds[0]);
    client_ = std::make_unique<SocketChannel>(fds[1]);
    thread_ = std::thread([this, options] {
      run_session(*server_, options);
      server_.reset();
    });
  }
  ~SessionPair() { finish(); }

  void send(const wire::Message& m) { client_->write_line(wire::encode(m)); }
  void send_raw(std::string_view line) { client_->write_line(line); }
  wire::Message receive() {
    const auto line = client_->read_line(5s);
    REQUIRE(line.has_value());
    return wire::decode(*line);
  }
  // True when the server side ended the stream.
  bool closed() { return !client_->read_line(5s).has_value(); }
  void finish() {
    if (!thread_.joinable()) return;
    ::shutdown(client_->fd(), SHUT_WR);
    thread_.join();
  }

 private:
  std::unique_ptr<SocketChannel> server_;
  std::unique_ptr<SocketChannel> client_;
  std::thread thread_;
};

SessionOptions short_session(int max_ticks = 200) {
  SessionOptions o;
  o.config.max_ticks = max_ticks;
  o.action_timeout = 5s;
  return o;
}

template <class T>
T expect(const wire::Message& m) {
  REQUIRE(std::holds_alternative<T>(m));
  return std::get<T>(m);
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("golden client messages") {
    CHECK(wire::encode(wire::Reset{3, 7}) == R"({"type":"reset","boss":3,"seed":7})");
    CHECK(wire::encode(wire::Reset{std::nullopt, 0}) == R"({"type":"reset","seed":0})");
    CHECK(wire::encode(wire::Action{4, {.right = true, .shoot = true}}) ==
          R"({"type":"action","tick":4,"left":false,"right":true,"jump":false,"shoot":true,"release":false})");
    CHECK(wire::encode(wire::Close{}) == R"({"type":"close"})");
  }

  TEST_CASE("golden server messages") {
    CHECK(wire::encode(wire::Result{Outcome::PlayerWon, 55, 0, 155.01, 321}) ==
          R"({"type":"result","outcome":"player_won","ep":55,"ee":0,"gain":155.01,"ticks":321})");
    CHECK(wire::encode(wire::Error{"desync", "late"}) == R"({"type":"error","code":"desync","message":"late"})");
    wire::State s;
    s.tick = 2;
    s.player = {100.5, 400.0, 1};
    s.enemy = {300.0, 350.0, -1};
    s.bullets = {{90.0, 410.0, Owner::Enemy}};
    s.sensors[0] = -10.5;
    s.player_energy = 99;
    s.enemy_energy = 100;
    CHECK(wire::encode(s) ==
          R"({"type":"state","tick":2,"player":{"x":100.5,"y":400.0,"facing":1},"enemy":{"x":300.0,"y":350.0,"facing":-1},)"
          R"("bullets":[{"x":90.0,"y":410.0,"owner":"enemy"}],"sensors":[-10.5,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,)"
          R"(0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0],"player_energy":99,"enemy_energy":100})");
  }

  TEST_CASE("decode inverts encode") {
    const std::vector<wire::Message> msgs{
        wire::Reset{2, 123456789012345ULL}, wire::Reset{std::nullopt, 1},  wire::Action{9, {.left = true, .jump = true}},
        wire::Close{},                      wire::Result{Outcome::Timeout, 3, 4, 99.01, 3000},
        wire::Error{"timeout", "slow"},     wire::make_state(new_match(4, {}, 5))};
    for (const auto& m : msgs) CHECK(wire::decode(wire::encode(m)) == m);

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto s = evoman::testing::random_reachable_state(rng, {}, 300);
      const auto st = wire::make_state(s);
      REQUIRE(wire::decode(wire::encode(st)) == wire::Message{st});
      REQUIRE(st.sensors == extract_sensors(s));
      REQUIRE(st.tick == s.tick);
      REQUIRE(st.bullets.size() == static_cast<std::size_t>(std::count_if(
                                       s.bullets.begin(), s.bullets.end(), [](const Bullet& b) { return b.alive; })));
    }
  }

  TEST_CASE("decode rejects malformed messages") {
    for (const char* bad : {"", "{", "[]", R"({"type":"dance"})", R"({"tick":1})",
                            R"({"type":"action","tick":1,"left":1,"right":false,"jump":false,"shoot":false,"release":false})",
                            R"({"type":"action","tick":-1,"left":false,"right":false,"jump":false,"shoot":false,"release":false})",
                            R"({"type":"action","left":false})", R"({"type":"reset","seed":-4})",
                            R"({"type":"action","tick":4294967296,"left":false,"right":false,"jump":false,"shoot":false,"release":false})", R"({"type":"result","outcome":"draw","ep":0,"ee":0,"gain":1,"ticks":0})"}) {
      const std::string text = bad;
      CAPTURE(text);
      CHECK_THROWS_AS(wire::decode(bad), ParseError);
    }
  }

  TEST_CASE("lockstep session") {
    SessionPair p(short_session());
    p.send(wire::Reset{2, 11});
    for (std::uint32_t t = 0; t < 5; ++t) {
      const auto st = expect<wire::State>(p.receive());
      CHECK(st.tick == t);
      p.send(wire::Action{t, {.right = true}});
    }
    CHECK(expect<wire::State>(p.receive()).tick == 5);
    p.send(wire::Close{});
    CHECK(p.closed());
  }

  TEST_CASE("remote play equals local play") {
    Rng rng(9);
    const auto script = evoman::testing::random_script(rng, 200);
    const auto opts = short_session(200);
    SessionPair p(opts);
    p.send(wire::Reset{5, 21});
    std::size_t states = 0;
    wire::Result result;
    for (;;) {
      const auto m = p.receive();
      if (const auto* r = std::get_if<wire::Result>(&m)) {
        result = *r;
        break;
      }
      const auto st = expect<wire::State>(m);
      ++states;
      if (st.tick < script.size()) p.send(wire::Action{st.tick, script[st.tick]});
      else if (st.player_energy > 0 && st.enemy_energy > 0 && st.tick < 200) p.send(wire::Action{st.tick, {}});
    }
    ScriptedController local(script);
    const auto expect_r = run_match(local, 5, opts.config, 21);
    CHECK(result.outcome == expect_r.outcome);
    CHECK(result.ep == expect_r.player_energy);
    CHECK(result.ee == expect_r.enemy_energy);
    CHECK(result.ticks == expect_r.ticks);
    CHECK(result.gain == gain(expect_r));
    CHECK(states == expect_r.ticks + 1);  // one per decision plus the final state

    // A second reset on the same connection starts a fresh match.
    p.send(wire::Reset{1, 1});
    CHECK(expect<wire::State>(p.receive()).tick == 0);
    p.send(wire::Close{});
  }

  TEST_CASE("stale tick is a desync") {
    SessionPair p(short_session());
    p.send(wire::Reset{1, 1});
    expect<wire::State>(p.receive());
    p.send(wire::Action{0, {}});
    expect<wire::State>(p.receive());
    p.send(wire::Action{0, {}});
    CHECK(expect<wire::Error>(p.receive()).code == wire::code::kDesync);
    CHECK(p.closed());
  }

  TEST_CASE("action before reset") {
    SessionPair p(short_session());
    p.send(wire::Action{0, {}});
    CHECK(expect<wire::Error>(p.receive()).code == wire::code::kNoMatch);
  }

  TEST_CASE("malformed line") {
    SessionPair p(short_session());
    p.send_raw("{not json");
    CHECK(expect<wire::Error>(p.receive()).code == wire::code::kMalformed);
  }

  TEST_CASE("bad boss id") {
    SessionPair p(short_session());
    p.send(wire::Reset{9, 1});
    CHECK(expect<wire::Error>(p.receive()).code == wire::code::kInvalidArgument);
  }

  TEST_CASE("server default boss") {
    auto opts = short_session();
    opts.default_boss = 6;
    SessionPair p(opts);
    p.send(wire::Reset{std::nullopt, 4});
    const auto st = expect<wire::State>(p.receive());
    CHECK(st == wire::make_state(new_match(6, opts.config, 4)));
  }

  TEST_CASE("action timeout") {
    auto opts = short_session();
    opts.action_timeout = 50ms;
    SessionPair p(opts);
    p.send(wire::Reset{1, 1});
    expect<wire::State>(p.receive());
    CHECK(expect<wire::Error>(p.receive()).code == wire::code::kTimeout);
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("match config round-trip") {
    MatchConfig c;
    c.damage_per_hit = 3;
    c.max_ticks = 1234;
    c.contact_iframe_ticks = 4;
    CHECK(match_config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
    CHECK(match_config_from_json(nlohmann::json::parse(R"({"max_ticks":77})")).max_ticks == 77);
    CHECK(match_config_from_json(nlohmann::json::parse(R"({"max_ticks":77})")).damage_per_hit == 1);
    CHECK_THROWS_AS(match_config_from_json(nlohmann::json::parse(R"({"max_tick":77})")), std::invalid_argument);
    CHECK_THROWS_AS(match_config_from_json(nlohmann::json::parse(R"({"max_ticks":"x"})")), std::invalid_argument);
  }

  TEST_CASE("roster round-trip") {
    const auto& r = default_roster();
    const auto back = roster_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back.version == r.version);
    CHECK(back.specs == r.specs);
    const auto tweaked =
        roster_from_json(nlohmann::json::parse(R"({"bosses":[{"boss_id":3,"cooldown_ticks":41}]})"));
    CHECK(tweaked.at(3).cooldown_ticks == 41);
    CHECK(tweaked.at(2) == r.at(2));
    CHECK_THROWS_AS(roster_from_json(nlohmann::json::parse(R"({"bosses":[{"boss_id":3,"spin":1}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(roster_from_json(nlohmann::json::parse(R"({"bosses":[{"boss_id":12}]})")), std::invalid_argument);
  }
}
