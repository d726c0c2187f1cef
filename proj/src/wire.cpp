#include "evoman/wire.hpp"

#include <limits>

#include "evoman/errors.hpp"

namespace evoman::wire {
namespace {

using ojson = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ojson body_json(const Body& b) { return ojson{{"x", b.x}, {"y", b.y}, {"facing", b.facing}}; }

Body body_from(const nlohmann::json& j) { return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("facing").get<int>()}; }

std::string_view owner_name(Owner o) { return o == Owner::Player ? "player" : "enemy"; }

Owner owner_from(const std::string& s) {
  if (s == "player") return Owner::Player;
  if (s == "enemy") return Owner::Enemy;
  throw ParseError("unknown bullet owner '" + s + "'");
}

bool flag(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw ParseError(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

template <class T>
T unsigned_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("'") + key + "' must be a non-negative integer");
  const auto n = v.get<std::uint64_t>();
  if (n > std::numeric_limits<T>::max()) throw ParseError(std::string("'") + key + "' is out of range");
  return static_cast<T>(n);
}

}  // namespace

State make_state(const SimState& s) {
  State m;
  m.tick = s.tick;
  m.player = {s.player.pos_x.to_px(), s.player.pos_y.to_px(), s.player.facing};
  m.enemy = {s.enemy.pos_x.to_px(), s.enemy.pos_y.to_px(), s.enemy.facing};
  for (const auto& b : s.bullets)
    if (b.alive) m.bullets.push_back({b.pos_x.to_px(), b.pos_y.to_px(), b.owner});
  m.sensors = extract_sensors(s);
  m.player_energy = s.player_energy;
  m.enemy_energy = s.enemy_energy;
  return m;
}

nlohmann::ordered_json to_json(const Message& msg) {
  return std::visit(
      overloaded{
          [](const Reset& m) {
            ojson j{{"type", "reset"}};
            if (m.boss_id) j["boss"] = *m.boss_id;
            j["seed"] = m.seed;
            return j;
          },
          [](const Action& m) {
            return ojson{{"type", "action"},         {"tick", m.tick},          {"left", m.action.left},
                         {"right", m.action.right},  {"jump", m.action.jump},   {"shoot", m.action.shoot},
                         {"release", m.action.release}};
          },
          [](const Close&) { return ojson{{"type", "close"}}; },
          [](const State& m) {
            ojson j{{"type", "state"}, {"tick", m.tick}, {"player", body_json(m.player)}, {"enemy", body_json(m.enemy)}};
            auto bullets = ojson::array();
            for (const auto& b : m.bullets) bullets.push_back(ojson{{"x", b.x}, {"y", b.y}, {"owner", owner_name(b.owner)}});
            j["bullets"] = std::move(bullets);
            j["sensors"] = m.sensors.values;
            j["player_energy"] = m.player_energy;
            j["enemy_energy"] = m.enemy_energy;
            return j;
          },
          [](const Result& m) {
            return ojson{{"type", "result"}, {"outcome", to_string(m.outcome)}, {"ep", m.ep},
                         {"ee", m.ee},       {"gain", m.gain},                  {"ticks", m.ticks}};
          },
          [](const Error& m) { return ojson{{"type", "error"}, {"code", m.code}, {"message", m.message}}; },
      },
      msg);
}

std::string encode(const Message& msg) { return to_json(msg).dump(); }

Message from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("message must be a JSON object");
    const auto type = j.at("type").get<std::string>();
    if (type == "reset") {
      Reset m;
      if (j.contains("boss")) m.boss_id = j["boss"].get<int>();
      if (j.contains("seed")) m.seed = unsigned_field<std::uint64_t>(j, "seed");
      return m;
    }
    if (type == "action") {
      Action m;
      m.tick = unsigned_field<std::uint32_t>(j, "tick");
      m.action = {flag(j, "left"), flag(j, "right"), flag(j, "jump"), flag(j, "shoot"), flag(j, "release")};
      return m;
    }
    if (type == "close") return Close{};
    if (type == "state") {
      State m;
      m.tick = unsigned_field<std::uint32_t>(j, "tick");
      m.player = body_from(j.at("player"));
      m.enemy = body_from(j.at("enemy"));
      for (const auto& b : j.at("bullets"))
        m.bullets.push_back({b.at("x").get<double>(), b.at("y").get<double>(), owner_from(b.at("owner").get<std::string>())});
      const auto& s = j.at("sensors");
      if (!s.is_array() || s.size() != kSensorCount) throw ParseError("'sensors' must hold 20 numbers");
      for (std::size_t i = 0; i < kSensorCount; ++i) m.sensors[i] = s[i].get<double>();
      m.player_energy = j.at("player_energy").get<std::int32_t>();
      m.enemy_energy = j.at("enemy_energy").get<std::int32_t>();
      return m;
    }
    if (type == "result") {
      Result m;
      m.outcome = outcome_from_string(j.at("outcome").get<std::string>());
      m.ep = j.at("ep").get<std::int32_t>();
      m.ee = j.at("ee").get<std::int32_t>();
      m.gain = j.at("gain").get<double>();
      m.ticks = unsigned_field<std::uint32_t>(j, "ticks");
      return m;
    }
    if (type == "error") return Error{j.at("code").get<std::string>(), j.at("message").get<std::string>()};
    throw ParseError("unknown message type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed message: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed message: ") + e.what());
  }
}

Message decode(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("message is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace evoman::wire
