#include "evoman/serialization.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace evoman {
namespace {

using Setter = std::function<void(const nlohmann::json&)>;

double px_of(Fixed f) { return f.to_px(); }

Fixed fixed_of(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument("'" + key + "' must be a number");
  const double px = v.get<double>();
  if (!std::isfinite(px) || std::abs(px) > 1.0e6) throw std::invalid_argument("'" + key + "' out of range");
  return Fixed::from_raw(static_cast<std::int32_t>(std::llround(px * Fixed::kOne)));
}

std::int32_t int_of(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw std::invalid_argument("'" + key + "' must be an integer");
  return v.get<std::int32_t>();
}

void apply(const nlohmann::json& doc, const std::map<std::string, Setter>& fields, const char* what) {
  if (!doc.is_object()) throw std::invalid_argument(std::string(what) + " must be an object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument(std::string("unknown key '") + key + "' in " + what);
    it->second(value);
  }
}

}  // namespace

nlohmann::ordered_json to_json(const MatchConfig& c) {
  nlohmann::ordered_json j;
  j["damage_per_hit"] = c.damage_per_hit;
  j["max_ticks"] = c.max_ticks;
  j["ticks_per_second"] = c.ticks_per_second;
  j["arena_width"] = c.arena_width;
  j["arena_height"] = c.arena_height;
  j["floor_y"] = c.floor_y;
  j["gravity"] = px_of(c.gravity);
  j["max_fall_speed"] = px_of(c.max_fall_speed);
  j["player_speed"] = px_of(c.player_speed);
  j["player_jump_impulse"] = px_of(c.player_jump_impulse);
  j["player_bullet_speed"] = px_of(c.player_bullet_speed);
  j["player_half_width"] = px_of(c.player_half_width);
  j["player_half_height"] = px_of(c.player_half_height);
  j["player_spawn_x"] = px_of(c.player_spawn_x);
  j["bullet_half_size"] = px_of(c.bullet_half_size);
  j["shoot_cooldown_ticks"] = c.shoot_cooldown_ticks;
  j["contact_iframe_ticks"] = c.contact_iframe_ticks;
  j["player_hit_iframe_ticks"] = c.player_hit_iframe_ticks;
  j["enemy_hit_iframe_ticks"] = c.enemy_hit_iframe_ticks;
  return j;
}

MatchConfig match_config_from_json(const nlohmann::json& doc, const MatchConfig& base) {
  MatchConfig c = base;
  auto i = [](std::int32_t& dst, const char* key) {
    return std::pair<const std::string, Setter>{key, [&dst, key](const nlohmann::json& v) { dst = int_of(v, key); }};
  };
  auto f = [](Fixed& dst, const char* key) {
    return std::pair<const std::string, Setter>{key, [&dst, key](const nlohmann::json& v) { dst = fixed_of(v, key); }};
  };
  const std::map<std::string, Setter> fields{
      i(c.damage_per_hit, "damage_per_hit"),
      i(c.max_ticks, "max_ticks"),
      i(c.ticks_per_second, "ticks_per_second"),
      i(c.arena_width, "arena_width"),
      i(c.arena_height, "arena_height"),
      i(c.floor_y, "floor_y"),
      f(c.gravity, "gravity"),
      f(c.max_fall_speed, "max_fall_speed"),
      f(c.player_speed, "player_speed"),
      f(c.player_jump_impulse, "player_jump_impulse"),
      f(c.player_bullet_speed, "player_bullet_speed"),
      f(c.player_half_width, "player_half_width"),
      f(c.player_half_height, "player_half_height"),
      f(c.player_spawn_x, "player_spawn_x"),
      f(c.bullet_half_size, "bullet_half_size"),
      i(c.shoot_cooldown_ticks, "shoot_cooldown_ticks"),
      i(c.contact_iframe_ticks, "contact_iframe_ticks"),
      i(c.player_hit_iframe_ticks, "player_hit_iframe_ticks"),
      i(c.enemy_hit_iframe_ticks, "enemy_hit_iframe_ticks"),
  };
  apply(doc, fields, "match config");
  validate(c);
  return c;
}

nlohmann::ordered_json to_json(const BossSpec& s) {
  nlohmann::ordered_json j;
  j["boss_id"] = s.boss_id;
  j["archetype"] = std::string(to_string(s.archetype));
  j["name"] = s.name;
  j["half_width"] = px_of(s.half_width);
  j["half_height"] = px_of(s.half_height);
  j["spawn_x"] = px_of(s.spawn_x);
  j["move_speed"] = px_of(s.move_speed);
  j["dash_speed"] = px_of(s.dash_speed);
  j["jump_impulse"] = px_of(s.jump_impulse);
  j["bullet_speed"] = px_of(s.bullet_speed);
  j["spread"] = px_of(s.spread);
  j["range"] = px_of(s.range);
  j["cooldown_ticks"] = s.cooldown_ticks;
  j["phase_ticks"] = s.phase_ticks;
  j["burst_size"] = s.burst_size;
  j["burst_interval"] = s.burst_interval;
  return j;
}

BossSpec boss_spec_from_json(const nlohmann::json& doc, const BossSpec& base) {
  BossSpec s = base;
  auto i = [](std::int32_t& dst, const char* key) {
    return std::pair<const std::string, Setter>{key, [&dst, key](const nlohmann::json& v) { dst = int_of(v, key); }};
  };
  auto f = [](Fixed& dst, const char* key) {
    return std::pair<const std::string, Setter>{key, [&dst, key](const nlohmann::json& v) { dst = fixed_of(v, key); }};
  };
  const std::map<std::string, Setter> fields{
      {"boss_id",
       [&](const nlohmann::json& v) {
         if (int_of(v, "boss_id") != base.boss_id) throw std::invalid_argument("boss_id cannot be changed");
       }},
      {"archetype", [&](const nlohmann::json& v) { s.archetype = archetype_from_string(v.get<std::string>()); }},
      {"name", [&](const nlohmann::json& v) { s.name = v.get<std::string>(); }},
      f(s.half_width, "half_width"),
      f(s.half_height, "half_height"),
      f(s.spawn_x, "spawn_x"),
      f(s.move_speed, "move_speed"),
      f(s.dash_speed, "dash_speed"),
      f(s.jump_impulse, "jump_impulse"),
      f(s.bullet_speed, "bullet_speed"),
      f(s.spread, "spread"),
      f(s.range, "range"),
      i(s.cooldown_ticks, "cooldown_ticks"),
      i(s.phase_ticks, "phase_ticks"),
      i(s.burst_size, "burst_size"),
      i(s.burst_interval, "burst_interval"),
  };
  apply(doc, fields, "boss spec");
  validate(s);
  return s;
}

nlohmann::ordered_json to_json(const Roster& roster) {
  nlohmann::ordered_json j;
  j["version"] = roster.version;
  auto bosses = nlohmann::ordered_json::array();
  for (const auto& s : roster.specs) bosses.push_back(to_json(s));
  j["bosses"] = std::move(bosses);
  return j;
}

Roster roster_from_json(const nlohmann::json& doc, const Roster& base) {
  Roster r = base;
  const std::map<std::string, Setter> fields{
      {"version", [&](const nlohmann::json& v) { r.version = v.get<std::string>(); }},
      {"bosses",
       [&](const nlohmann::json& v) {
         if (!v.is_array()) throw std::invalid_argument("'bosses' must be an array");
         for (const auto& b : v) {
           if (!b.is_object() || !b.contains("boss_id")) throw std::invalid_argument("boss entry needs boss_id");
           const int id = int_of(b["boss_id"], "boss_id");
           r.at(id);
           auto& slot = r.specs[static_cast<std::size_t>(id - 1)];
           slot = boss_spec_from_json(b, slot);
         }
       }},
  };
  apply(doc, fields, "roster");
  return r;
}

}  // namespace evoman
