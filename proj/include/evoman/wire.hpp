#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "evoman/sensors.hpp"
#include "evoman/state.hpp"

namespace evoman::wire {

// One JSON object per line, keys in the order listed in docs/protocol.md.

// client -> server
struct Reset {
  std::optional<int> boss_id;  // server default when absent
  std::uint64_t seed = 0;
  bool operator==(const Reset&) const = default;
};

struct Action {
  std::uint32_t tick = 0;
  ActionSet action;
  bool operator==(const Action&) const = default;
};

struct Close {
  bool operator==(const Close&) const = default;
};

// server -> client
struct Body {
  double x = 0.0;
  double y = 0.0;
  int facing = 1;
  bool operator==(const Body&) const = default;
};

struct BulletView {
  double x = 0.0;
  double y = 0.0;
  Owner owner = Owner::Enemy;
  bool operator==(const BulletView&) const = default;
};

struct State {
  std::uint32_t tick = 0;
  Body player;
  Body enemy;
  std::vector<BulletView> bullets;  // alive bullets, slot order
  SensorVector sensors;             // raw, un-normalized
  std::int32_t player_energy = 0;
  std::int32_t enemy_energy = 0;
  bool operator==(const State&) const = default;
};

struct Result {
  Outcome outcome = Outcome::Ongoing;
  std::int32_t ep = 0;
  std::int32_t ee = 0;
  double gain = 0.0;
  std::uint32_t ticks = 0;
  bool operator==(const Result&) const = default;
};

struct Error {
  std::string code;
  std::string message;
  bool operator==(const Error&) const = default;
};

using Message = std::variant<Reset, Action, Close, State, Result, Error>;

/// Codes carried by Error messages.
namespace code {
inline constexpr std::string_view kMalformed = "malformed";
inline constexpr std::string_view kDesync = "desync";
inline constexpr std::string_view kTimeout = "timeout";
inline constexpr std::string_view kNoMatch = "no_match";
inline constexpr std::string_view kInvalidArgument = "invalid_argument";
inline constexpr std::string_view kUnexpected = "unexpected";
}  // namespace code

State make_state(const SimState& state);

nlohmann::ordered_json to_json(const Message& msg);
/// Canonical single-line encoding, no trailing newline.
std::string encode(const Message& msg);
/// Throws ParseError.
Message decode(std::string_view line);
Message from_json(const nlohmann::json& doc);

}  // namespace evoman::wire
