#include "evoman/session.hpp"

#include "evoman/evaluation.hpp"
#include "evoman/match.hpp"

namespace evoman {
namespace {

void send(LineChannel& ch, const wire::Message& m) { ch.write_line(wire::encode(m)); }

void send_error(LineChannel& ch, std::string_view code, const std::string& message) {
  send(ch, wire::Error{std::string(code), message});
}

// nullopt on end of stream.
std::optional<wire::Message> receive(LineChannel& ch, std::optional<std::chrono::milliseconds> timeout) {
  std::optional<std::string> line;
  try {
    line = ch.read_line(timeout);
  } catch (const ChannelTimeout&) {
    throw SessionError(std::string(wire::code::kTimeout), "no action within the timeout");
  }
  if (!line) return std::nullopt;
  try {
    return wire::decode(*line);
  } catch (const ParseError& e) {
    throw SessionError(std::string(wire::code::kMalformed), e.what());
  }
}

}  // namespace

ActionSet RemoteController::act(const SimState& state, const SensorVector&) {
  send(channel_, wire::make_state(state));
  ++states_sent_;
  auto msg = receive(channel_, timeout_);
  if (!msg) throw SessionError("closed", "peer closed the connection", false);
  if (std::holds_alternative<wire::Close>(*msg)) throw SessionError("closed", "peer sent close", false);
  const auto* action = std::get_if<wire::Action>(&*msg);
  if (!action) throw SessionError(std::string(wire::code::kUnexpected), "expected an action message");
  if (action->tick != state.tick)
    throw SessionError(std::string(wire::code::kDesync), "action tick " + std::to_string(action->tick) +
                                                             " does not match state tick " +
                                                             std::to_string(state.tick));
  return action->action;
}

void run_session(LineChannel& channel, const SessionOptions& options) {
  try {
    for (;;) {
      auto msg = receive(channel, std::nullopt);
      if (!msg || std::holds_alternative<wire::Close>(*msg)) return;
      const auto* reset = std::get_if<wire::Reset>(&*msg);
      if (!reset) {
        const bool is_action = std::holds_alternative<wire::Action>(*msg);
        send_error(channel, is_action ? wire::code::kNoMatch : wire::code::kUnexpected,
                   is_action ? "no match in progress, send reset first" : "expected reset or close");
        return;
      }
      const int boss = reset->boss_id.value_or(options.default_boss);
      if (boss < 1 || boss > kBossCount) {
        send_error(channel, wire::code::kInvalidArgument, "boss must be in 1..8");
        return;
      }
      RemoteController remote(channel, options.action_timeout);
      SimState last;
      const auto result = run_match(remote, boss, options.config, reset->seed, *options.roster,
                                    [&](const SimState&, const ActionSet&, const SimState& after) { last = after; });
      send(channel, wire::make_state(last));
      send(channel, wire::Result{result.outcome, result.player_energy, result.enemy_energy, gain(result), result.ticks});
    }
  } catch (const SessionError& e) {
    if (e.notify()) send_error(channel, e.code(), e.what());
  } catch (const MatchAbortError&) {
    // transport failure while relaying; the peer is gone
  }
}

}  // namespace evoman
