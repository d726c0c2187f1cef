#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "evoman/bosses.hpp"
#include "evoman/controllers.hpp"
#include "evoman/errors.hpp"
#include "evoman/wire.hpp"

namespace evoman {

/// Duplex line transport. read_line returns std::nullopt on end of stream
/// and throws ChannelTimeout when `timeout` elapses first.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual std::optional<std::string> read_line(std::optional<std::chrono::milliseconds> timeout) = 0;
  virtual void write_line(std::string_view line) = 0;
};

class ChannelTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Aborts the current match and carries the wire error code to report.
/// `notify` is false when the peer is already gone.
class SessionError : public MatchAbortError {
 public:
  SessionError(std::string code, const std::string& message, bool notify = true)
      : MatchAbortError(message), code_(std::move(code)), notify_(notify) {}

  const std::string& code() const { return code_; }
  bool notify() const { return notify_; }

 private:
  std::string code_;
  bool notify_;
};

/// Controller whose decisions come from a peer: every act() sends a State
/// message and blocks for the Action of the same tick. Used for remote
/// agents and, with the timeout disabled, for human play.
class RemoteController final : public Controller {
 public:
  RemoteController(LineChannel& channel, std::optional<std::chrono::milliseconds> timeout)
      : channel_(channel), timeout_(timeout) {}

  ActionSet act(const SimState& state, const SensorVector& raw_sensors) override;

  std::size_t states_sent() const { return states_sent_; }

 private:
  LineChannel& channel_;
  std::optional<std::chrono::milliseconds> timeout_;
  std::size_t states_sent_ = 0;
};

/// Human play is a remote session with no action timeout.
inline RemoteController make_human_relay(LineChannel& channel) { return RemoteController(channel, std::nullopt); }

struct SessionOptions {
  MatchConfig config;
  const Roster* roster = &default_roster();
  int default_boss = 1;
  std::optional<std::chrono::milliseconds> action_timeout = std::chrono::seconds(30);
};

/// Serves one client until it closes, sends Close, or errs. Each Reset
/// starts a lockstep match; the final State is followed by a Result.
void run_session(LineChannel& channel, const SessionOptions& options);

}  // namespace evoman
