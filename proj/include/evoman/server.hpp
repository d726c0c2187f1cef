#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "evoman/session.hpp"

namespace evoman {

inline constexpr std::uint16_t kDefaultPort = 8808;

/// LineChannel over a connected stream socket. Owns the descriptor.
class SocketChannel final : public LineChannel {
 public:
  explicit SocketChannel(int fd, std::string buffered = {});
  ~SocketChannel() override;
  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;

  std::optional<std::string> read_line(std::optional<std::chrono::milliseconds> timeout) override;
  void write_line(std::string_view line) override;

  /// Reads until "\r\n\r\n" (HTTP request head).
  std::optional<std::string> read_http_head(std::chrono::milliseconds timeout);
  /// Reads exactly n bytes, nullopt on end of stream.
  std::optional<std::string> read_exact(std::size_t n, std::optional<std::chrono::milliseconds> timeout);
  void write_raw(std::string_view bytes);
  int fd() const { return fd_; }

 private:
  bool fill(std::optional<std::chrono::milliseconds> timeout);

  int fd_;
  std::string buffer_;
};

/// RFC 6455 text-frame transport; each frame carries one message line.
class WebSocketChannel final : public LineChannel {
 public:
  explicit WebSocketChannel(std::unique_ptr<SocketChannel> socket) : socket_(std::move(socket)) {}

  /// Completes the server side of the opening handshake. Returns false (and
  /// answers 400) when the request is not a WebSocket upgrade.
  bool accept(const std::string& request_head);

  std::optional<std::string> read_line(std::optional<std::chrono::milliseconds> timeout) override;
  void write_line(std::string_view line) override;

 private:
  std::unique_ptr<SocketChannel> socket_;
};

/// Sec-WebSocket-Accept value for a client key.
std::string websocket_accept_key(std::string_view client_key);

/// Client-side helper: connects to host:port. Throws std::runtime_error.
int connect_tcp(const std::string& host, std::uint16_t port);

struct ServerOptions {
  std::string bind_address = "127.0.0.1";
  std::uint16_t port = kDefaultPort;  // 0 picks a free port
  SessionOptions session;
};

/// Lockstep step-server. Every connection runs its own session thread; raw
/// TCP clients speak newline-delimited messages, browsers connect with a
/// WebSocket upgrade on the same port.
class StepServer {
 public:
  /// Binds and listens. Throws std::system_error if the address is in use.
  explicit StepServer(ServerOptions options);
  ~StepServer();
  StepServer(const StepServer&) = delete;
  StepServer& operator=(const StepServer&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accepts connections until stop().
  void serve();
  void stop();

 private:
  void handle(int fd);

  ServerOptions options_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::set<int> clients_;
  std::vector<std::thread> workers_;
};

}  // namespace evoman
