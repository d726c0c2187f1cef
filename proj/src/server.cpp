#include "evoman/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <system_error>

#include <openssl/evp.h>
#include <openssl/sha.h>

namespace evoman {
namespace {

constexpr std::string_view kWsGuid = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";
constexpr std::size_t kMaxLine = 1 << 20;

std::system_error sys_error(const std::string& what) { return {errno, std::generic_category(), what}; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Header value by case-insensitive name, empty when absent.
std::string header(const std::string& head, const std::string& name) {
  const std::string want = lower(name);
  std::size_t pos = head.find("\r\n");
  while (pos != std::string::npos && pos + 2 < head.size()) {
    const std::size_t start = pos + 2;
    const std::size_t end = head.find("\r\n", start);
    const std::string line = head.substr(start, end == std::string::npos ? std::string::npos : end - start);
    const auto colon = line.find(':');
    if (colon != std::string::npos && lower(trim(line.substr(0, colon))) == want) return trim(line.substr(colon + 1));
    pos = end;
  }
  return {};
}

}  // namespace

SocketChannel::SocketChannel(int fd, std::string buffered) : fd_(fd), buffer_(std::move(buffered)) {}

SocketChannel::~SocketChannel() {
  if (fd_ >= 0) ::close(fd_);
}

bool SocketChannel::fill(std::optional<std::chrono::milliseconds> timeout) {
  pollfd p{fd_, POLLIN, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, timeout ? static_cast<int>(timeout->count()) : -1);
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0) throw sys_error("poll");
    if (rc == 0) throw ChannelTimeout("read timed out");
    break;
  }
  char buf[4096];
  for (;;) {
    const ssize_t n = ::recv(fd_, buf, sizeof buf, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer_.append(buf, static_cast<std::size_t>(n));
    return true;
  }
}

std::optional<std::string> SocketChannel::read_line(std::optional<std::chrono::milliseconds> timeout) {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (buffer_.size() > kMaxLine) throw std::runtime_error("line too long");
    if (!fill(timeout)) return std::nullopt;
  }
}

std::optional<std::string> SocketChannel::read_http_head(std::chrono::milliseconds timeout) {
  for (;;) {
    const auto end = buffer_.find("\r\n\r\n");
    if (end != std::string::npos) {
      std::string head = buffer_.substr(0, end + 4);
      buffer_.erase(0, end + 4);
      return head;
    }
    if (buffer_.size() > 16384) return std::nullopt;
    if (!fill(timeout)) return std::nullopt;
  }
}

std::optional<std::string> SocketChannel::read_exact(std::size_t n, std::optional<std::chrono::milliseconds> timeout) {
  while (buffer_.size() < n)
    if (!fill(timeout)) return std::nullopt;
  std::string out = buffer_.substr(0, n);
  buffer_.erase(0, n);
  return out;
}

void SocketChannel::write_raw(std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) throw sys_error("send");
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

void SocketChannel::write_line(std::string_view line) {
  std::string out(line);
  out += '\n';
  write_raw(out);
}

std::string websocket_accept_key(std::string_view client_key) {
  const std::string input = std::string(client_key) + std::string(kWsGuid);
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(input.data()), input.size(), digest);
  unsigned char out[4 * ((SHA_DIGEST_LENGTH + 2) / 3) + 1];
  const int len = EVP_EncodeBlock(out, digest, SHA_DIGEST_LENGTH);
  return std::string(reinterpret_cast<char*>(out), static_cast<std::size_t>(len));
}

bool WebSocketChannel::accept(const std::string& head) {
  const std::string key = header(head, "Sec-WebSocket-Key");
  if (key.empty() || lower(header(head, "Upgrade")) != "websocket") {
    socket_->write_raw("HTTP/1.1 400 Bad Request\r\nContent-Length: 0\r\nConnection: close\r\n\r\n");
    return false;
  }
  socket_->write_raw("HTTP/1.1 101 Switching Protocols\r\nUpgrade: websocket\r\nConnection: Upgrade\r\n"
                     "Sec-WebSocket-Accept: " +
                     websocket_accept_key(key) + "\r\n\r\n");
  return true;
}

std::optional<std::string> WebSocketChannel::read_line(std::optional<std::chrono::milliseconds> timeout) {
  std::string message;
  for (;;) {
    const auto hdr = socket_->read_exact(2, timeout);
    if (!hdr) return std::nullopt;
    const auto b0 = static_cast<unsigned char>((*hdr)[0]);
    const auto b1 = static_cast<unsigned char>((*hdr)[1]);
    const bool fin = b0 & 0x80;
    const int opcode = b0 & 0x0f;
    const bool masked = b1 & 0x80;
    std::uint64_t len = b1 & 0x7f;
    if (len == 126 || len == 127) {
      const auto ext = socket_->read_exact(len == 126 ? 2 : 8, timeout);
      if (!ext) return std::nullopt;
      len = 0;
      for (unsigned char c : *ext) len = (len << 8) | c;
    }
    if (len > kMaxLine) throw std::runtime_error("websocket frame too large");
    std::string mask(4, '\0');
    if (masked) {
      auto m = socket_->read_exact(4, timeout);
      if (!m) return std::nullopt;
      mask = *m;
    }
    auto payload = socket_->read_exact(static_cast<std::size_t>(len), timeout);
    if (!payload) return std::nullopt;
    if (masked)
      for (std::size_t i = 0; i < payload->size(); ++i) (*payload)[i] = static_cast<char>((*payload)[i] ^ mask[i % 4]);

    if (opcode == 0x8) {  // close
      socket_->write_raw(std::string("\x88\x00", 2));
      return std::nullopt;
    }
    if (opcode == 0x9) {  // ping
      std::string pong("\x8a", 1);
      pong += static_cast<char>(payload->size());
      socket_->write_raw(pong + *payload);
      continue;
    }
    if (opcode == 0xa) continue;  // pong
    message += *payload;
    if (fin) {
      while (!message.empty() && (message.back() == '\n' || message.back() == '\r')) message.pop_back();
      return message;
    }
  }
}

void WebSocketChannel::write_line(std::string_view line) {
  std::string frame("\x81", 1);
  const auto n = line.size();
  if (n < 126) {
    frame += static_cast<char>(n);
  } else if (n <= 0xffff) {
    frame += static_cast<char>(126);
    frame += static_cast<char>((n >> 8) & 0xff);
    frame += static_cast<char>(n & 0xff);
  } else {
    frame += static_cast<char>(127);
    for (int i = 7; i >= 0; --i) frame += static_cast<char>((static_cast<std::uint64_t>(n) >> (8 * i)) & 0xff);
  }
  frame += line;
  socket_->write_raw(frame);
}

int connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
    throw std::runtime_error("resolve " + host + ": " + gai_strerror(rc));
  int fd = -1;
  for (auto* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw std::runtime_error("cannot connect to " + host + ":" + service);
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return fd;
}

StepServer::StepServer(ServerOptions options) : options_(std::move(options)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw sys_error("socket");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw std::invalid_argument("bind address must be an IPv4 literal: " + options_.bind_address);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    auto err = sys_error("bind " + options_.bind_address + ":" + std::to_string(options_.port));
    ::close(listen_fd_);
    throw err;
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

StepServer::~StepServer() {
  stop();
  for (auto& t : workers_)
    if (t.joinable()) t.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void StepServer::serve() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, 100);
    if (rc <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard lock(mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    clients_.insert(fd);
    workers_.emplace_back([this, fd] { handle(fd); });
  }
}

void StepServer::stop() {
  stopping_ = true;
  std::lock_guard lock(mutex_);
  for (int fd : clients_) ::shutdown(fd, SHUT_RDWR);
}

void StepServer::handle(int fd) {
  auto socket = std::make_unique<SocketChannel>(fd);
  try {
    // Browsers open with an HTTP upgrade; everything else is raw lines.
    char first[4] = {};
    pollfd p{fd, POLLIN, 0};
    ssize_t n = 0;
    if (::poll(&p, 1, -1) > 0) n = ::recv(fd, first, sizeof first, MSG_PEEK | MSG_WAITALL);
    if (n == 4 && std::string_view(first, 4) == "GET ") {
      auto head = socket->read_http_head(std::chrono::seconds(10));
      if (head) {
        WebSocketChannel ws(std::move(socket));
        if (ws.accept(*head)) run_session(ws, options_.session);
      }
    } else if (n > 0) {
      run_session(*socket, options_.session);
    }
  } catch (const std::exception&) {
    // connection-level failure; drop the client
  }
  std::lock_guard lock(mutex_);
  clients_.erase(fd);
}

}  // namespace evoman
