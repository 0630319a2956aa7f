#pragma once

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "vigkit/error.hpp"

namespace vigkit::net {

using Millis = std::chrono::milliseconds;

struct HostPort {
  std::string host;
  std::string port;
};

/// "host:port", "[v6addr]:port" or ":port" (wildcard).
inline HostPort parse_host_port(std::string_view address) {
  auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == address.size())
    throw Error(Errc::InvalidArgument, std::string(address), "expected HOST:PORT");
  std::string host(address.substr(0, colon));
  std::string port(address.substr(colon + 1));
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
    host = host.substr(1, host.size() - 2);
  for (char c : port)
    if (c < '0' || c > '9') throw Error(Errc::InvalidArgument, std::string(address), "bad port");
  return {host, port};
}

inline std::string errno_text(int err) { return std::strerror(err); }

/// Owning file descriptor for a stream socket.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) noexcept : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { reset(); }

  int fd() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }

  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

  void shutdown_write() noexcept {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
  }

  void write_all(std::string_view bytes) const {
    while (!bytes.empty()) {
      ssize_t n = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(Errc::ConnectionError, "send", errno_text(errno));
      }
      bytes.remove_prefix(static_cast<std::size_t>(n));
    }
  }

  /// Returns false on timeout.
  bool wait_readable(Millis timeout) const {
    pollfd p{fd_, POLLIN, 0};
    for (;;) {
      int r = ::poll(&p, 1, static_cast<int>(timeout.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r < 0) throw Error(Errc::ConnectionError, "poll", errno_text(errno));
      return r > 0;
    }
  }

 private:
  int fd_ = -1;
};

/// Buffers a socket's input and hands it out one line at a time.
class LineReader {
 public:
  static constexpr std::size_t kMaxLine = 1 << 20;

  explicit LineReader(const Socket& sock) : sock_(&sock) {}

  /// Next line including its linefeed; nullopt on orderly EOF. A trailing
  /// unterminated fragment at EOF is returned as-is.
  std::optional<std::string> read_line(Millis timeout) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl + 1);
        buffer_.erase(0, nl + 1);
        return line;
      }
      if (eof_) {
        if (buffer_.empty()) return std::nullopt;
        return std::exchange(buffer_, {});
      }
      if (buffer_.size() > kMaxLine)
        throw Error(Errc::MalformedFrame, "line", "line exceeds maximum length");
      auto left = std::chrono::duration_cast<Millis>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0 || !sock_->wait_readable(left))
        throw Error(Errc::TimedOut, "read", "no data within timeout");
      char chunk[4096];
      ssize_t n = ::recv(sock_->fd(), chunk, sizeof chunk, 0);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw Error(Errc::ConnectionError, "recv", errno_text(errno));
      }
      if (n == 0)
        eof_ = true;
      else
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  const Socket* sock_;
  std::string buffer_;
  bool eof_ = false;
};

namespace detail {

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) ::freeaddrinfo(head);
  }
};

inline AddrInfo resolve(const HostPort& hp, bool passive, const std::string& address) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  AddrInfo info;
  const char* host = hp.host.empty() ? nullptr : hp.host.c_str();
  int rc = ::getaddrinfo(host, hp.port.c_str(), &hints, &info.head);
  if (rc != 0) throw Error(Errc::ConnectionError, address, ::gai_strerror(rc));
  return info;
}

}  // namespace detail

class Listener {
 public:
  explicit Listener(const std::string& address) {
    auto hp = parse_host_port(address);
    auto info = detail::resolve(hp, true, address);
    int last_err = 0;
    for (auto* ai = info.head; ai; ai = ai->ai_next) {
      Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
      if (!s.valid()) {
        last_err = errno;
        continue;
      }
      int one = 1;
      ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
      if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(s.fd(), 64) == 0) {
        sock_ = std::move(s);
        break;
      }
      last_err = errno;
    }
    if (!sock_.valid()) throw Error(Errc::ConnectionError, address, errno_text(last_err));
  }

  /// Bound port; useful after listening on port 0.
  int port() const {
    sockaddr_storage ss{};
    socklen_t len = sizeof ss;
    if (::getsockname(sock_.fd(), reinterpret_cast<sockaddr*>(&ss), &len) != 0)
      throw Error(Errc::ConnectionError, "getsockname", errno_text(errno));
    if (ss.ss_family == AF_INET6) return ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port);
    return ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
  }

  /// nullopt on timeout.
  std::optional<Socket> accept(Millis timeout) const {
    if (!sock_.wait_readable(timeout)) return std::nullopt;
    int fd = ::accept4(sock_.fd(), nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) {
      if (errno == EINTR || errno == EAGAIN || errno == ECONNABORTED) return std::nullopt;
      throw Error(Errc::ConnectionError, "accept", errno_text(errno));
    }
    return Socket(fd);
  }

 private:
  Socket sock_;
};

/// Connects with a deadline; the returned socket is in blocking mode.
inline Socket connect_to(const std::string& address, Millis timeout) {
  auto hp = parse_host_port(address);
  auto info = detail::resolve(hp, false, address);
  std::string last = "no usable address";
  for (auto* ai = info.head; ai; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
    if (!s.valid()) continue;
    int flags = ::fcntl(s.fd(), F_GETFL, 0);
    ::fcntl(s.fd(), F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(s.fd(), ai->ai_addr, ai->ai_addrlen);
    if (rc != 0 && errno != EINPROGRESS) {
      last = errno_text(errno);
      continue;
    }
    if (rc != 0) {
      pollfd p{s.fd(), POLLOUT, 0};
      int r = ::poll(&p, 1, static_cast<int>(timeout.count()));
      if (r == 0) throw Error(Errc::TimedOut, address, "connect timed out");
      int err = 0;
      socklen_t len = sizeof err;
      ::getsockopt(s.fd(), SOL_SOCKET, SO_ERROR, &err, &len);
      if (r < 0 || err != 0) {
        last = errno_text(r < 0 ? errno : err);
        continue;
      }
    }
    ::fcntl(s.fd(), F_SETFL, flags);
    return s;
  }
  throw Error(Errc::ConnectionError, address, last);
}

}  // namespace vigkit::net
