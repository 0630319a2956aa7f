#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "vigkit/frame.hpp"
#include "vigkit/socket.hpp"
#include "vigkit/threepass.hpp"

namespace vigkit {

inline constexpr std::chrono::milliseconds kDefaultTimeout{10'000};

enum class Direction { Inbound, Outbound };

/// Observes every line sent or received, e.g. to record a transcript.
using WireTap = std::function<void(const SessionId&, Direction, std::string_view line)>;

struct ResponderConfig {
  std::string listen_address = "127.0.0.1:0";
  std::string recipient_key;
  KeyMode mode = KeyMode::Generated;
  TextPolicy policy{};
  std::chrono::milliseconds timeout = kDefaultTimeout;  ///< per-connection idle limit
  std::optional<std::size_t> max_sessions;              ///< stop after this many completions
  std::function<void(const SessionId&, const std::string& plaintext)> sink;
  WireTap tap;
};

/// Recipient side of the protocol. Each connection runs on its own thread and
/// may carry several sessions, told apart by session id; each session is
/// owned by the thread of its connection.
class Responder {
 public:
  explicit Responder(ResponderConfig config)
      : config_(std::move(config)),
        key_(parse_key(config_.recipient_key)),
        listener_(config_.listen_address) {}

  int port() const { return listener_.port(); }

  /// Blocks until stop() is called or max_sessions sessions have completed.
  void serve() {
    std::vector<std::jthread> workers;
    while (!stopping()) {
      auto conn = listener_.accept(kPollSlice);
      if (!conn) continue;
      workers.emplace_back([this, sock = std::move(*conn)]() mutable { handle(std::move(sock)); });
    }
  }

  void stop() noexcept { stop_.store(true); }

  std::size_t completed_sessions() const noexcept { return completed_.load(); }

 private:
  static constexpr std::chrono::milliseconds kPollSlice{50};

  bool stopping() const noexcept {
    return stop_.load() ||
           (config_.max_sessions && completed_.load() >= *config_.max_sessions);
  }

  void tap(const SessionId& sid, Direction dir, std::string_view line) {
    if (!config_.tap) return;
    std::lock_guard lock(mutex_);
    config_.tap(sid, dir, line);
  }

  void send(const net::Socket& sock, const SessionId& sid, const std::string& line) {
    tap(sid, Direction::Outbound, line);
    sock.write_all(line);
  }

  void send_error(const net::Socket& sock, const SessionId& sid, const std::string& reason) {
    send(sock, sid, encode_error_frame(ErrorFrame{sid, reason}));
  }

  void handle(net::Socket sock) {
    try {
      serve_connection(sock);
    } catch (const Error&) {
      // Connection-level failure (peer reset, idle timeout): drop it. Other
      // connections are unaffected.
    }
  }

  void serve_connection(const net::Socket& sock) {
    net::LineReader reader(sock);
    std::map<SessionId, ThreePassSession> sessions;
    auto idle_deadline = std::chrono::steady_clock::now() + config_.timeout;

    for (;;) {
      std::optional<std::string> line;
      try {
        line = reader.read_line(kPollSlice);
      } catch (const Error& e) {
        if (e.code() != Errc::TimedOut) throw;
        if (stopping() || std::chrono::steady_clock::now() > idle_deadline) return;
        continue;
      }
      if (!line) return;
      idle_deadline = std::chrono::steady_clock::now() + config_.timeout;

      WireMessage msg;
      try {
        msg = decode_line(*line);
      } catch (const Error& e) {
        // Unparseable input: no trustworthy session id, so reply on the zero
        // id and close the connection.
        tap(SessionId{}, Direction::Inbound, *line);
        send_error(sock, SessionId{}, e.what());
        return;
      }

      if (auto* err = std::get_if<ErrorFrame>(&msg)) {
        tap(err->session_id, Direction::Inbound, *line);
        sessions.erase(err->session_id);
        continue;
      }
      const auto& frame = std::get<Frame>(msg);
      const auto& sid = frame.session_id;
      tap(sid, Direction::Inbound, *line);

      if (frame.mode != config_.mode) {
        sessions.erase(sid);
        send_error(sock, sid, "mode mismatch");
        continue;
      }
      if (frame.policy != config_.policy) {
        sessions.erase(sid);
        send_error(sock, sid, "policy mismatch");
        continue;
      }

      try {
        if (frame.pass_number == 1) {
          if (sessions.contains(sid)) {
            sessions.erase(sid);
            send_error(sock, sid, "protocol violation: duplicate pass 1");
            continue;
          }
          auto [it, _] = sessions.emplace(
              sid, ThreePassSession(Role::Recipient, key_, config_.mode, config_.policy, sid));
          auto c2 = it->second.recipient_pass2(MessageText::parse(frame.payload, config_.policy));
          send(sock, sid, encode_frame(Frame{sid, 2, config_.mode, config_.policy, c2.str()}));
        } else if (frame.pass_number == 3) {
          auto it = sessions.find(sid);
          if (it == sessions.end()) {
            send_error(sock, sid, "protocol violation: pass 3 without pass 1");
            continue;
          }
          auto plain = it->second.recipient_finish(MessageText::parse(frame.payload, config_.policy));
          sessions.erase(it);
          deliver(sid, plain.str());
        } else {
          sessions.erase(sid);
          send_error(sock, sid, "protocol violation: responder does not accept pass 2");
        }
      } catch (const Error& e) {
        if (e.code() == Errc::ConnectionError) throw;
        sessions.erase(sid);
        send_error(sock, sid, e.what());
      }
    }
  }

  void deliver(const SessionId& sid, const std::string& plaintext) {
    {
      std::lock_guard lock(mutex_);
      if (config_.sink) config_.sink(sid, plaintext);
    }
    completed_.fetch_add(1);
  }

  ResponderConfig config_;
  Letters key_;
  net::Listener listener_;
  std::atomic<bool> stop_{false};
  std::atomic<std::size_t> completed_{0};
  std::mutex mutex_;
};

struct InitiatorConfig {
  std::string connect_address;
  std::string sender_key;
  std::string plaintext;
  KeyMode mode = KeyMode::Generated;
  TextPolicy policy{};
  std::chrono::milliseconds timeout = kDefaultTimeout;
  std::optional<SessionId> session_id;  ///< generated when absent
  std::optional<std::uint64_t> seed;    ///< makes the generated id deterministic
  WireTap tap;
};

/// What the sender sees of an exchange. The plaintext ends up only at the
/// responder.
struct InitiatorTranscript {
  SessionId session_id;
  MessageText first;
  MessageText second;
  MessageText third;
};

/// Sender side: pass 1 out, pass 2 in, pass 3 out, then waits for the
/// responder to close the connection. An ERR reply becomes RemoteError.
inline InitiatorTranscript run_initiator(const InitiatorConfig& config) {
  SessionId sid;
  if (config.session_id) {
    sid = *config.session_id;
  } else if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    sid = SessionId::generate(rng);
  } else {
    std::random_device rd;
    std::mt19937_64 rng((std::uint64_t{rd()} << 32) | rd());
    sid = SessionId::generate(rng);
  }

  // Key and text are validated before any connection is made.
  ThreePassSession session(Role::Sender, config.sender_key, config.mode, config.policy, sid);
  InitiatorTranscript out;
  out.session_id = sid;
  out.first = session.sender_pass1(MessageText::parse(config.plaintext, config.policy));

  auto sock = net::connect_to(config.connect_address, config.timeout);
  net::LineReader reader(sock);
  auto send = [&](const std::string& line) {
    if (config.tap) config.tap(sid, Direction::Outbound, line);
    sock.write_all(line);
  };
  auto receive = [&]() -> std::optional<std::string> {
    auto line = reader.read_line(config.timeout);
    if (line && config.tap) config.tap(sid, Direction::Inbound, *line);
    return line;
  };

  send(encode_frame(Frame{sid, 1, config.mode, config.policy, out.first.str()}));

  auto reply = receive();
  if (!reply) throw Error(Errc::ConnectionError, config.connect_address, "responder closed the connection");
  Frame second = decode_frame(*reply);
  if (second.session_id != sid || second.pass_number != 2)
    throw Error(Errc::ProtocolViolation, "pass_number", "expected pass 2 for this session");
  out.second = MessageText::parse(second.payload, config.policy);
  out.third = session.sender_pass3(out.second);

  send(encode_frame(Frame{sid, 3, config.mode, config.policy, out.third.str()}));
  sock.shutdown_write();

  if (auto trailing = receive()) {
    decode_frame(*trailing);  // throws RemoteError for ERR lines
    throw Error(Errc::ProtocolViolation, "frame", "unexpected frame after pass 3");
  }
  return out;
}

}  // namespace vigkit
