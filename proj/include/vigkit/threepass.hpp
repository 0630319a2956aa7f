#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "vigkit/cipher.hpp"

namespace vigkit {

enum class Role { Sender, Recipient };

/// Sender:    AwaitStart -> AwaitPass2 -> Done
/// Recipient: AwaitPass1 -> AwaitPass3 -> Done
enum class Phase { AwaitStart, AwaitPass1, AwaitPass2, AwaitPass3, Done };

inline std::string_view phase_name(Phase p) noexcept {
  switch (p) {
    case Phase::AwaitStart: return "AwaitStart";
    case Phase::AwaitPass1: return "AwaitPass1";
    case Phase::AwaitPass2: return "AwaitPass2";
    case Phase::AwaitPass3: return "AwaitPass3";
    case Phase::Done: return "Done";
  }
  return "?";
}

/// Opaque 16-hex-digit session identifier, chosen by the initiator.
class SessionId {
 public:
  static constexpr std::size_t kDigits = 16;

  SessionId() : text_(kDigits, '0') {}

  explicit SessionId(std::string_view text) : text_(text) {
    if (!valid(text))
      throw Error(Errc::InvalidArgument, "session_id",
                  "expected 16 hex digits, got '" + std::string(text) + "'");
  }

  static bool valid(std::string_view text) noexcept {
    if (text.size() != kDigits) return false;
    for (char c : text) {
      bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
      if (!hex) return false;
    }
    return true;
  }

  template <class Rng>
  static SessionId generate(Rng& rng) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::uint64_t v = std::uniform_int_distribution<std::uint64_t>{}(rng);
    std::string s(kDigits, '0');
    for (std::size_t i = 0; i < kDigits; ++i) s[kDigits - 1 - i] = kHex[(v >> (4 * i)) & 0xF];
    return SessionId(s);
  }

  const std::string& str() const noexcept { return text_; }

  friend auto operator<=>(const SessionId&, const SessionId&) = default;

 private:
  std::string text_;
};

/// One party's half of a three-pass exchange. Holds the party's own key,
/// which never leaves the session: only ciphertexts are returned.
///
/// Each pass re-derives the key stream from the user key and the incoming
/// letter count. All three ciphertexts share the plaintext's letter count
/// and mask, so the stream used in pass 3 lines up with pass 1.
class ThreePassSession {
 public:
  ThreePassSession(Role role, Letters own_key, KeyMode mode, TextPolicy policy = {},
                   SessionId id = {})
      : role_(role),
        own_key_(std::move(own_key)),
        mode_(mode),
        policy_(policy),
        id_(std::move(id)),
        phase_(role == Role::Sender ? Phase::AwaitStart : Phase::AwaitPass1) {
    if (own_key_.empty()) throw Error(Errc::EmptyKey, "key", "key must not be empty");
  }

  ThreePassSession(Role role, std::string_view own_key, KeyMode mode, TextPolicy policy = {},
                   SessionId id = {})
      : ThreePassSession(role, parse_key(own_key), mode, policy, std::move(id)) {}

  /// Sender, first pass: encrypts the plaintext with the sender key.
  MessageText sender_pass1(const MessageText& plaintext) {
    expect(Role::Sender, Phase::AwaitStart, "sender_pass1");
    auto c1 = encrypt(plaintext, stream_for(plaintext));
    phase_ = Phase::AwaitPass2;
    return c1;
  }

  /// Recipient, second pass: adds the recipient's layer on top of c1.
  MessageText recipient_pass2(const MessageText& c1) {
    expect(Role::Recipient, Phase::AwaitPass1, "recipient_pass2");
    auto c2 = encrypt(c1, stream_for(c1));
    phase_ = Phase::AwaitPass3;
    return c2;
  }

  /// Sender, third pass: removes the sender's layer from c2.
  MessageText sender_pass3(const MessageText& c2) {
    expect(Role::Sender, Phase::AwaitPass2, "sender_pass3");
    auto c3 = decrypt(c2, stream_for(c2));
    phase_ = Phase::Done;
    return c3;
  }

  /// Recipient, final step: removes the recipient's layer, yielding the
  /// plaintext.
  MessageText recipient_finish(const MessageText& c3) {
    expect(Role::Recipient, Phase::AwaitPass3, "recipient_finish");
    auto plain = decrypt(c3, stream_for(c3));
    phase_ = Phase::Done;
    result_ = plain;
    return plain;
  }

  Role role() const noexcept { return role_; }
  Phase phase() const noexcept { return phase_; }
  KeyMode mode() const noexcept { return mode_; }
  const TextPolicy& policy() const noexcept { return policy_; }
  const SessionId& id() const noexcept { return id_; }
  const std::optional<MessageText>& result() const noexcept { return result_; }

 private:
  void expect(Role role, Phase phase, std::string_view step) const {
    if (role_ != role || phase_ != phase) {
      throw Error(Errc::ProtocolViolation, std::string(step),
                  std::string(role_ == Role::Sender ? "sender" : "recipient") +
                      " session in phase " + std::string(phase_name(phase_)));
    }
  }

  KeyStream stream_for(const MessageText& text) const {
    return extend_key(own_key_, text.letter_count(), mode_);
  }

  Role role_;
  Letters own_key_;
  KeyMode mode_;
  TextPolicy policy_;
  SessionId id_;
  Phase phase_;
  std::optional<MessageText> result_;
};

struct ExchangeTranscript {
  MessageText first;   ///< sender -> recipient
  MessageText second;  ///< recipient -> sender
  MessageText third;   ///< sender -> recipient
  MessageText recovered;
};

/// Key, mode and text policy of one party.
struct PartyConfig {
  std::string key;
  KeyMode mode = KeyMode::Generated;
  TextPolicy policy{};
};

/// Runs all four steps in-process. Each party parses what it receives under
/// its own policy, as it would off the wire. Throws PolicyMismatch when the
/// recovered text differs from the sender's normalized plaintext.
inline ExchangeTranscript run_local_exchange(std::string_view plaintext, const PartyConfig& sender,
                                             const PartyConfig& recipient) {
  ThreePassSession tx(Role::Sender, sender.key, sender.mode, sender.policy);
  ThreePassSession rx(Role::Recipient, recipient.key, recipient.mode, recipient.policy);

  auto plain = MessageText::parse(plaintext, sender.policy);
  ExchangeTranscript t;
  t.first = tx.sender_pass1(plain);
  t.second = MessageText::parse(t.first.str(), recipient.policy);
  t.second = rx.recipient_pass2(t.second);
  t.third = tx.sender_pass3(MessageText::parse(t.second.str(), sender.policy));
  t.recovered = rx.recipient_finish(MessageText::parse(t.third.str(), recipient.policy));

  if (t.recovered.str() != plain.str()) {
    throw Error(Errc::PolicyMismatch, "exchange",
                "recovered text differs from the plaintext; parties disagree on key mode "
                "or text policy");
  }
  return t;
}

inline ExchangeTranscript run_local_exchange(std::string_view plaintext,
                                             std::string_view sender_key,
                                             std::string_view recipient_key, KeyMode mode,
                                             TextPolicy policy = {}) {
  return run_local_exchange(plaintext, PartyConfig{std::string(sender_key), mode, policy},
                            PartyConfig{std::string(recipient_key), mode, policy});
}

}  // namespace vigkit
