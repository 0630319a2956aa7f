#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vigkit {

enum class Errc {
  InvalidCharacter,
  EmptyKey,
  KeyLengthMismatch,
  ProtocolViolation,
  PolicyMismatch,
  UnsupportedVersion,
  MalformedFrame,
  MalformedPayload,
  InsufficientData,
  TimedOut,
  RemoteError,
  ConnectionError,
  IoError,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidCharacter: return "InvalidCharacter";
    case Errc::EmptyKey: return "EmptyKey";
    case Errc::KeyLengthMismatch: return "KeyLengthMismatch";
    case Errc::ProtocolViolation: return "ProtocolViolation";
    case Errc::PolicyMismatch: return "PolicyMismatch";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::MalformedFrame: return "MalformedFrame";
    case Errc::MalformedPayload: return "MalformedPayload";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::TimedOut: return "TimedOut";
    case Errc::RemoteError: return "RemoteError";
    case Errc::ConnectionError: return "ConnectionError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `code()` identifies the
/// failure class; `field()` names the offending input element when there is
/// one (frame field, key, address...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string field, const std::string& detail)
      : std::runtime_error(compose(code, field, detail)),
        code_(code),
        field_(std::move(field)) {}

  Errc code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string compose(Errc code, const std::string& field,
                             const std::string& detail) {
    std::string msg(errc_name(code));
    if (!field.empty()) msg += " (" + field + ")";
    if (!detail.empty()) msg += ": " + detail;
    return msg;
  }

  Errc code_;
  std::string field_;
};

}  // namespace vigkit
