#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vigkit/base64.hpp"
#include "vigkit/keystream.hpp"
#include "vigkit/text.hpp"
#include "vigkit/threepass.hpp"

namespace vigkit {

// Wire format, one frame per line:
//
//   TPP/1 <session_id> <pass> <mode> <policy> <base64 payload>\n
//   TPP/1 <session_id> ERR <reason>\n
//
// Fields are separated by single spaces. The payload field may be empty.

inline constexpr std::string_view kProtocolVersion = "TPP/1";

struct Frame {
  SessionId session_id;
  int pass_number = 1;
  KeyMode mode = KeyMode::Generated;
  TextPolicy policy{};
  std::string payload;  ///< ciphertext bytes, before base-64

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct ErrorFrame {
  SessionId session_id;
  std::string reason;

  friend bool operator==(const ErrorFrame&, const ErrorFrame&) = default;
};

using WireMessage = std::variant<Frame, ErrorFrame>;

inline std::string encode_frame(const Frame& f) {
  std::string line(kProtocolVersion);
  line += ' ';
  line += f.session_id.str();
  line += ' ';
  line += std::to_string(f.pass_number);
  line += ' ';
  line += mode_tag(f.mode);
  line += ' ';
  line += policy_tag(f.policy);
  line += ' ';
  line += base64::encode(f.payload);
  line += '\n';
  return line;
}

/// Control bytes in the reason would break line framing; they become '?'.
inline std::string encode_error_frame(const ErrorFrame& e) {
  std::string line(kProtocolVersion);
  line += ' ';
  line += e.session_id.str();
  line += " ERR ";
  for (char c : e.reason) line += (c == '\n' || c == '\r') ? '?' : c;
  line += '\n';
  return line;
}

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> out;
  while (out.size() + 1 < max_fields) {
    auto pos = line.find(' ');
    if (pos == std::string_view::npos) break;
    out.push_back(line.substr(0, pos));
    line.remove_prefix(pos + 1);
  }
  out.push_back(line);
  return out;
}

[[noreturn]] inline void malformed(const char* field, const std::string& detail) {
  throw Error(Errc::MalformedFrame, field, detail);
}

}  // namespace detail

/// Parses one line (the trailing linefeed is optional). Every failure is a
/// vigkit::Error naming the offending field.
inline WireMessage decode_line(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (line.find('\n') != std::string_view::npos)
    detail::malformed("line", "embedded linefeed");

  // Version first so that a future header layout reports UnsupportedVersion.
  auto fields = detail::split_spaces(line, 7);
  if (fields[0] != kProtocolVersion) {
    if (fields[0].substr(0, 4) == "TPP/")
      throw Error(Errc::UnsupportedVersion, "version",
                  "unsupported version '" + std::string(fields[0]) + "'");
    detail::malformed("version", "missing TPP/ version tag");
  }
  if (fields.size() < 3) detail::malformed("field count", "too few fields");
  if (!SessionId::valid(fields[1])) detail::malformed("session_id", "expected 16 hex digits");
  SessionId sid(fields[1]);

  if (fields[2] == "ERR") {
    auto rest = detail::split_spaces(line, 4);
    if (rest.size() != 4) detail::malformed("field count", "ERR frame without reason");
    return ErrorFrame{sid, std::string(rest[3])};
  }

  if (fields.size() != 6) {
    detail::malformed("field count", "expected 6 fields, got " + std::to_string(fields.size()));
  }

  Frame f;
  f.session_id = sid;
  if (fields[2].size() != 1 || fields[2][0] < '1' || fields[2][0] > '3')
    detail::malformed("pass_number", "expected 1, 2 or 3");
  f.pass_number = fields[2][0] - '0';
  if (fields[3] != "GEN" && fields[3] != "STD") detail::malformed("mode", "expected GEN or STD");
  f.mode = parse_mode_tag(fields[3]);
  if (fields[4].size() != 2 || (fields[4][0] != 'P' && fields[4][0] != 'S') ||
      (fields[4][1] != 'U' && fields[4][1] != 'P'))
    detail::malformed("policy", "expected PU, PP, SU or SP");
  f.policy = parse_policy_tag(fields[4]);
  auto payload = base64::decode(fields[5]);
  if (!payload) throw Error(Errc::MalformedPayload, "payload", "invalid base-64");
  f.payload = std::move(*payload);
  return f;
}

/// Like decode_line, but an ERR line surfaces as RemoteError.
inline Frame decode_frame(std::string_view line) {
  auto msg = decode_line(line);
  if (auto* err = std::get_if<ErrorFrame>(&msg))
    throw Error(Errc::RemoteError, err->session_id.str(), err->reason);
  return std::get<Frame>(std::move(msg));
}

}  // namespace vigkit
