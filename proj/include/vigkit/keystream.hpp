#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "vigkit/alphabet.hpp"
#include "vigkit/error.hpp"

namespace vigkit {

enum class KeyMode {
  StandardRepeat,  ///< key letters repeated cyclically
  Generated,       ///< key letters continued by the keystream recurrence
};

inline std::string mode_tag(KeyMode m) {
  return m == KeyMode::Generated ? "GEN" : "STD";
}

inline KeyMode parse_mode_tag(std::string_view tag) {
  if (tag == "GEN") return KeyMode::Generated;
  if (tag == "STD") return KeyMode::StandardRepeat;
  throw Error(Errc::InvalidArgument, "mode",
              "unknown mode tag '" + std::string(tag) + "'");
}

/// Validates a user key: non-empty, letters only (either case).
inline Letters parse_key(std::string_view key) {
  if (key.empty()) throw Error(Errc::EmptyKey, "key", "key must not be empty");
  try {
    return letters_from_string(key);
  } catch (const Error& e) {
    throw Error(Errc::InvalidCharacter, "key", e.what());
  }
}

/// User key plus its extension to a fixed number of letters.
class KeyStream {
 public:
  KeyStream(Letters user_key, Letters extended, KeyMode mode)
      : user_key_(std::move(user_key)), extended_(std::move(extended)), mode_(mode) {}

  const Letters& user_key() const noexcept { return user_key_; }
  const Letters& extended() const noexcept { return extended_; }
  KeyMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return extended_.size(); }
  std::string str() const { return to_string(extended_); }

 private:
  Letters user_key_;
  Letters extended_;
  KeyMode mode_;
};

/// Extends `user_key` to exactly `target_len` letters.
///
/// While i < len(user_key) both modes copy the user key, so a key at least
/// as long as the text is simply truncated. Past that point:
///   StandardRepeat: ext[i] = user_key[i mod len(user_key)]
///   Generated:      ext[i] = (ext[i-1] + i) mod 26
/// Positions are 0-based. The Generated form reproduces MYCODE -> MYCODEKRZI.
inline KeyStream extend_key(const Letters& user_key, std::size_t target_len, KeyMode mode) {
  if (user_key.empty()) throw Error(Errc::EmptyKey, "key", "key must not be empty");
  Letters ext;
  ext.reserve(target_len);
  for (std::size_t i = 0; i < target_len; ++i) {
    if (i < user_key.size())
      ext.push_back(user_key[i]);
    else if (mode == KeyMode::StandardRepeat)
      ext.push_back(user_key[i % user_key.size()]);
    else
      ext.push_back(LetterIndex::wrap(static_cast<long long>(ext[i - 1].value()) +
                                      static_cast<long long>(i % kAlphabetSize)));
  }
  return KeyStream(user_key, std::move(ext), mode);
}

inline KeyStream extend_key(std::string_view user_key, std::size_t target_len, KeyMode mode) {
  return extend_key(parse_key(user_key), target_len, mode);
}

}  // namespace vigkit
