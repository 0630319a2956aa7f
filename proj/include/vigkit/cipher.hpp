#pragma once

#include <string>

#include "vigkit/keystream.hpp"
#include "vigkit/text.hpp"

namespace vigkit {

namespace detail {

inline void check_key_length(const MessageText& text, const KeyStream& key) {
  if (key.size() != text.letter_count()) {
    throw Error(Errc::KeyLengthMismatch, "key stream",
                "text has " + std::to_string(text.letter_count()) +
                    " letters, key stream has " + std::to_string(key.size()));
  }
}

}  // namespace detail

/// C_i = (P_i + K_i) mod 26 over the letter positions; passthrough bytes
/// are copied and consume no key.
inline MessageText encrypt(const MessageText& plaintext, const KeyStream& key) {
  detail::check_key_length(plaintext, key);
  Letters out;
  out.reserve(key.size());
  const auto& p = plaintext.letters();
  const auto& k = key.extended();
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p[i] + k[i]);
  return plaintext.with_letters(out);
}

/// P_i = (C_i - K_i) mod 26, reduced into [0, 25].
inline MessageText decrypt(const MessageText& ciphertext, const KeyStream& key) {
  detail::check_key_length(ciphertext, key);
  Letters out;
  out.reserve(key.size());
  const auto& c = ciphertext.letters();
  const auto& k = key.extended();
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c[i] - k[i]);
  return ciphertext.with_letters(out);
}

/// Convenience for callers holding only a user key: extends it to the
/// text's letter count first.
inline MessageText encrypt(const MessageText& plaintext, const Letters& user_key, KeyMode mode) {
  return encrypt(plaintext, extend_key(user_key, plaintext.letter_count(), mode));
}

inline MessageText decrypt(const MessageText& ciphertext, const Letters& user_key, KeyMode mode) {
  return decrypt(ciphertext, extend_key(user_key, ciphertext.letter_count(), mode));
}

}  // namespace vigkit
