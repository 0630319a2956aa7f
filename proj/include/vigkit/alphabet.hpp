#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vigkit/error.hpp"

namespace vigkit {

inline constexpr int kAlphabetSize = 26;

constexpr bool is_ascii_alpha(char c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

constexpr bool is_ascii_lower(char c) noexcept { return c >= 'a' && c <= 'z'; }

constexpr char ascii_upper(char c) noexcept {
  return is_ascii_lower(c) ? static_cast<char>(c - 'a' + 'A') : c;
}

constexpr char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

/// A letter of the 26-symbol alphabet, 0 = A ... 25 = Z.
class LetterIndex {
 public:
  constexpr LetterIndex() noexcept = default;

  constexpr explicit LetterIndex(int value) : value_(checked(value)) {}

  /// Reduces any integer into [0, 25].
  static constexpr LetterIndex wrap(long long value) noexcept {
    long long r = value % kAlphabetSize;
    if (r < 0) r += kAlphabetSize;
    LetterIndex out;
    out.value_ = static_cast<std::uint8_t>(r);
    return out;
  }

  constexpr int value() const noexcept { return value_; }

  constexpr auto operator<=>(const LetterIndex&) const noexcept = default;

  friend constexpr LetterIndex operator+(LetterIndex a, LetterIndex b) noexcept {
    return wrap(a.value_ + b.value_);
  }
  friend constexpr LetterIndex operator-(LetterIndex a, LetterIndex b) noexcept {
    return wrap(a.value_ - b.value_);
  }

 private:
  static constexpr std::uint8_t checked(int value) {
    if (value < 0 || value >= kAlphabetSize)
      throw Error(Errc::InvalidArgument, "letter index",
                  std::to_string(value) + " is outside [0, 25]");
    return static_cast<std::uint8_t>(value);
  }

  std::uint8_t value_ = 0;
};

using Letters = std::vector<LetterIndex>;

/// Accepts either case; anything else is InvalidCharacter.
constexpr LetterIndex char_to_index(char c) {
  if (!is_ascii_alpha(c)) {
    throw Error(Errc::InvalidCharacter, "character",
                "byte " + std::to_string(static_cast<unsigned char>(c)) +
                    " is not an ASCII letter");
  }
  return LetterIndex(ascii_upper(c) - 'A');
}

constexpr char index_to_char(LetterIndex l) noexcept {
  return static_cast<char>('A' + l.value());
}

/// Strict conversion: every character must be a letter.
inline Letters letters_from_string(std::string_view text) {
  Letters out;
  out.reserve(text.size());
  for (char c : text) out.push_back(char_to_index(c));
  return out;
}

/// Lenient conversion: non-letters are skipped.
inline Letters extract_letters(std::string_view text) {
  Letters out;
  out.reserve(text.size());
  for (char c : text)
    if (is_ascii_alpha(c)) out.push_back(char_to_index(c));
  return out;
}

inline std::string to_string(const Letters& letters) {
  std::string out;
  out.reserve(letters.size());
  for (auto l : letters) out.push_back(index_to_char(l));
  return out;
}

}  // namespace vigkit
