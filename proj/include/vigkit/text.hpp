#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vigkit/alphabet.hpp"
#include "vigkit/error.hpp"

namespace vigkit {

enum class NonAlphaPolicy { Preserve, Strip };
enum class CasePolicy { Upper, Preserve };

/// How raw input is normalized before encryption. Both parties of an
/// exchange must agree on it.
struct TextPolicy {
  NonAlphaPolicy non_alpha = NonAlphaPolicy::Preserve;
  CasePolicy letter_case = CasePolicy::Upper;

  friend bool operator==(const TextPolicy&, const TextPolicy&) = default;
};

/// Two-letter wire tag: first letter non-alpha policy (P/S), second case
/// policy (U/P).
inline std::string policy_tag(TextPolicy p) {
  std::string tag;
  tag += p.non_alpha == NonAlphaPolicy::Preserve ? 'P' : 'S';
  tag += p.letter_case == CasePolicy::Upper ? 'U' : 'P';
  return tag;
}

inline TextPolicy parse_policy_tag(std::string_view tag) {
  if (tag.size() == 2 && (tag[0] == 'P' || tag[0] == 'S') &&
      (tag[1] == 'U' || tag[1] == 'P')) {
    return TextPolicy{
        tag[0] == 'P' ? NonAlphaPolicy::Preserve : NonAlphaPolicy::Strip,
        tag[1] == 'U' ? CasePolicy::Upper : CasePolicy::Preserve};
  }
  throw Error(Errc::InvalidArgument, "policy",
              "unknown policy tag '" + std::string(tag) + "'");
}

enum class Slot : unsigned char { Letter, Passthrough };

/// Text split into its encryptable letters and a per-byte mask. Passthrough
/// bytes are kept verbatim in `raw()` and consume no key material.
class MessageText {
 public:
  MessageText() = default;

  /// Normalizes `input` under `policy`: Strip drops non-letters, Upper
  /// uppercases letters. Bytes outside ASCII count as non-letters.
  static MessageText parse(std::string_view input, TextPolicy policy = {}) {
    MessageText t;
    t.raw_.reserve(input.size());
    for (char c : input) {
      if (is_ascii_alpha(c)) {
        char stored = policy.letter_case == CasePolicy::Upper ? ascii_upper(c) : c;
        t.raw_.push_back(stored);
        t.mask_.push_back(Slot::Letter);
        t.letters_.push_back(char_to_index(c));
      } else if (policy.non_alpha == NonAlphaPolicy::Preserve) {
        t.raw_.push_back(c);
        t.mask_.push_back(Slot::Passthrough);
      }
    }
    return t;
  }

  /// Same layout as `*this` with the letters replaced. Letter case of each
  /// position is carried over from the current raw text.
  MessageText with_letters(const Letters& letters) const {
    if (letters.size() != letters_.size()) {
      throw Error(Errc::KeyLengthMismatch, "letters",
                  "expected " + std::to_string(letters_.size()) + ", got " +
                      std::to_string(letters.size()));
    }
    MessageText out;
    out.raw_ = raw_;
    out.mask_ = mask_;
    out.letters_ = letters;
    std::size_t k = 0;
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      if (mask_[i] != Slot::Letter) continue;
      char c = index_to_char(letters[k++]);
      out.raw_[i] = is_ascii_lower(raw_[i]) ? ascii_lower(c) : c;
    }
    return out;
  }

  const std::string& raw() const noexcept { return raw_; }
  const std::string& str() const noexcept { return raw_; }
  const Letters& letters() const noexcept { return letters_; }
  const std::vector<Slot>& mask() const noexcept { return mask_; }
  std::size_t letter_count() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return raw_.empty(); }

  friend bool operator==(const MessageText& a, const MessageText& b) {
    return a.raw_ == b.raw_ && a.mask_ == b.mask_;
  }

 private:
  std::string raw_;
  Letters letters_;
  std::vector<Slot> mask_;
};

}  // namespace vigkit
