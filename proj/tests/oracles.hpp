#pragma once

// Test-only reference implementations. Deliberately written without any
// vigkit code so they can check it independently.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

/// Walks the keystream recurrence one step at a time on characters, with a
/// 1-based position counter: the character at 1-based position p > len(key)
/// is the previous character advanced by (p - 1) letters.
inline std::string generated_stream(const std::string& key, std::size_t n) {
  std::string out;
  for (std::size_t p = 1; p <= n; ++p) {
    if (p <= key.size()) {
      out += key[p - 1];
      continue;
    }
    char c = out.back();
    for (std::size_t step = 0; step < p - 1; ++step) c = (c == 'Z') ? 'A' : static_cast<char>(c + 1);
    out += c;
  }
  return out;
}

inline std::string repeated_stream(const std::string& key, std::size_t n) {
  std::string out;
  while (out.size() < n) out += key;
  out.resize(n);
  return out;
}

/// The 26x26 tabula recta built by rotating the alphabet string. Row = key
/// letter, column = plaintext letter.
inline std::vector<std::string> tabula_recta() {
  std::string alpha = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::vector<std::string> rows;
  for (int r = 0; r < 26; ++r) {
    rows.push_back(alpha);
    std::rotate(alpha.begin(), alpha.begin() + 1, alpha.end());
  }
  return rows;
}

/// Classic table-lookup Vigenere over uppercase letters; other characters
/// pass through and consume no key.
inline std::string table_encrypt(const std::string& text, const std::string& stream) {
  static const auto table = tabula_recta();
  std::string out;
  std::size_t k = 0;
  for (char c : text) {
    if (c >= 'A' && c <= 'Z')
      out += table[stream[k++] - 'A'][c - 'A'];
    else
      out += c;
  }
  return out;
}

/// All-pairs scan: for every pair i < j compares the n letters at i and j.
/// Returns gram -> sorted set of positions, for n in [min_n, max_n].
inline std::map<std::string, std::set<std::size_t>> brute_force_repeats(const std::string& letters,
                                                                        std::size_t min_n,
                                                                        std::size_t max_n) {
  std::map<std::string, std::set<std::size_t>> out;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    if (letters.size() < n) break;
    for (std::size_t i = 0; i + n <= letters.size(); ++i)
      for (std::size_t j = i + 1; j + n <= letters.size(); ++j)
        if (letters.compare(i, n, letters, j, n) == 0) {
          auto& s = out[letters.substr(i, n)];
          s.insert(i);
          s.insert(j);
        }
  }
  return out;
}

/// Divisor-count key length score over explicit distances, each weighted by
/// its gram length.
inline std::map<std::size_t, std::size_t> divisor_scores(
    const std::map<std::string, std::set<std::size_t>>& repeats, std::size_t lo, std::size_t hi) {
  std::map<std::size_t, std::size_t> score;
  for (const auto& [gram, pos] : repeats) {
    std::vector<std::size_t> p(pos.begin(), pos.end());
    for (std::size_t k = 1; k < p.size(); ++k)
      for (std::size_t len = lo; len <= hi; ++len)
        if ((p[k] - p[k - 1]) % len == 0) score[len] += gram.size();
  }
  return score;
}

inline std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1] ? 1u : 0u)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string upper_letters(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c >= 'a' && c <= 'z') out += static_cast<char>(c - 'a' + 'A');
    else if (c >= 'A' && c <= 'Z') out += c;
  }
  return out;
}

/// Random printable-ish text: letters of both cases, spaces, punctuation,
/// digits, newlines and the odd non-ASCII byte.
inline std::string random_text(std::mt19937_64& rng, std::size_t len) {
  static const std::string pool =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
      "ABCDEFGHIJKLMNOPQRSTUVWXYZ      ,.;:!?0123456789\n\t-'\"\xC3\xA9";
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += pool[pick(rng)];
  return s;
}

inline std::string random_key(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> pick(0, 25);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('A' + pick(rng));
  return s;
}

}  // namespace oracle
