#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vigkit/cipher.hpp"

using namespace vigkit;

namespace {

std::string enc(const std::string& text, const std::string& key, KeyMode mode, TextPolicy p = {}) {
  return encrypt(MessageText::parse(text, p), parse_key(key), mode).str();
}
std::string dec(const std::string& text, const std::string& key, KeyMode mode, TextPolicy p = {}) {
  return decrypt(MessageText::parse(text, p), parse_key(key), mode).str();
}

}  // namespace

TEST(Cipher, ShortKeyStandardExample) {
  EXPECT_EQ(enc("THIS IS MY PAPER", "UP", KeyMode::StandardRepeat), "NWCH CH GN JPJTL");
  EXPECT_EQ(dec("NWCH CH GN JPJTL", "UP", KeyMode::StandardRepeat), "THIS IS MY PAPER");
}

TEST(Cipher, GeneratedKeyFirstCiphertext) {
  EXPECT_EQ(enc("THE FAMILY AND THE FAV", "KEY", KeyMode::Generated), "DLC GFWYID OLM OPA QBN");
}

TEST(Cipher, StandardKeyComparison) {
  EXPECT_EQ(enc("THE FAMILY AND THE FAV", "KEY", KeyMode::StandardRepeat), "DLC PEKSPW KRB DLC PET");
  EXPECT_EQ(dec("DLC PEKSPW KRB DLC PET", "KEY", KeyMode::StandardRepeat), "THE FAMILY AND THE FAV");
}

TEST(Cipher, SenderDecryptionOfSecondCiphertext) {
  EXPECT_EQ(dec("EFP MPLTKN HOA OCB GHK", "KEY", KeyMode::Generated), "UBR LKBDNI TQR TUF VGS");
}

TEST(Cipher, AllAKeyIsIdentity) {
  EXPECT_EQ(enc("HELLO, WORLD", "AAA", KeyMode::Generated).substr(0, 3), "HEL");
  EXPECT_EQ(enc("HELLO, WORLD", "AAA", KeyMode::StandardRepeat), "HELLO, WORLD");
  EXPECT_EQ(enc("HELLO, WORLD", "AAAAAAAAAA", KeyMode::Generated), "HELLO, WORLD");
}

TEST(Cipher, EmptyTextNeedsEmptyStream) {
  auto empty = MessageText::parse("  ,.", {});
  EXPECT_EQ(encrypt(empty, extend_key("KEY", 0, KeyMode::Generated)).str(), "  ,.");
  EXPECT_EQ(decrypt(empty, extend_key("KEY", 0, KeyMode::Generated)).str(), "  ,.");
}

TEST(Cipher, KeyLengthMismatch) {
  auto text = MessageText::parse("ABCD", {});
  try {
    encrypt(text, extend_key("KEY", 3, KeyMode::Generated));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::KeyLengthMismatch);
  }
  EXPECT_THROW(decrypt(text, extend_key("KEY", 5, KeyMode::Generated)), Error);
}

TEST(Cipher, LongKeyIsTruncated) {
  EXPECT_EQ(enc("AB", "KEYWORD", KeyMode::Generated), "KF");
}

TEST(Cipher, CasePreservePolicy) {
  TextPolicy keep{NonAlphaPolicy::Preserve, CasePolicy::Preserve};
  auto c = enc("The Family", "KEY", KeyMode::Generated, keep);
  EXPECT_EQ(c, "Dlc Gfwyid");
  EXPECT_EQ(dec(c, "KEY", KeyMode::Generated, keep), "The Family");
}

TEST(Cipher, TabulaRectaEquivalence) {
  auto table = oracle::tabula_recta();
  for (int k = 0; k < 26; ++k)
    for (int p = 0; p < 26; ++p)
      ASSERT_EQ(index_to_char(LetterIndex(p) + LetterIndex(k)), table[k][p]);
}

TEST(Cipher, MatchesTableLookupOracle) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    auto text = MessageText::parse(oracle::random_text(rng, rng() % 120), {});
    auto key = oracle::random_key(rng, 1 + rng() % 8);
    for (auto mode : {KeyMode::StandardRepeat, KeyMode::Generated}) {
      auto n = text.letter_count();
      auto stream = mode == KeyMode::Generated ? oracle::generated_stream(key, n)
                                               : oracle::repeated_stream(key, n);
      ASSERT_EQ(encrypt(text, parse_key(key), mode).str(), oracle::table_encrypt(text.str(), stream));
    }
  }
}

TEST(Cipher, RoundTripProperty) {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 1000; ++iter) {
    auto raw = oracle::random_text(rng, rng() % 200);
    auto key = parse_key(oracle::random_key(rng, 1 + rng() % 12));
    auto mode = (iter & 1) ? KeyMode::Generated : KeyMode::StandardRepeat;
    static const TextPolicy policies[] = {{NonAlphaPolicy::Preserve, CasePolicy::Upper},
                                          {NonAlphaPolicy::Preserve, CasePolicy::Preserve},
                                          {NonAlphaPolicy::Strip, CasePolicy::Upper},
                                          {NonAlphaPolicy::Strip, CasePolicy::Preserve}};
    auto policy = policies[(iter >> 1) % 4];
    auto plain = MessageText::parse(raw, policy);
    auto cipher = encrypt(plain, key, mode);
    ASSERT_EQ(cipher.mask(), plain.mask());
    for (std::size_t i = 0; i < plain.raw().size(); ++i)
      if (plain.mask()[i] == Slot::Passthrough) {
        ASSERT_EQ(cipher.raw()[i], plain.raw()[i]);
      }
    ASSERT_EQ(decrypt(cipher, key, mode), plain);
    ASSERT_EQ(decrypt(cipher, key, mode).str(), plain.str());
  }
}

TEST(Cipher, CommutativityProperty) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    auto plain = MessageText::parse(oracle::random_text(rng, rng() % 150), {});
    auto n = plain.letter_count();
    auto k1 = extend_key(oracle::random_key(rng, 1 + rng() % 7), n, KeyMode::Generated);
    auto k2 = extend_key(oracle::random_key(rng, 1 + rng() % 7), n, KeyMode::StandardRepeat);
    ASSERT_EQ(encrypt(encrypt(plain, k1), k2), encrypt(encrypt(plain, k2), k1));
  }
}

// A plaintext n-gram repeated at a multiple of the key length encrypts to
// the same ciphertext n-gram under a repeated key.
TEST(Cipher, RepeatedKeyLeaksRepeats) {
  auto c = enc("THE FAMILY AND THE FAV", "KEY", KeyMode::StandardRepeat);
  auto letters = to_string(MessageText::parse(c).letters());
  EXPECT_EQ(letters.substr(0, 3), "DLC");
  EXPECT_EQ(letters.substr(12, 3), "DLC");

  auto g = to_string(MessageText::parse(enc("THE FAMILY AND THE FAV", "KEY", KeyMode::Generated)).letters());
  EXPECT_NE(g.substr(0, 3), g.substr(12, 3));
}
