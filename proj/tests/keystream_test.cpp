#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vigkit/keystream.hpp"

using namespace vigkit;

TEST(ExtendKey, GeneratedMatchesPublishedRows) {
  EXPECT_EQ(extend_key("MYCODE", 10, KeyMode::Generated).str(), "MYCODEKRZI");
  EXPECT_EQ(extend_key("KEY", 18, KeyMode::Generated).str(), "KEYBFKQXFOYJVIWLBS");
  EXPECT_EQ(extend_key("BUNG", 18, KeyMode::Generated).str(), "BUNGKPVCKTDOANBQGX");
}

TEST(ExtendKey, StandardRepeat) {
  EXPECT_EQ(extend_key("KEY", 18, KeyMode::StandardRepeat).str(), "KEYKEYKEYKEYKEYKEY");
}

TEST(ExtendKey, NoGenerationWhenKeyCoversText) {
  EXPECT_EQ(extend_key("MYCODE", 6, KeyMode::Generated).str(), "MYCODE");
  EXPECT_EQ(extend_key("MYCODE", 4, KeyMode::Generated).str(), "MYCO");
  EXPECT_EQ(extend_key("MYCODE", 4, KeyMode::StandardRepeat).str(), "MYCO");
  EXPECT_EQ(extend_key("A", 1, KeyMode::Generated).str(), "A");
}

TEST(ExtendKey, ZeroLengthStream) {
  auto ks = extend_key("KEY", 0, KeyMode::Generated);
  EXPECT_EQ(ks.size(), 0u);
  EXPECT_EQ(to_string(ks.user_key()), "KEY");
}

TEST(ExtendKey, LowercaseKeyAccepted) {
  EXPECT_EQ(extend_key("key", 5, KeyMode::Generated).str(), "KEYBF");
}

TEST(ExtendKey, Errors) {
  try {
    extend_key("", 5, KeyMode::Generated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyKey);
  }
  try {
    extend_key("K3Y", 5, KeyMode::Generated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidCharacter);
  }
}

TEST(ExtendKey, MatchesRecurrenceWalker) {
  std::mt19937_64 rng(11);
  for (std::size_t klen = 1; klen <= 10; ++klen) {
    for (int trial = 0; trial < 5; ++trial) {
      auto key = oracle::random_key(rng, klen);
      for (std::size_t n = 1; n <= 200; ++n) {
        ASSERT_EQ(extend_key(key, n, KeyMode::Generated).str(), oracle::generated_stream(key, n))
            << key << " n=" << n;
        ASSERT_EQ(extend_key(key, n, KeyMode::StandardRepeat).str(), oracle::repeated_stream(key, n));
      }
    }
  }
}

// Beyond the user key the stream has no period <= len(user_key).
TEST(ExtendKey, GeneratedStreamHasNoShortPeriod) {
  std::mt19937_64 rng(12);
  for (std::size_t klen = 1; klen <= 20; ++klen) {
    for (int trial = 0; trial < 20; ++trial) {
      auto ext = extend_key(oracle::random_key(rng, klen), 200, KeyMode::Generated).str();
      for (std::size_t p = 1; p <= klen; ++p) {
        bool periodic = true;
        for (std::size_t i = 0; i + p < ext.size() && periodic; ++i) periodic = ext[i] == ext[i + p];
        ASSERT_FALSE(periodic) << ext << " has period " << p;
      }
    }
  }
}

// The step added at position i is i mod 26, so once past the user key the
// stream advances by 13 every 26 letters and repeats every 52.
TEST(ExtendKey, GeneratedStreamLongRangeStructure) {
  for (std::string key : {"KEY", "BUNG", "MYCODE", "Q"}) {
    auto ext = extend_key(key, 400, KeyMode::Generated).extended();
    for (std::size_t i = key.size() - 1; i + 52 < ext.size(); ++i) {
      ASSERT_EQ((ext[i + 26] - ext[i]).value(), 13);
      ASSERT_EQ(ext[i + 52], ext[i]);
    }
  }
}

TEST(ModeTags, RoundTrip) {
  EXPECT_EQ(parse_mode_tag(mode_tag(KeyMode::Generated)), KeyMode::Generated);
  EXPECT_EQ(parse_mode_tag(mode_tag(KeyMode::StandardRepeat)), KeyMode::StandardRepeat);
  EXPECT_THROW(parse_mode_tag("gen"), Error);
}
