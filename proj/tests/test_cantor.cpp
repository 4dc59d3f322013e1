#include <gtest/gtest.h>

#include "mucont/cantor.hpp"
#include "mucont/error.hpp"

namespace mucont {
namespace {

Word w(std::string_view s) { return Word::parse(s); }

TEST(Word, ParseAndPrint) {
  EXPECT_EQ(w("0110").to_string(), "0110");
  EXPECT_EQ(w("").size(), 0U);
  EXPECT_EQ(w("101").to_integer(), 5U);
  EXPECT_EQ(Word::from_integer(5, 4).to_string(), "0101");
  EXPECT_EQ(w("0110").prefix(2), w("01"));
  EXPECT_EQ(w("01").appended(true), w("011"));
  EXPECT_THROW(Word::parse("012"), FormatError);
  EXPECT_LT(w("0011"), w("0100"));
}

TEST(Word, DistanceExamples) {
  EXPECT_EQ(word_distance(w("0101"), w("0111")), Dyadic::pow2(-2));
  EXPECT_EQ(word_distance(w("0101"), w("0101")), Dyadic(0));
  EXPECT_EQ(word_distance(w("0000"), w("1000")), Dyadic(1));
  EXPECT_THROW(word_distance(w("01"), w("011")), PreconditionError);
}

TEST(Word, MeetExamples) {
  EXPECT_EQ(word_meet(w("0101"), w("0111")), w("01"));
  EXPECT_EQ(word_meet(w("0101"), w("0101")), w("0101"));
  EXPECT_EQ(word_meet(w("1010"), w("0101")), w(""));
}

TEST(Word, StrongTriangleEqualityExhaustive) {
  for (std::uint32_t len = 1; len <= 6; ++len) {
    const auto n = std::uint64_t{1} << len;
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        for (std::uint64_t c = 0; c < n; ++c) {
          const auto x = Word::from_integer(a, len), y = Word::from_integer(b, len),
                     z = Word::from_integer(c, len);
          const auto xy = word_distance(x, y), yz = word_distance(y, z), xz = word_distance(x, z);
          if (xy != yz) {
            ASSERT_EQ(xz, max(xy, yz));
          } else {
            ASSERT_LE(xz, xy);
          }
        }
  }
}

TEST(Word, DistanceIsMeetLength) {
  for (std::uint32_t len = 1; len <= 6; ++len) {
    const auto n = std::uint64_t{1} << len;
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto x = Word::from_integer(a, len), y = Word::from_integer(b, len);
        // first differing index by direct scan
        std::uint32_t i = 0;
        while (x[i] == y[i]) ++i;
        EXPECT_EQ(word_meet(x, y).size(), i);
        EXPECT_EQ(word_distance(x, y), Dyadic::pow2(-static_cast<std::int64_t>(i)));
      }
  }
}

TEST(CantorDomain, Validation) {
  EXPECT_THROW(CantorDomain({}), PreconditionError);
  EXPECT_THROW(CantorDomain({w("01"), w("01")}), PreconditionError);
  EXPECT_THROW(CantorDomain({w("01"), w("011")}), PreconditionError);
  const CantorDomain d({w("11"), w("00")});
  EXPECT_EQ(d[0], w("00"));
  EXPECT_EQ(d.index_of(w("11")), 1U);
  EXPECT_EQ(d.index_of(w("10")), d.size());
  EXPECT_EQ(CantorDomain::full(3).size(), 8U);
}

TEST(CantorDomain, PrefixClasses) {
  const CantorDomain d({w("0101"), w("0111"), w("1000")});
  const auto c1 = enumerate_prefix_classes(d, 1);
  ASSERT_EQ(c1.size(), 2U);
  EXPECT_EQ(c1[0], (std::vector<Word>{w("0101"), w("0111")}));
  EXPECT_EQ(c1[1], (std::vector<Word>{w("1000")}));
  EXPECT_EQ(enumerate_prefix_classes(d, 0).size(), 1U);

  const auto c2 = enumerate_prefix_classes(CantorDomain::full(3), 2);
  ASSERT_EQ(c2.size(), 4U);
  for (const auto& c : c2) EXPECT_EQ(c.size(), 2U);
}

TEST(CantorDomain, PrefixClassesMatchDistance) {
  const auto d = CantorDomain::full(4);
  for (std::uint32_t n = 0; n <= 4; ++n) {
    const auto classes = enumerate_prefix_classes(d, n);
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = 0; j < classes.size(); ++j)
        for (const auto& a : classes[i])
          for (const auto& b : classes[j])
            EXPECT_EQ(i == j, word_distance(a, b) <= Dyadic::pow2(-static_cast<std::int64_t>(n)));
  }
}

}  // namespace
}  // namespace mucont
