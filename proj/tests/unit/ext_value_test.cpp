#include <gtest/gtest.h>

#include <limits>

#include "common.hpp"

namespace approach_lab {
namespace {

using test::V;

TEST(ExtValue, AddExamples) {
  EXPECT_EQ(add(V("3/2"), V("1/2")), V("2"));
  EXPECT_EQ(add(kInf, V("0")), kInf);
  EXPECT_EQ(add(V("1/3"), V("1/6")), V("1/2"));
}

TEST(ExtValue, TruncatedMinus) {
  EXPECT_EQ(tminus(V("5"), V("3")), V("2"));
  EXPECT_EQ(tminus(kInf, kInf), V("0"));
  EXPECT_EQ(tminus(V("3"), V("5")), V("0"));
  EXPECT_EQ(tminus(kInf, V("7")), kInf);
  EXPECT_EQ(tminus(V("7"), kInf), V("0"));
}

TEST(ExtValue, InfMinusInfMutation) {
  ScopedMutation m(Mutation::inf_minus_inf);
  EXPECT_EQ(tminus(kInf, kInf), kInf);
}

TEST(ExtValue, FoldAndCompare) {
  EXPECT_EQ(fold({V("1"), V("1/2"), kInf}, FoldMode::min), V("1/2"));
  EXPECT_EQ(fold({V("1"), V("1/2"), kInf}, FoldMode::max), kInf);
  EXPECT_EQ(compare(V("2/4"), V("1/2")), std::strong_ordering::equal);
  EXPECT_EQ(compare(V("1/3"), V("1/2")), std::strong_ordering::less);
  EXPECT_EQ(compare(kInf, V("1000000")), std::strong_ordering::greater);
  std::vector<ExtValue> none;
  EXPECT_THROW(fold(std::span<const ExtValue>(none), FoldMode::min), empty_fold_error);
}

TEST(ExtValue, ParseRejectsMalformed) {
  for (const char* bad : {"1.5", "", "-1", "1/0", "abc", "1/", "/2", " 1", "infinity"}) EXPECT_THROW(ExtValue::parse(bad), parse_error) << bad;
  EXPECT_EQ(V("inf"), kInf);
  EXPECT_EQ(V("6/4").str(), "3/2");
  EXPECT_EQ(V("0/5").str(), "0");
}

// Values far beyond 64 bits stay exact.
TEST(ExtValue, LargeValuesStayExact) {
  ExtValue big(std::numeric_limits<std::int64_t>::max());
  ExtValue sum = big + big + big;
  EXPECT_EQ(tminus(sum, big + big), big);
  ExtValue tiny = ExtValue(1, 3).pow(60);
  EXPECT_GT(tiny, V("0"));
  EXPECT_EQ(tiny * ExtValue(3).pow(60), V("1"));
  EXPECT_EQ(V(sum.str()), sum);
}

// Oracle: cross-check the arithmetic against boost rationals on a grid.
TEST(ExtValue, MatchesRationalOracle) {
  std::vector<BigRational> grid;
  for (int p = 0; p <= 12; ++p)
    for (int q = 1; q <= 5; ++q) grid.emplace_back(p, q);
  for (const auto& x : grid)
    for (const auto& y : grid) {
      auto a = ExtValue::from_rational(x), b = ExtValue::from_rational(y);
      EXPECT_EQ((a + b).to_rational(), x + y);
      EXPECT_EQ(tminus(a, b).to_rational(), x > y ? x - y : BigRational(0));
      EXPECT_EQ(a < b, x < y);
    }
}

TEST(ExtValue, ZeroTimesInfinity) {
  EXPECT_EQ(V("0") * kInf, V("0"));
  EXPECT_EQ(V("2") * kInf, kInf);
}

}  // namespace
}  // namespace approach_lab
