#include <gtest/gtest.h>

#include "common.hpp"

namespace approach_lab {
namespace {

using test::V;
using test::W;

TEST(Space, MetricAxiomsOnW) {
  EXPECT_TRUE(check_metric_axioms(*W()).ok());
  EXPECT_TRUE(check_metric_axioms(FiniteSpace({"p"}, {{V("0")}})).ok());
}

TEST(Space, TriangleViolationWitness) {
  auto m = W()->matrix();
  m[0][2] = V("3");
  FiniteSpace bad(W()->labels(), m);
  auto r = check_metric_axioms(bad);
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations) found = found || (v.kind == MetricViolation::Kind::triangle && v.x == 0 && v.y == 1 && v.z == 2);
  EXPECT_TRUE(found);
}

TEST(Space, DiagonalViolation) {
  FiniteSpace bad({"p", "q"}, {{V("1"), V("0")}, {V("0"), V("0")}});
  auto r = check_metric_axioms(bad);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().kind, MetricViolation::Kind::diagonal);
}

TEST(Space, ConstructionErrors) {
  EXPECT_THROW(FiniteSpace({}, {}), dimension_error);
  EXPECT_THROW(FiniteSpace({"p", "q"}, {{V("0"), V("0")}}), dimension_error);
  EXPECT_THROW(FiniteSpace({"p", "p"}, {{V("0"), V("0")}, {V("0"), V("0")}}), error);
  EXPECT_THROW(W()->index("z"), unknown_point_error);
}

TEST(Space, Opposite) {
  auto s = W();
  auto op = opposite(*s);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(op.d(x, y), s->d(y, x));
}

// Oracle: sup metric computed coordinate by coordinate.
TEST(Space, ProductIsSupMetric) {
  auto s = W();
  auto two = test::two_point("1", "inf");
  auto p = product({*s, *two});
  ASSERT_EQ(p.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      auto ci = product_coordinates({3, 2}, i), cj = product_coordinates({3, 2}, j);
      EXPECT_EQ(p.d(i, j), std::max(s->d(ci[0], cj[0]), two->d(ci[1], cj[1])));
    }
  EXPECT_TRUE(check_metric_axioms(p).ok());
  EXPECT_EQ(power(*s, 2).size(), 9u);
}

TEST(Space, SpecializationOrder) {
  auto r = specialization_order(*W());
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(r[x][y], x == y);
  auto sym = specialization_order(*test::two_point("0", "0"));
  EXPECT_TRUE(sym[0][1] && sym[1][0]);
}

TEST(Space, OmegaImageRecoversPoset) {
  auto c = test::chain3();
  auto r = specialization_order(*c);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(r[x][y], x <= y);
}

TEST(Space, ZeroClusters) {
  auto s = make_space({"p", "q", "r"}, {{V("0"), V("0"), V("1")}, {V("0"), V("0"), V("1")}, {V("2"), V("2"), V("0")}});
  auto cl = zero_clusters(*s);
  ASSERT_EQ(cl.size(), 2u);
  EXPECT_EQ(cl[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cl[1], (std::vector<std::size_t>{2}));
}

}  // namespace
}  // namespace approach_lab
