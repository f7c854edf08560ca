#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "common.hpp"

namespace approach_lab {
namespace {

using test::V;
using test::W;

SpacePtr random_space(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<ExtValue> g{V("0"), V("1/2"), V("1"), V("3/2"), V("3"), kInf};
  std::vector<std::vector<ExtValue>> d(n, std::vector<ExtValue>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = i == j ? ExtValue{} : g[rng() % g.size()];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("p" + std::to_string(i));
  return make_space(l, d);
}

// (A1)-(A3) directly and (A4) in neighbourhood form:
// delta(x,A) <= delta(x, {y : delta(y,A) <= e}) + e for every finite e
// occurring in the table.
bool oracle_axioms(const ApproachTable& t) {
  const std::size_t n = t.size();
  const Subset full = t.all();
  std::vector<ExtValue> eps;
  for (const auto& v : t.entries())
    if (v.is_finite()) eps.push_back(v);
  for (std::size_t x = 0; x < n; ++x) {
    if (!t.at(x, 0).is_infinite()) return false;
    for (Subset a = 0; a <= full; ++a) {
      if ((a >> x) & 1u && !t.at(x, a).is_zero()) return false;
      for (Subset b = 0; b <= full; ++b)
        if (t.at(x, a | b) != std::min(t.at(x, a), t.at(x, b))) return false;
    }
  }
  for (Subset a = 0; a <= full; ++a)
    for (const auto& e : eps) {
      Subset nb = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (t.at(y, a) <= e) nb |= singleton(y);
      for (std::size_t x = 0; x < n; ++x)
        if (t.at(x, a) > t.at(x, nb) + e) return false;
    }
  return true;
}

// sup over partitions of A of min over blocks of max over factors.
ExtValue oracle_product(const std::vector<ApproachTable>& f, const std::vector<std::vector<std::size_t>>& coords, std::size_t x, Subset a) {
  if (a == 0) return kInf;
  auto pts = members(a);
  ExtValue best;
  std::vector<Subset> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pts.size()) {
      ExtValue m = kInf;
      for (auto blk : blocks) {
        ExtValue mx;
        for (std::size_t k = 0; k < f.size(); ++k) {
          Subset proj = 0;
          for (auto p : members(blk)) proj |= singleton(coords[p][k]);
          mx = std::max(mx, f[k].at(coords[x][k], proj));
        }
        m = std::min(m, mx);
      }
      best = std::max(best, m);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] |= singleton(pts[i]);
      rec(i + 1);
      blocks[b] &= ~singleton(pts[i]);
    }
    blocks.push_back(singleton(pts[i]));
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  return best;
}

TEST(Approach, AlexandroffExamples) {
  auto t = alexandroff(*W());
  EXPECT_EQ(t.at(0, 0b110), V("1"));
  for (std::size_t x = 0; x < 3; ++x) {
    EXPECT_EQ(t.at(x, 0), kInf);
    EXPECT_EQ(t.at(x, singleton(x)), V("0"));
  }
  EXPECT_TRUE(check_approach_axioms(t).ok());
}

TEST(Approach, ConstructedViolations) {
  auto t = alexandroff(*W());
  auto a1 = t;
  a1.set(0, singleton(0), V("1"));
  auto r1 = check_approach_axioms(a1);
  ASSERT_FALSE(r1.ok());
  EXPECT_EQ(r1.violations.front().axiom, 1);
  auto a2 = t;
  a2.set(1, 0, V("0"));
  auto r2 = check_approach_axioms(a2);
  ASSERT_FALSE(r2.ok());
  bool has2 = false;
  for (const auto& v : r2.violations) has2 = has2 || v.axiom == 2;
  EXPECT_TRUE(has2);
}

TEST(Approach, AxiomCheckAgainstOracle) {
  std::mt19937_64 rng(3);
  static const std::vector<ExtValue> g{V("0"), V("1/2"), V("1"), V("2"), V("7/2"), kInf};
  std::size_t bad = 0;
  for (int t = 0; t < 300; ++t) {
    auto s = random_space(rng, 1 + t % 4);
    auto tab = alexandroff(*s);
    if (t % 3) tab.set(rng() % s->size(), rng() % (tab.all() + 1), g[rng() % g.size()]);
    bool ok = oracle_axioms(tab);
    ASSERT_EQ(check_approach_axioms(tab).ok(), ok) << t;
    bad += !ok;
  }
  EXPECT_GT(bad, 50u);
}

// Above 8 points the reduced check must agree with the full statement.
TEST(Approach, ReducedAxiomCheckAgreesOnNinePoints) {
  std::mt19937_64 rng(9);
  static const std::vector<ExtValue> g{V("0"), V("1/2"), V("1"), V("2"), kInf};
  for (int t = 0; t < 12; ++t) {
    auto s = random_space(rng, 9);
    auto tab = alexandroff(*s);
    if (t % 4) tab.set(rng() % 9, rng() % (tab.all() + 1), g[rng() % g.size()]);
    EXPECT_EQ(check_approach_axioms(tab).ok(), oracle_axioms(tab)) << t;
  }
}

TEST(Approach, ScottEqualsAlexandroffOnFiniteSpaces) {
  auto s = W();
  auto sigma = scott_distance_finite(s);
  EXPECT_EQ(sigma.at(0, 0b110), V("1"));
  for (std::size_t x = 0; x < 3; ++x) {
    EXPECT_EQ(sigma.at(x, 0), kInf);
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(sigma.at(x, singleton(y)), s->d(x, y));
  }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto r = random_space(rng, 1 + t % 4);
    EXPECT_EQ(scott_distance_finite(r), alexandroff(*r));
    EXPECT_EQ(scott_sup_table(r), alexandroff(*r));
  }
}

TEST(Approach, RegularFunctions) {
  auto s = W();
  auto t = alexandroff(*s);
  for (Subset a = 0; a <= t.all(); ++a) {
    std::vector<ExtValue> phi;
    for (std::size_t x = 0; x < 3; ++x) phi.push_back(t.at(x, a));
    EXPECT_TRUE(is_regular_function(t, phi));
  }
  EXPECT_TRUE(is_regular_function(t, {V("5"), V("5"), V("5")}));
  EXPECT_TRUE(is_regular_function(t, yoneda_embed(s, 1).values()));
  EXPECT_FALSE(is_regular_function(t, {V("0"), V("5"), V("0")}));
}

TEST(Approach, Coreflection) {
  auto top = coreflection(alexandroff(*W()));
  EXPECT_EQ(top.closed.size(), 8u);
  auto c = test::chain3();
  auto lower = coreflection(alexandroff(*c));
  EXPECT_EQ(lower.closed, (std::vector<Subset>{0b000, 0b001, 0b011, 0b111}));
  EXPECT_EQ(coreflection(embed_topology(lower)).closed, lower.closed);
}

// Random preorders: omega of the Alexandroff topology round-trips.
TEST(Approach, EmbedTopologyRoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    Relation r(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i][j] = i == j || rng() % 3 == 0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back("p" + std::to_string(i));
    auto s = std::make_shared<const FiniteSpace>(omega_of_order(l, r));
    auto top = coreflection(alexandroff(*s));
    for (Subset a = 0; a <= full_subset(n); ++a) {
      bool lower_set = true;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (contains(a, y) && r[x][y] && !contains(a, x)) lower_set = false;
      EXPECT_EQ(top.is_closed(a), lower_set);
    }
    auto om = embed_topology(top);
    EXPECT_TRUE(check_approach_axioms(om).ok());
    EXPECT_EQ(coreflection(om).closed, top.closed);
    EXPECT_EQ(specialization(om), *s);
  }
}

TEST(Approach, EmbedTopologyExamples) {
  TopologySpec discrete({"u", "v"}, {0b00, 0b01, 0b10, 0b11});
  auto d = embed_topology(discrete);
  for (std::size_t x = 0; x < 2; ++x)
    for (Subset a = 1; a <= 3; ++a) EXPECT_EQ(d.at(x, a).is_zero(), contains(a, x));
  TopologySpec indiscrete({"u", "v"}, {0b00, 0b11});
  auto i = embed_topology(indiscrete);
  for (std::size_t x = 0; x < 2; ++x)
    for (Subset a = 1; a <= 3; ++a) EXPECT_TRUE(i.at(x, a).is_zero());
  TopologySpec broken({"u", "v"}, {0b01, 0b11});
  EXPECT_THROW(embed_topology(broken), invalid_structure_error);
}

TEST(Approach, Contractions) {
  auto s = W();
  auto t = alexandroff(*s);
  EXPECT_TRUE(is_contraction(PointMap::identity(s), t, t));
  // Non-expansive maps induce contractions of the Scott tables.
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    auto x = random_space(rng, 1 + k % 3), y = random_space(rng, 1 + (k / 3) % 3);
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < x->size(); ++i) f.push_back(rng() % y->size());
    bool nonexp = true;
    for (std::size_t i = 0; i < x->size(); ++i)
      for (std::size_t j = 0; j < x->size(); ++j) nonexp = nonexp && y->d(f[i], f[j]) <= x->d(i, j);
    EXPECT_EQ(is_contraction(f, scott_distance_finite(x), scott_distance_finite(y)), nonexp) << k;
  }
}

TEST(Approach, ProductTableAgainstPartitionSup) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    auto x = random_space(rng, 1 + k % 3), y = random_space(rng, 1 + (k / 3) % 2);
    std::vector<ApproachTable> f{alexandroff(*x), alexandroff(*y)};
    auto p = product_table(f);
    std::vector<std::vector<std::size_t>> coords;
    for (std::size_t q = 0; q < p.size(); ++q) coords.push_back(product_coordinates({x->size(), y->size()}, q));
    for (std::size_t q = 0; q < p.size(); ++q)
      for (Subset a = 0; a <= p.all(); ++a) ASSERT_EQ(p.at(q, a), oracle_product(f, coords, q, a));
    EXPECT_EQ(p, alexandroff(product({*x, *y})));
  }
}

}  // namespace
}  // namespace approach_lab
