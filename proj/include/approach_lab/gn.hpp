#pragma once

// The case-defined metric on [0,1]
//   d(x,y) = |x-y| (x,y != 0),  d(x,0) = 0,  d(0,y) = 1 (y > 0)
// where the c-Scott and d-Scott topologies differ. Everything is checked
// exactly on the dyadic grid {k / 2^n : n <= 12}.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"

namespace approach_lab {

inline ExtValue gn_distance(const ExtValue& x, const ExtValue& y) {
  if (x.is_infinite() || y.is_infinite() || x > ExtValue(1) || y > ExtValue(1)) throw domain_error("GN points lie in [0,1]");
  if (y.is_zero()) return {};
  if (x.is_zero()) return ExtValue(1);
  return abs_diff(x, y);
}

inline constexpr unsigned kGnDepth = 12;

inline std::vector<ExtValue> gn_grid(unsigned depth = kGnDepth) {
  const std::int64_t den = std::int64_t{1} << depth;
  std::vector<ExtValue> g;
  for (std::int64_t k = 0; k <= den; ++k) g.emplace_back(k, den);
  return g;
}

/// Balls (a q^n, s + b q^n), n >= 1, in GN.
struct GnBallChain {
  ExtValue a = ExtValue(1);
  ExtValue b = ExtValue(1);
  ExtValue q = ExtValue(1, 2);
  ExtValue shift;

  ExtValue center(unsigned n) const { return a * q.pow(n); }
  ExtValue radius(unsigned n) const { return shift + b * q.pow(n); }

  /// n < m gives r_n >= r_m + d(x_n,x_m) iff (b-a)(q^n - q^m) >= 0.
  bool directed() const { return b >= a; }

  /// inf_n (r_n - d(x_n, y)) as a signed rational. For y > 0 the terms with
  /// a q^n < y equal shift + (a+b) q^n - y and decrease to shift - y; the
  /// remaining finitely many terms are listed.
  BigRational upper_radius(const ExtValue& y) const {
    BigRational s = shift.to_rational();
    if (y.is_zero()) return s;
    BigRational best = s - y.to_rational();
    for (unsigned n = 1; center(n) >= y; ++n) best = std::min(best, radius(n).to_rational() - gn_distance(center(n), y).to_rational());
    return best;
  }
};

struct GnJoin {
  bool found = false;
  ExtValue center;
  ExtValue radius;
  std::size_t upper_bounds = 0;
};

/// Join over grid centers: (z, s(z)) with s(z) >= s(y) + d(z,y) for every
/// upper bound (y, s(y)), where s is the exact upper radius.
inline GnJoin gn_chain_join(const GnBallChain& c, const std::vector<ExtValue>& grid) {
  std::vector<std::pair<ExtValue, BigRational>> ub;
  for (const auto& y : grid) {
    BigRational s = c.upper_radius(y);
    if (s >= 0) ub.emplace_back(y, s);
  }
  GnJoin j;
  j.upper_bounds = ub.size();
  for (const auto& [z, sz] : ub) {
    bool ok = true;
    for (const auto& [y, sy] : ub)
      if (sz < sy + gn_distance(z, y).to_rational()) {
        ok = false;
        break;
      }
    if (ok) {
      j.found = true;
      j.center = z;
      j.radius = ExtValue::from_rational(sz);
      return j;
    }
  }
  return j;
}

/// phi(0) = 1 and phi = 0 on (0,1].
inline ExtValue gn_phi(const ExtValue& x) { return x.is_zero() ? ExtValue(1) : ExtValue{}; }

struct CaseStudyItem {
  std::string name;
  bool ok = false;
  std::string detail;
  bool informational = false;
};

struct CaseStudyReport {
  std::vector<CaseStudyItem> items;

  bool ok() const {
    for (const auto& i : items)
      if (!i.informational && !i.ok) return false;
    return true;
  }
};

namespace detail {

inline CaseStudyItem gn_metric_axioms(const std::vector<ExtValue>& grid, std::uint64_t seed, std::size_t samples) {
  CaseStudyItem it{"metric axioms on sampled triples", true, ""};
  std::size_t checked = 0;
  auto triangle = [&](const ExtValue& x, const ExtValue& y, const ExtValue& z) {
    ++checked;
    if (gn_distance(x, z) > gn_distance(x, y) + gn_distance(y, z)) {
      it.ok = false;
      it.detail = "triangle fails at " + x.str() + ", " + y.str() + ", " + z.str();
    }
  };
  for (const auto& x : grid)
    if (!gn_distance(x, x).is_zero()) {
      it.ok = false;
      it.detail = "d(x,x) != 0 at " + x.str();
    }
  auto coarse = gn_grid(4);
  for (const auto& x : coarse)
    for (const auto& y : coarse)
      for (const auto& z : coarse) triangle(x, y, z);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  for (std::size_t i = 0; i < samples && it.ok; ++i) triangle(grid[pick(rng)], grid[pick(rng)], grid[pick(rng)]);
  if (it.ok) it.detail = std::to_string(grid.size()) + " diagonal points, " + std::to_string(checked) + " triples";
  return it;
}

inline CaseStudyItem gn_chain_item(const std::vector<ExtValue>& grid) {
  CaseStudyItem it{"chain (1/2^n, 1/2^n) is directed with join (0,0)", true, ""};
  GnBallChain c;
  if (!c.directed()) {
    it.ok = false;
    it.detail = "chain not directed";
    return it;
  }
  for (unsigned n = 1; n <= kGnDepth; ++n)
    for (unsigned m = n + 1; m <= kGnDepth; ++m)
      if (c.radius(n) < c.radius(m) + gn_distance(c.center(n), c.center(m))) {
        it.ok = false;
        it.detail = "ball " + std::to_string(n) + " not below ball " + std::to_string(m);
        return it;
      }
  auto j = gn_chain_join(c, grid);
  it.ok = j.found && j.center.is_zero() && j.radius.is_zero();
  it.detail = j.found ? "join (" + j.center.str() + "," + j.radius.str() + "), " + std::to_string(j.upper_bounds) + " upper bound(s) on the grid" : "no join";
  return it;
}

// Shifted by 1 the chain has no join: GN fails condition (S).
inline CaseStudyItem gn_condition_s_item(const std::vector<ExtValue>& grid) {
  GnBallChain c;
  c.shift = ExtValue(1);
  auto j = gn_chain_join(c, grid);
  CaseStudyItem it{"condition (S): chain shifted by 1 has no join", !j.found, "", true};
  it.detail = j.found ? "unexpected join (" + j.center.str() + "," + j.radius.str() + ")" : std::to_string(j.upper_bounds) + " upper bounds, none least";
  return it;
}

inline CaseStudyItem gn_weight_item(const std::vector<ExtValue>& grid) {
  CaseStudyItem it{"phi is a weight and a Scott weight", true, ""};
  for (const auto& x : grid) {
    for (const auto& y : grid)
      if (gn_phi(x) > gn_phi(y) + gn_distance(x, y)) {
        it.ok = false;
        it.detail = "weight inequality fails at " + x.str() + ", " + y.str();
        return it;
      }
  }
  // Forward Cauchy nets are eventually constant at 0 or converge in the
  // usual sense to a limit l != 0. Class one: liminf phi = phi(0).
  // Class two: l +/- c 2^-n with terms in (0,1]; check that d(x_n,y)
  // approaches d(l,y) geometrically and that liminf phi = 0 >= phi(l).
  std::size_t nets = 1;
  const ExtValue c = ExtValue(1, std::int64_t{1} << (kGnDepth + 1));
  for (const auto& l : grid) {
    if (l.is_zero()) continue;
    for (int side : {-1, 1}) {
      if (side > 0 && l + c * ExtValue(1, 2) > ExtValue(1)) continue;
      ++nets;
      for (unsigned n = 1; n <= 6; ++n) {
        ExtValue step = c * ExtValue(1, 2).pow(n);
        ExtValue xn = side > 0 ? l + step : tminus(l, step);
        if (xn.is_zero() || gn_phi(xn) < gn_phi(l)) {
          it.ok = false;
          it.detail = "Scott inequality fails along a net converging to " + l.str();
          return it;
        }
        for (const auto& y : {ExtValue{}, l, ExtValue(1), ExtValue(1, 3)}) {
          ExtValue gap = abs_diff(gn_distance(xn, y), gn_distance(l, y));
          if (gap > step) {
            it.ok = false;
            it.detail = "net to " + l.str() + " does not approach d(l," + y.str() + ")";
            return it;
          }
        }
      }
    }
  }
  // 1/2^n converges to 0 in the usual sense but has no Yoneda limit:
  // lim d(1/2^n, y) = y for y > 0 and 0 at y = 0.
  for (const auto& x : grid) {
    bool is_limit = true;
    for (const auto& y : grid) {
      ExtValue lim = y;
      if (gn_distance(x, y) != lim) {
        is_limit = false;
        break;
      }
    }
    if (is_limit) {
      it.ok = false;
      it.detail = "1/2^n has Yoneda limit " + x.str();
      return it;
    }
  }
  it.detail = std::to_string(grid.size() * grid.size()) + " weight pairs, " + std::to_string(nets) + " classified nets";
  return it;
}

inline CaseStudyItem gn_closed_set_item(const std::vector<ExtValue>& grid) {
  CaseStudyItem it{"phi^-1(0) = (0,1] is c-Scott closed but not d-Scott closed", true, ""};
  std::size_t zeros = 0;
  for (const auto& x : grid) {
    bool z = gn_phi(x).is_zero();
    if (z != !x.is_zero()) {
      it.ok = false;
      it.detail = "zero set of phi differs from (0,1] at " + x.str();
      return it;
    }
    zeros += z;
  }
  // (1/2^n, 1/2^n) lies below eta(1/2^n) = (1/2^n, 0), so every Scott
  // closed lower set containing eta((0,1]) holds the chain and its join.
  GnBallChain c;
  for (unsigned n = 1; n <= kGnDepth; ++n)
    if (c.radius(n) < gn_distance(c.center(n), c.center(n))) {
      it.ok = false;
      it.detail = "chain ball not below its eta point";
      return it;
    }
  auto j = gn_chain_join(c, grid);
  if (!j.found || !j.center.is_zero() || !j.radius.is_zero()) {
    it.ok = false;
    it.detail = "join is not eta(0)";
    return it;
  }
  it.detail = std::to_string(zeros) + " grid zeros; join eta(0) forces 0 into the d-Scott closure";
  return it;
}

}  // namespace detail

inline CaseStudyReport gn_case_study(std::uint64_t seed = 1, std::size_t triple_samples = 200000) {
  const auto grid = gn_grid();
  CaseStudyReport rep;
  rep.items.push_back(detail::gn_metric_axioms(grid, seed, triple_samples));
  rep.items.push_back(detail::gn_chain_item(grid));
  rep.items.push_back(detail::gn_weight_item(grid));
  rep.items.push_back(detail::gn_closed_set_item(grid));
  rep.items.push_back(detail::gn_condition_s_item(grid));
  return rep;
}

}  // namespace approach_lab
