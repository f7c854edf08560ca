#pragma once

// Compact elements and the Scott distance of algebraic spaces:
//   sigma(x,A) = sup_{b in B} (inf_{a in A} d(b,a) (-) d(b,x))
// evaluated exactly on finite spaces and on [0,inf] with d_L / d_R and
// their finite powers.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "approach_lab/approach.hpp"
#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"

namespace approach_lab {

/// d(a,-) preserves the Yoneda limits of every eventually cyclic forward
/// Cauchy net: d(a,x) = max over the tail of d(a,u) for each limit x.
inline bool is_compact_finite(const SpacePtr& s, std::size_t a) {
  if (a >= s->size()) throw unknown_point_error("point index outside the space");
  for (const auto& tail : forward_cauchy_tails(*s)) {
    ExtValue t;
    for (auto u : tail) t = std::max(t, s->d(a, u));
    for (auto x : yoneda_limits(FiniteNet{s, {}, tail}))
      if (s->d(a, x) != t) return false;
  }
  return true;
}

inline bool is_compact_finite(const SpacePtr& s, const std::string& a) { return is_compact_finite(s, s->index(a)); }

/// Every point of [0,inf] is compact for d_L; for d_R all but inf.
inline bool compact_catalogue(const CanonicalSpace& c, const std::vector<ExtValue>& v) {
  if (v.size() != c.dim) throw dimension_error("point has the wrong number of coordinates for " + c.name());
  if (c.base == Carrier::DL) return true;
  return std::all_of(v.begin(), v.end(), [](const ExtValue& t) { return t.is_finite(); });
}

inline bool compact_catalogue(const CanonicalSpace& c, const ExtValue& v) { return compact_catalogue(c, std::vector<ExtValue>{v}); }

/// x (-) max A, and inf for A empty.
inline ExtValue delta_P(const ExtValue& x, const std::vector<ExtValue>& a) {
  if (a.empty()) return kInf;
  return tminus(x, *std::max_element(a.begin(), a.end()));
}

struct Interval {
  ExtValue lo;
  ExtValue hi;

  bool exact() const { return lo == hi; }
  bool contains(const ExtValue& v) const { return lo <= v && v <= hi; }
  ExtValue width() const { return hi.is_infinite() && lo.is_infinite() ? ExtValue{} : tminus(hi, lo); }
};

/// The carrier together with its compact basis. For finite carriers the
/// basis is a list of points (empty means every point). For [0,inf] the
/// basis is the dyadic grid {k step / 2^j}, refined until the certified
/// remainder fits the requested tolerance; d_L also has inf in its basis.
struct AlgebraicSpec {
  std::variant<CanonicalSpace, SpacePtr> carrier;
  ExtValue grid_step = ExtValue(1, 2);
  std::vector<std::size_t> basis;
  std::optional<std::string> bottom;
  unsigned max_refinements = 64;

  bool is_finite() const { return std::holds_alternative<SpacePtr>(carrier); }
  const SpacePtr& space() const { return std::get<SpacePtr>(carrier); }
  const CanonicalSpace& canonical() const { return std::get<CanonicalSpace>(carrier); }

  std::vector<std::size_t> basis_points() const {
    if (!basis.empty()) return basis;
    std::vector<std::size_t> all(space()->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  void validate() const {
    if (is_finite()) {
      const auto& s = space();
      if (!s) throw space_mismatch_error("algebraic spec has no space");
      for (auto b : basis_points()) {
        if (b >= s->size()) throw unknown_point_error("basis point outside the space");
        if (!is_compact_finite(s, b)) throw invalid_structure_error("basis point " + s->label(b) + " is not compact");
      }
      if (bottom) {
        auto z = s->index(*bottom);
        for (std::size_t x = 0; x < s->size(); ++x)
          if (!s->d(z, x).is_zero()) throw invalid_structure_error("declared bottom " + *bottom + " is not below " + s->label(x));
      }
      return;
    }
    if (grid_step.is_zero() || grid_step.is_infinite()) throw domain_error("basis grid step must be positive and finite");
    if (bottom) {
      ExtValue v = ExtValue::parse(*bottom);
      ExtValue expect = canonical().base == Carrier::DR ? ExtValue{} : kInf;
      if (v != expect) throw invalid_structure_error("declared bottom " + *bottom + " is not the bottom of " + canonical().name());
    }
  }
};

/// Options for canonical carriers. With breakpoints on, the sup is computed
/// from the piecewise linear shape of the summand and is exact.
struct SigmaOptions {
  ExtValue eps = ExtValue(1, 1024);
  bool breakpoints = true;
};

/// sup over basis points b of (min_a d(b,a)) (-) d(b,x), on a finite space.
inline ExtValue windels_value(const FiniteSpace& s, const std::vector<std::size_t>& basis, std::size_t x, Subset a) {
  if (a == 0) return kInf;
  ExtValue best;
  for (auto b : basis) {
    ExtValue m = kInf;
    for (auto i : members(a)) m = std::min(m, s.d(b, i));
    best = std::max(best, tminus(m, s.d(b, x)));
  }
  return best;
}

inline ApproachTable windels_table(const FiniteSpace& s, const std::vector<std::size_t>& basis) {
  require_table_size(s.size());
  ApproachTable t(s.labels());
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Subset a = 0; a <= s.all(); ++a) t.set(x, a, windels_value(s, basis, x, a));
  return t;
}

inline Interval scott_distance_algebraic(const AlgebraicSpec& spec, std::size_t x, Subset a) {
  if (!spec.is_finite()) throw space_mismatch_error("finite query against a canonical carrier");
  spec.validate();
  if (x >= spec.space()->size() || (a & ~spec.space()->all())) throw unknown_point_error("query point outside the space");
  ExtValue v = windels_value(*spec.space(), spec.basis_points(), x, a);
  return {v, v};
}

namespace detail {

inline ExtValue windels_summand(Carrier c, const ExtValue& b, const ExtValue& x, const std::vector<ExtValue>& a) {
  ExtValue m = kInf;
  for (const auto& v : a) m = std::min(m, carrier_distance(c, b, v));
  return tminus(m, carrier_distance(c, b, x));
}

inline BigRational floor_to(const BigRational& v, const BigRational& h) {
  BigRational q = v / h;
  BigInt k = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  return BigRational(k) * h;
}

// One coordinate of [0,inf].
inline Interval sigma_one(Carrier c, const ExtValue& step, unsigned max_refinements, const ExtValue& x, const std::vector<ExtValue>& a,
                          const SigmaOptions& opt) {
  if (a.empty()) return {kInf, kInf};
  std::vector<BigRational> marks{0};
  if (x.is_finite()) marks.push_back(x.to_rational());
  for (const auto& v : a)
    if (v.is_finite()) marks.push_back(v.to_rational());
  BigRational top = *std::max_element(marks.begin(), marks.end());

  auto f = [&](const BigRational& b) { return windels_summand(c, ExtValue::from_rational(b), x, a); };
  // Past the last breakpoint the summand is linear; growth there means an
  // unbounded sup over finite basis points.
  ExtValue beyond1 = f(top + 1), beyond2 = f(top + 2);
  bool unbounded = beyond1.is_finite() && beyond2 > beyond1;
  ExtValue at_inf = c == Carrier::DL ? windels_summand(c, kInf, x, a) : ExtValue{};

  if (opt.breakpoints) {
    if (unbounded) return {kInf, kInf};
    ExtValue best = std::max(at_inf, beyond1);
    for (const auto& t : marks) best = std::max(best, f(t));
    return {best, best};
  }

  if (opt.eps.is_zero()) throw domain_error("tolerance must be positive");
  // The summand is 1-Lipschitz in b, so the sup exceeds the grid max by at
  // most half the mesh.
  BigRational h = step.to_rational();
  unsigned j = 0;
  while (opt.eps.is_finite() && ExtValue::from_rational(h / 2) > opt.eps) {
    if (++j > max_refinements) throw certification_error("basis grid cannot reach tolerance " + opt.eps.str() + " within its schedule");
    h /= 2;
  }
  ExtValue best = at_inf;
  for (const auto& t : marks) {
    BigRational lo = floor_to(t, h);
    best = std::max({best, f(lo), f(lo + h)});
  }
  best = std::max(best, f(floor_to(top, h) + 2 * h));
  if (best.is_infinite()) return {kInf, kInf};
  if (unbounded) throw certification_error("sup over the basis grid is unbounded; no finite prefix certifies it");
  return {best, best + ExtValue::from_rational(h / 2)};
}

}  // namespace detail

/// Points of DL^n / DR^n are coordinate vectors. Powers use the product
/// formula sigma(x,A) = min_{a in A} max_i sigma_i(x_i, {a_i}), which holds
/// because both carriers are pointed and the sup over partitions of A is
/// attained by singletons.
inline Interval scott_distance_algebraic(const AlgebraicSpec& spec, const std::vector<ExtValue>& x, const std::vector<std::vector<ExtValue>>& a,
                                         const SigmaOptions& opt = {}) {
  if (spec.is_finite()) throw space_mismatch_error("canonical query against a finite carrier");
  spec.validate();
  const auto& c = spec.canonical();
  if (x.size() != c.dim) throw dimension_error("point has the wrong number of coordinates for " + c.name());
  for (const auto& p : a)
    if (p.size() != c.dim) throw dimension_error("point has the wrong number of coordinates for " + c.name());
  if (a.empty()) return {kInf, kInf};
  if (c.dim == 1) {
    std::vector<ExtValue> flat;
    for (const auto& p : a) flat.push_back(p[0]);
    return detail::sigma_one(c.base, spec.grid_step, spec.max_refinements, x[0], flat, opt);
  }
  Interval out{kInf, kInf};
  for (const auto& p : a) {
    Interval worst{};
    for (unsigned i = 0; i < c.dim; ++i) {
      auto one = detail::sigma_one(c.base, spec.grid_step, spec.max_refinements, x[i], {p[i]}, opt);
      worst.lo = std::max(worst.lo, one.lo);
      worst.hi = std::max(worst.hi, one.hi);
    }
    out.lo = std::min(out.lo, worst.lo);
    out.hi = std::min(out.hi, worst.hi);
  }
  return out;
}

inline Interval scott_distance_algebraic(const AlgebraicSpec& spec, const ExtValue& x, const std::vector<ExtValue>& a, const SigmaOptions& opt = {}) {
  std::vector<std::vector<ExtValue>> pts;
  for (const auto& v : a) pts.push_back({v});
  return scott_distance_algebraic(spec, std::vector<ExtValue>{x}, pts, opt);
}

struct SubbasisReport {
  std::size_t generators = 0;
  std::vector<std::string> irregular;  // generators failing regularity
  std::optional<std::pair<std::size_t, Subset>> reconstruction_failure;
  ExtValue reconstructed;
  ExtValue expected;

  bool ok() const { return irregular.empty() && !reconstruction_failure; }
};

/// Checks that the functions r (-) d(b,-) are regular for the Scott table
/// and that the sup of those vanishing on A recovers sigma(-,A).
inline SubbasisReport subbasis_check(const AlgebraicSpec& spec) {
  if (!spec.is_finite()) throw unsupported_error("subbasis check needs a finite carrier");
  spec.validate();
  const auto& s = spec.space();
  const auto sigma = scott_distance_finite(s);
  std::vector<ExtValue> radii{ExtValue{}, kInf};
  for (std::size_t x = 0; x < s->size(); ++x)
    for (std::size_t y = 0; y < s->size(); ++y) radii.push_back(s->d(x, y));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  SubbasisReport rep;
  std::vector<std::vector<ExtValue>> gens;
  for (auto b : spec.basis_points())
    for (const auto& r : radii) {
      std::vector<ExtValue> g(s->size());
      for (std::size_t y = 0; y < s->size(); ++y) g[y] = tminus(r, s->d(b, y));
      ++rep.generators;
      if (!is_regular_function(sigma, g)) rep.irregular.push_back(r.str() + " (-) d(" + s->label(b) + ",-)");
      gens.push_back(std::move(g));
    }
  for (Subset a = 0; a <= s->all() && !rep.reconstruction_failure; ++a)
    for (std::size_t x = 0; x < s->size(); ++x) {
      ExtValue best;
      for (const auto& g : gens) {
        bool vanishes = true;
        for (auto i : members(a)) vanishes = vanishes && g[i].is_zero();
        if (vanishes) best = std::max(best, g[x]);
      }
      if (best != sigma.at(x, a)) {
        rep.reconstruction_failure = std::make_pair(x, a);
        rep.reconstructed = best;
        rep.expected = sigma.at(x, a);
        break;
      }
    }
  return rep;
}

inline std::optional<std::size_t> bottom_element(const FiniteSpace& s) {
  for (std::size_t z = 0; z < s.size(); ++z) {
    bool ok = true;
    for (std::size_t x = 0; x < s.size() && ok; ++x) ok = s.d(z, x).is_zero();
    if (ok) return z;
  }
  return std::nullopt;
}

struct PowerSigmaReport {
  std::size_t entries = 0;
  std::optional<std::pair<std::size_t, Subset>> mismatch;
  ExtValue direct;
  ExtValue product;
  std::vector<std::string> labels;

  bool ok() const { return !mismatch; }
};

/// Sigma of the n-fold power against the n-fold product of Sigma.
inline PowerSigmaReport power_sigma_check(const SpacePtr& s, std::size_t n) {
  if (!bottom_element(*s)) throw domain_error("space has no bottom element");
  if (n == 0) throw domain_error("power exponent must be positive");
  auto pw = std::make_shared<const FiniteSpace>(power(*s, n));
  require_table_size(pw->size());
  const auto direct = scott_distance_finite(pw);
  const auto prod = product_table(std::vector<ApproachTable>(n, scott_distance_finite(s)));
  PowerSigmaReport rep;
  rep.labels = pw->labels();
  for (std::size_t x = 0; x < pw->size(); ++x)
    for (Subset a = 0; a <= pw->all(); ++a) {
      ++rep.entries;
      if (direct.at(x, a) != prod.at(x, a) && !rep.mismatch) {
        rep.mismatch = std::make_pair(x, a);
        rep.direct = direct.at(x, a);
        rep.product = prod.at(x, a);
      }
    }
  return rep;
}

}  // namespace approach_lab
