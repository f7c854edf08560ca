#pragma once

// Weights and coweights of a finite space and the calculus built on them.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/space.hpp"

namespace approach_lab {

enum class Variance { weight, coweight };

/// phi(x) <= phi(y) + d(x,y) for weights, psi(y) <= psi(x) + d(x,y) for
/// coweights. Returns the first failing pair (x,y) of the inequality as
/// written for the variance, or nothing.
inline std::optional<std::pair<std::size_t, std::size_t>> weight_violation(const FiniteSpace& s, const std::vector<ExtValue>& v, Variance var) {
  if (v.size() != s.size()) throw dimension_error("expected " + std::to_string(s.size()) + " values, got " + std::to_string(v.size()));
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y) {
      bool bad = var == Variance::weight ? v[x] > v[y] + s.d(x, y) : v[y] > v[x] + s.d(x, y);
      if (bad) return std::make_pair(x, y);
    }
  return std::nullopt;
}

inline bool is_weight(const FiniteSpace& s, const std::vector<ExtValue>& v) { return !weight_violation(s, v, Variance::weight); }
inline bool is_coweight(const FiniteSpace& s, const std::vector<ExtValue>& v) { return !weight_violation(s, v, Variance::coweight); }

/// Values indexed by point, keyed by label in text form.
inline std::vector<ExtValue> values_from_map(const FiniteSpace& s, const std::map<std::string, ExtValue>& m) {
  std::vector<std::optional<ExtValue>> slots(s.size());
  for (const auto& [label, v] : m) slots[s.index(label)] = v;
  std::vector<ExtValue> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!slots[i]) throw unknown_point_error("no value given for point '" + s.label(i) + "'");
    out.push_back(*slots[i]);
  }
  return out;
}

template <Variance V>
class PointFunction {
 public:
  PointFunction(SpacePtr space, std::vector<ExtValue> values) : space_(std::move(space)), values_(std::move(values)) {
    if (auto bad = weight_violation(*space_, values_, V)) {
      const char* what = V == Variance::weight ? "not a weight: " : "not a coweight: ";
      auto [x, y] = *bad;
      throw not_a_weight_error(std::string(what) + "fails at (" + space_->label(x) + "," + space_->label(y) + ")");
    }
  }

  static PointFunction from_map(SpacePtr space, const std::map<std::string, ExtValue>& m) {
    auto v = values_from_map(*space, m);
    return PointFunction(std::move(space), std::move(v));
  }

  static PointFunction constant(SpacePtr space, const ExtValue& c) {
    std::vector<ExtValue> v(space->size(), c);
    return PointFunction(std::move(space), std::move(v));
  }

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<ExtValue>& values() const noexcept { return values_; }
  const ExtValue& operator()(std::size_t x) const { return values_.at(x); }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const PointFunction& a, const PointFunction& b) { return same_space(*a.space_, *b.space_) && a.values_ == b.values_; }

 private:
  SpacePtr space_;
  std::vector<ExtValue> values_;
};

using WeightFn = PointFunction<Variance::weight>;
using CoweightFn = PointFunction<Variance::coweight>;

inline void require_same_space(const FiniteSpace& a, const FiniteSpace& b) {
  if (!same_space(a, b)) throw space_mismatch_error("operands live over different spaces");
}

/// Closure under the weight inequality: phi'(x) = min_y phi(y) + d(x,y).
inline WeightFn repair_to_weight(SpacePtr s, const std::vector<ExtValue>& raw) {
  std::vector<ExtValue> v(s->size(), kInf);
  for (std::size_t x = 0; x < s->size(); ++x)
    for (std::size_t y = 0; y < s->size(); ++y) v[x] = std::min(v[x], raw.at(y) + s->d(x, y));
  return WeightFn(std::move(s), std::move(v));
}

/// psi'(y) = min_x psi(x) + d(x,y).
inline CoweightFn repair_to_coweight(SpacePtr s, const std::vector<ExtValue>& raw) {
  std::vector<ExtValue> v(s->size(), kInf);
  for (std::size_t y = 0; y < s->size(); ++y)
    for (std::size_t x = 0; x < s->size(); ++x) v[y] = std::min(v[y], raw.at(x) + s->d(x, y));
  return CoweightFn(std::move(s), std::move(v));
}

/// sup_x d_L(phi(x), psi(x)).
inline ExtValue bar_distance(const WeightFn& phi, const WeightFn& psi) {
  require_same_space(*phi.space(), *psi.space());
  ExtValue m;
  for (std::size_t x = 0; x < phi.size(); ++x) m = std::max(m, d_left(phi(x), psi(x)));
  return m;
}

/// y(x) = d(-,x).
inline WeightFn yoneda_embed(const SpacePtr& s, std::size_t x) {
  if (x >= s->size()) throw unknown_point_error("point index out of range");
  std::vector<ExtValue> v;
  for (std::size_t z = 0; z < s->size(); ++z) v.push_back(s->d(z, x));
  return WeightFn(s, std::move(v));
}

/// d(x,-).
inline CoweightFn coyoneda_embed(const SpacePtr& s, std::size_t x) {
  if (x >= s->size()) throw unknown_point_error("point index out of range");
  std::vector<ExtValue> v;
  for (std::size_t z = 0; z < s->size(); ++z) v.push_back(s->d(x, z));
  return CoweightFn(s, std::move(v));
}

/// inf_x phi(x) + psi(x).
inline ExtValue tensor(const WeightFn& phi, const CoweightFn& psi) {
  require_same_space(*phi.space(), *psi.space());
  ExtValue m = kInf;
  for (std::size_t x = 0; x < phi.size(); ++x) m = std::min(m, phi(x) + psi(x));
  return m;
}

inline CoweightFn max_coweight(const CoweightFn& a, const CoweightFn& b) {
  require_same_space(*a.space(), *b.space());
  std::vector<ExtValue> v;
  for (std::size_t x = 0; x < a.size(); ++x) v.push_back(std::max(a(x), b(x)));
  return CoweightFn(a.space(), std::move(v));
}

inline WeightFn min_weight(const WeightFn& a, const WeightFn& b) {
  require_same_space(*a.space(), *b.space());
  std::vector<ExtValue> v;
  for (std::size_t x = 0; x < a.size(); ++x) v.push_back(std::min(a(x), b(x)));
  return WeightFn(a.space(), std::move(v));
}

inline std::optional<std::size_t> representing_point(const WeightFn& phi) {
  for (std::size_t x = 0; x < phi.size(); ++x)
    if (yoneda_embed(phi.space(), x) == phi) return x;
  return std::nullopt;
}

/// phi attains 0 and every pair x,y has a common z with
/// phi(z)+d(x,z) <= phi(x) and phi(z)+d(y,z) <= phi(y).
///
/// This is the finite form of directedness of B+phi: for balls (x,r),(y,s)
/// above phi a common upper bound exists iff some z does better than both
/// centers by their margins, and the margins can be taken arbitrarily small.
inline bool is_flat(const WeightFn& phi) {
  const auto& s = *phi.space();
  const std::size_t n = s.size();
  bool attains_zero = false;
  for (std::size_t x = 0; x < n; ++x) attains_zero = attains_zero || phi(x).is_zero();
  if (!attains_zero) return false;
  // serves[x][z]: phi(z) + d(x,z) <= phi(x).
  std::vector<std::vector<bool>> serves(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) serves[x][z] = phi(z) + s.d(x, z) <= phi(x);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool found = false;
      for (std::size_t z = 0; z < n && !found; ++z) found = serves[x][z] && serves[y][z];
      if (!found) return false;
    }
  return true;
}

/// psi(y) = sup_x d(x,y) (-) phi(x): the least coweight with
/// phi(x) + psi(y) >= d(x,y) everywhere.
inline CoweightFn canonical_residual(const WeightFn& phi) {
  const auto& s = *phi.space();
  std::vector<ExtValue> v(s.size());
  for (std::size_t y = 0; y < s.size(); ++y)
    for (std::size_t x = 0; x < s.size(); ++x) v[y] = std::max(v[y], tminus(s.d(x, y), phi(x)));
  return CoweightFn(phi.space(), std::move(v));
}

inline bool is_cauchy_pair(const WeightFn& phi, const CoweightFn& psi) {
  const auto& s = *phi.space();
  if (!tensor(phi, psi).is_zero()) return false;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (phi(x) + psi(y) < s.d(x, y)) return false;
  return true;
}

/// Since the canonical residual is pointwise least among admissible
/// coweights and tensor is monotone, it is a witness whenever one exists.
inline std::optional<CoweightFn> cauchy_witness(const WeightFn& phi) {
  auto psi = canonical_residual(phi);
  if (is_cauchy_pair(phi, psi)) return psi;
  return std::nullopt;
}

inline bool is_cauchy(const WeightFn& phi) { return cauchy_witness(phi).has_value(); }

/// Points a with d_bar(phi, y(y)) = d(a,y) for all y.
inline std::vector<std::size_t> colimits(const WeightFn& phi) {
  const auto& sp = phi.space();
  std::vector<ExtValue> target;
  for (std::size_t y = 0; y < sp->size(); ++y) target.push_back(bar_distance(phi, yoneda_embed(sp, y)));
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < sp->size(); ++a) {
    bool ok = true;
    for (std::size_t y = 0; y < sp->size() && ok; ++y) ok = sp->d(a, y) == target[y];
    if (ok) out.push_back(a);
  }
  return out;
}

/// inf_i sup_{j>=i} d(-, x_j) = max over the cycle of d(-, u).
inline WeightFn net_weight(const FiniteNet& net) {
  if (!is_forward_cauchy(net)) throw not_forward_cauchy_error("net is not forward Cauchy");
  std::vector<ExtValue> v(net.space->size());
  for (std::size_t x = 0; x < v.size(); ++x)
    for (auto u : net.cycle) v[x] = std::max(v[x], net.space->d(x, u));
  return WeightFn(net.space, std::move(v));
}

/// Flat weights of a finite space together with their colimits, one
/// representative per zero-distance cluster. The tail of a forward Cauchy
/// net lies in one cluster, and points of a cluster have equal
/// representables, so these are all the flat weights.
struct FlatCatalogue {
  std::vector<WeightFn> flats;
  std::vector<std::vector<std::size_t>> colimits;
};

inline FlatCatalogue flat_catalogue(const SpacePtr& s) {
  FlatCatalogue c;
  for (const auto& cluster : zero_clusters(*s)) {
    auto w = net_weight(FiniteNet{s, {}, cluster});
    c.colimits.push_back(approach_lab::colimits(w));
    c.flats.push_back(std::move(w));
  }
  return c;
}

/// d_bar(psi, phi) >= phi(x) for every flat psi and every colimit x of psi.
inline bool is_scott_weight(const WeightFn& phi, const FlatCatalogue& cat) {
  for (std::size_t i = 0; i < cat.flats.size(); ++i) {
    ExtValue dist = bar_distance(cat.flats[i], phi);
    for (auto x : cat.colimits[i])
      if (dist < phi(x)) return false;
  }
  return true;
}

inline bool is_scott_weight(const WeightFn& phi) { return is_scott_weight(phi, flat_catalogue(phi.space())); }

/// A total map between the points of two finite spaces.
struct PointMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t x) const { return image.at(x); }

  void validate() const {
    if (!source || !target) throw space_mismatch_error("map without source or target");
    if (image.size() != source->size()) throw dimension_error("map is not total on its source");
    for (auto y : image)
      if (y >= target->size()) throw unknown_point_error("map sends a point outside its target");
  }

  static PointMap identity(const SpacePtr& s) {
    PointMap f{s, s, {}};
    for (std::size_t x = 0; x < s->size(); ++x) f.image.push_back(x);
    return f;
  }

  static PointMap from_labels(SpacePtr source, SpacePtr target, const std::map<std::string, std::string>& m) {
    PointMap f{source, target, std::vector<std::size_t>(source->size(), SIZE_MAX)};
    for (const auto& [a, b] : m) f.image[source->index(a)] = target->index(b);
    for (std::size_t x = 0; x < f.image.size(); ++x)
      if (f.image[x] == SIZE_MAX) throw unknown_point_error("map has no image for '" + source->label(x) + "'");
    return f;
  }
};

/// First pair (x,y) with d_Y(f x, f y) > d_X(x,y), if any.
inline std::optional<std::pair<std::size_t, std::size_t>> expansion_witness(const PointMap& f) {
  f.validate();
  for (std::size_t x = 0; x < f.source->size(); ++x)
    for (std::size_t y = 0; y < f.source->size(); ++y)
      if (f.target->d(f(x), f(y)) > f.source->d(x, y)) return std::make_pair(x, y);
  return std::nullopt;
}

inline bool is_non_expansive(const PointMap& f) { return !expansion_witness(f); }

/// f_bar(phi)(y) = inf_x phi(x) + d_Y(y, f x).
inline WeightFn kan_extend(const PointMap& f, const WeightFn& phi) {
  f.validate();
  require_same_space(*f.source, *phi.space());
  std::vector<ExtValue> v(f.target->size(), kInf);
  for (std::size_t y = 0; y < v.size(); ++y)
    for (std::size_t x = 0; x < f.source->size(); ++x) v[y] = std::min(v[y], phi(x) + f.target->d(y, f(x)));
  return WeightFn(f.target, std::move(v));
}

/// xi o f for a weight xi of the target.
inline WeightFn precompose(const WeightFn& xi, const PointMap& f) {
  f.validate();
  require_same_space(*f.target, *xi.space());
  std::vector<ExtValue> v;
  for (std::size_t x = 0; x < f.source->size(); ++x) v.push_back(xi(f(x)));
  return WeightFn(f.source, std::move(v));
}

inline CoweightFn precompose(const CoweightFn& psi, const PointMap& f) {
  f.validate();
  require_same_space(*f.target, *psi.space());
  std::vector<ExtValue> v;
  for (std::size_t x = 0; x < f.source->size(); ++x) v.push_back(psi(f(x)));
  return CoweightFn(f.source, std::move(v));
}

struct AdjunctionReport {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (x in X, y in Y)
};

/// f left adjoint to g: d_Y(f x, y) = d_X(x, g y) for all x, y.
inline AdjunctionReport check_adjunction(const PointMap& f, const PointMap& g) {
  f.validate();
  g.validate();
  require_same_space(*f.source, *g.target);
  require_same_space(*f.target, *g.source);
  if (!is_non_expansive(f)) throw not_non_expansive_error("left map is not non-expansive");
  if (!is_non_expansive(g)) throw not_non_expansive_error("right map is not non-expansive");
  for (std::size_t x = 0; x < f.source->size(); ++x)
    for (std::size_t y = 0; y < f.target->size(); ++y)
      if (f.target->d(f(x), y) != f.source->d(x, g(y))) return {false, std::make_pair(x, y)};
  return {};
}

/// Every forward Cauchy net of a finite space is, up to its prefix, a cycle
/// inside one zero-distance cluster. These are the distinct tails.
inline std::vector<std::vector<std::size_t>> forward_cauchy_tails(const FiniteSpace& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& cluster : zero_clusters(s)) {
    if (cluster.size() > 12) throw unsupported_error("zero-distance cluster too large to enumerate");
    for (Subset t = 1; t < (Subset{1} << cluster.size()); ++t) {
      std::vector<std::size_t> tail;
      for (auto i : members(t)) tail.push_back(cluster[i]);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

/// Non-expansive, and f(x) is a Yoneda limit of {f(x_i)} whenever x is one
/// of {x_i}; checked over all tails of forward Cauchy nets.
inline bool is_yoneda_continuous(const PointMap& f) {
  if (!is_non_expansive(f)) return false;
  for (const auto& tail : forward_cauchy_tails(*f.source)) {
    FiniteNet net{f.source, {}, tail};
    FiniteNet image{f.target, {}, {}};
    for (auto u : tail) image.cycle.push_back(f(u));
    if (!is_forward_cauchy(image)) return false;
    auto lim = yoneda_limits(image);
    for (auto x : yoneda_limits(net))
      if (std::find(lim.begin(), lim.end(), f(x)) == lim.end()) return false;
  }
  return true;
}

}  // namespace approach_lab
