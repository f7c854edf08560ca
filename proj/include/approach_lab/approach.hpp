#pragma once

// Point-set distances on finite carriers, materialized as full tables.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"

namespace approach_lab {

inline void require_table_size(std::size_t n) {
  if (n > kMaxTablePoints)
    throw unsupported_error("tables are limited to " + std::to_string(kMaxTablePoints) + " points, got " + std::to_string(n));
}

/// delta(x, A) for every point x and subset A, stored at x * 2^n + A.
class ApproachTable {
 public:
  ApproachTable() = default;

  explicit ApproachTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
    require_table_size(labels_.size());
    entries_.assign(labels_.size() << labels_.size(), ExtValue{});
  }

  ApproachTable(std::vector<std::string> labels, std::vector<ExtValue> entries) : labels_(std::move(labels)), entries_(std::move(entries)) {
    require_table_size(labels_.size());
    if (entries_.size() != (labels_.size() << labels_.size())) throw dimension_error("table is not total over points and subsets");
  }

  std::size_t size() const noexcept { return labels_.size(); }
  Subset all() const { return full_subset(size()); }
  std::size_t subset_count() const { return std::size_t{1} << size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index(const std::string& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw unknown_point_error("unknown point '" + l + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  const ExtValue& at(std::size_t x, Subset a) const { return entries_[(x << size()) + a]; }
  void set(std::size_t x, Subset a, ExtValue v) { entries_[(x << size()) + a] = std::move(v); }

  const std::vector<ExtValue>& entries() const noexcept { return entries_; }

  friend bool operator==(const ApproachTable& a, const ApproachTable& b) { return a.labels_ == b.labels_ && a.entries_ == b.entries_; }

 private:
  std::vector<std::string> labels_;
  std::vector<ExtValue> entries_;
};

/// "{a,b}" with labels in point order; "{}" for the empty set.
inline std::string subset_text(const std::vector<std::string>& labels, Subset a) {
  std::string s = "{";
  bool first = true;
  for (auto i : members(a)) {
    s += (first ? "" : ",") + labels.at(i);
    first = false;
  }
  return s + "}";
}

struct ApproachViolation {
  int axiom;  // 1..4
  std::size_t x;
  Subset a;
  Subset b;  // second subset for (A3)/(A4), otherwise 0
};

struct ApproachReport {
  std::vector<ApproachViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks (A1)-(A4). Up to 8 points every triple (x,A,B) is visited; above
/// that (A3) is checked as delta(x,A) = min(delta(x,A\{a}), delta(x,{a}))
/// for the lowest a of each A, and (A4) on singleton B, which under (A3)
/// is equivalent to the full statement.
inline ApproachReport check_approach_axioms(const ApproachTable& t, std::size_t max_witnesses = 16) {
  ApproachReport r;
  const std::size_t n = t.size();
  const Subset full = t.all();
  auto add = [&](int ax, std::size_t x, Subset a, Subset b) {
    if (r.violations.size() < max_witnesses) r.violations.push_back({ax, x, a, b});
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!t.at(x, singleton(x)).is_zero()) add(1, x, singleton(x), 0);
    if (!t.at(x, 0).is_infinite()) add(2, x, 0, 0);
  }
  if (n <= 8) {
    std::vector<ExtValue> sup_b(std::size_t{1} << n);
    for (std::size_t x = 0; x < n; ++x)
      for (Subset a = 0; a <= full; ++a)
        for (Subset b = 0; b <= full; ++b)
          if (t.at(x, a | b) != std::min(t.at(x, a), t.at(x, b))) add(3, x, a, b);
    for (Subset a = 0; a <= full; ++a) {
      sup_b[0] = ExtValue{};
      for (Subset b = 1; b <= full; ++b) sup_b[b] = std::max(sup_b[b & (b - 1)], t.at(lowest(b), a));
      for (std::size_t x = 0; x < n; ++x)
        for (Subset b = 0; b <= full; ++b)
          if (t.at(x, a) > t.at(x, b) + sup_b[b]) add(4, x, a, b);
    }
    return r;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (Subset a = 1; a <= full; ++a) {
      if (popcount(a) < 2) continue;
      Subset low = a & (~a + 1);
      if (t.at(x, a) != std::min(t.at(x, a ^ low), t.at(x, low))) add(3, x, a ^ low, low);
    }
    for (Subset a = 1; a <= full; ++a)
      if (t.at(x, 0) < t.at(x, a)) add(3, x, a, 0);
  }
  for (Subset a = 0; a <= full; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t b = 0; b < n; ++b)
        if (t.at(x, a) > t.at(x, singleton(b)) + t.at(b, a)) add(4, x, a, singleton(b));
  return r;
}

inline void require_approach(const ApproachTable& t) {
  auto r = check_approach_axioms(t, 1);
  if (r.ok()) return;
  const auto& v = r.violations.front();
  throw invalid_structure_error("axiom (A" + std::to_string(v.axiom) + ") fails at x=" + t.label(v.x) + ", A=" + subset_text(t.labels(), v.a));
}

/// Gamma(d)(x, A) = min_{a in A} d(x,a), inf on the empty set.
inline ApproachTable alexandroff(const FiniteSpace& s) {
  require_table_size(s.size());
  ApproachTable t(s.labels());
  const Subset full = s.all();
  for (std::size_t x = 0; x < s.size(); ++x) {
    t.set(x, 0, kInf);
    for (Subset a = 1; a <= full; ++a) {
      std::size_t lo = lowest(a);
      t.set(x, a, std::min(t.at(x, a & (a - 1)), s.d(x, lo)));
    }
  }
  return t;
}

/// Scott weights are the Scott-weight checked members of the witness family
/// {Gamma(-,B) : B subset of X}. sigma(x,A) is the max of Gamma(x,B) over B
/// whose zero set Z(B) = {y : Gamma(y,B) = 0} contains A, computed with a
/// superset-max transform over zero sets.
///
/// Throws invalid_structure_error if a witness fails the Scott-weight test.
inline ApproachTable scott_sup_table(const SpacePtr& s) {
  const std::size_t n = s->size();
  require_table_size(n);
  const ApproachTable gamma = alexandroff(*s);
  const Subset full = s->all();
  const FlatCatalogue cat = flat_catalogue(s);
  ApproachTable best(s->labels());  // best(x, S): max Gamma(x,B) over B with Z(B) == S
  for (Subset b = 0; b <= full; ++b) {
    std::vector<ExtValue> col(n);
    Subset zero = 0;
    for (std::size_t y = 0; y < n; ++y) {
      col[y] = gamma.at(y, b);
      if (col[y].is_zero()) zero |= singleton(y);
    }
    if (!is_scott_weight(WeightFn(s, col), cat))
      throw invalid_structure_error("witness Gamma(-," + subset_text(s->labels(), b) + ") is not a Scott weight");
    for (std::size_t x = 0; x < n; ++x)
      if (best.at(x, zero) < col[x]) best.set(x, zero, col[x]);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (Subset a = 0; a <= full; ++a)
        if (!contains(a, i) && best.at(x, a) < best.at(x, a | singleton(i))) best.set(x, a, best.at(x, a | singleton(i)));
  return best;
}

/// The Scott distance of a finite space. Finite spaces are Smyth
/// completable, so it must agree with the Alexandroff distance; a mismatch
/// is reported as a hard failure.
inline ApproachTable scott_distance_finite(const SpacePtr& s) {
  ApproachTable sigma = scott_sup_table(s);
  ApproachTable gamma = alexandroff(*s);
  if (!(sigma == gamma)) {
    for (std::size_t x = 0; x < s->size(); ++x)
      for (Subset a = 0; a <= s->all(); ++a)
        if (sigma.at(x, a) != gamma.at(x, a))
          throw invalid_structure_error("Scott and Alexandroff distances differ at x=" + s->label(x) + ", A=" + subset_text(s->labels(), a) + ": " +
                                        sigma.at(x, a).str() + " vs " + gamma.at(x, a).str());
  }
  return sigma;
}

inline ApproachTable scott_distance_finite(const FiniteSpace& s) { return scott_distance_finite(std::make_shared<const FiniteSpace>(s)); }

/// delta(x,A) >= phi(x) (-) sup phi(A) for every x and nonempty A. The empty
/// set is skipped: delta(x, {}) = inf dominates any right-hand side.
inline std::optional<std::pair<std::size_t, Subset>> regularity_violation(const ApproachTable& t, const std::vector<ExtValue>& phi) {
  if (phi.size() != t.size()) throw dimension_error("function has the wrong number of values");
  const Subset full = t.all();
  std::vector<ExtValue> sup(std::size_t{1} << t.size());
  for (Subset a = 1; a <= full; ++a) sup[a] = std::max(sup[a & (a - 1)], phi[lowest(a)]);
  for (std::size_t x = 0; x < t.size(); ++x)
    for (Subset a = 1; a <= full; ++a)
      if (t.at(x, a) < tminus(phi[x], sup[a])) return std::make_pair(x, a);
  return std::nullopt;
}

inline bool is_regular_function(const ApproachTable& t, const std::vector<ExtValue>& phi) { return !regularity_violation(t, phi); }

/// A finite topology by its closed sets, kept sorted.
struct TopologySpec {
  std::vector<std::string> labels;
  std::vector<Subset> closed;

  TopologySpec() = default;
  TopologySpec(std::vector<std::string> l, std::vector<Subset> c) : labels(std::move(l)), closed(std::move(c)) {
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  }

  Subset all() const { return full_subset(labels.size()); }

  bool is_closed(Subset a) const { return std::binary_search(closed.begin(), closed.end(), a); }

  std::optional<std::string> defect() const {
    if (!is_closed(0)) return "the empty set is not closed";
    if (!is_closed(all())) return "the whole carrier is not closed";
    for (Subset a : closed) {
      if ((a & ~all()) != 0) return "a closed set mentions points outside the carrier";
      for (Subset b : closed) {
        if (!is_closed(a | b)) return "not closed under union: " + subset_text(labels, a) + " and " + subset_text(labels, b);
        if (!is_closed(a & b)) return "not closed under intersection: " + subset_text(labels, a) + " and " + subset_text(labels, b);
      }
    }
    return std::nullopt;
  }

  void validate() const {
    if (auto d = defect()) throw invalid_structure_error("invalid topology: " + *d);
  }

  Subset closure(Subset a) const {
    Subset c = all();
    for (Subset f : closed)
      if ((f & a) == a) c &= f;
    return c;
  }

  std::vector<Subset> open_sets() const {
    std::vector<Subset> o;
    for (Subset f : closed) o.push_back(all() & ~f);
    std::sort(o.begin(), o.end());
    return o;
  }

  static TopologySpec from_open_sets(std::vector<std::string> labels, const std::vector<Subset>& opens) {
    std::vector<Subset> c;
    Subset full = full_subset(labels.size());
    for (Subset u : opens) c.push_back(full & ~u);
    return TopologySpec(std::move(labels), std::move(c));
  }

  friend bool operator==(const TopologySpec& a, const TopologySpec& b) { return a.labels == b.labels && a.closed == b.closed; }
};

/// Closed sets are the fixed points of A -> {x : delta(x,A) = 0}; the
/// closure is checked to be extensive, idempotent and additive.
inline TopologySpec coreflection(const ApproachTable& t) {
  const Subset full = t.all();
  std::vector<Subset> cl(std::size_t{1} << t.size());
  for (Subset a = 0; a <= full; ++a) {
    Subset c = 0;
    for (std::size_t x = 0; x < t.size(); ++x)
      if (t.at(x, a).is_zero()) c |= singleton(x);
    cl[a] = c;
  }
  std::vector<Subset> closed;
  for (Subset a = 0; a <= full; ++a) {
    if ((cl[a] & a) != a) throw invalid_structure_error("closure is not extensive at " + subset_text(t.labels(), a));
    if (cl[cl[a]] != cl[a]) throw invalid_structure_error("closure is not idempotent at " + subset_text(t.labels(), a));
    if (a != 0 && cl[a] != (cl[a & (a - 1)] | cl[a & (~a + 1)])) throw invalid_structure_error("closure is not additive at " + subset_text(t.labels(), a));
    if (cl[a] == a) closed.push_back(a);
  }
  if (cl[0] != 0) throw invalid_structure_error("closure of the empty set is not empty");
  return TopologySpec(t.labels(), std::move(closed));
}

/// Omega(delta)(x,y) = delta(x,{y}).
inline FiniteSpace specialization(const ApproachTable& t) {
  std::vector<std::vector<ExtValue>> rows(t.size(), std::vector<ExtValue>(t.size()));
  for (std::size_t x = 0; x < t.size(); ++x)
    for (std::size_t y = 0; y < t.size(); ++y) rows[x][y] = t.at(x, singleton(y));
  FiniteSpace s(t.labels(), std::move(rows));
  require_metric(s);
  return s;
}

inline Subset image_of(const std::vector<std::size_t>& f, Subset a) {
  Subset out = 0;
  for (auto i : members(a)) out |= singleton(f.at(i));
  return out;
}

/// First (x,A) with delta_X(x,A) < delta_Y(f x, f A), if any.
inline std::optional<std::pair<std::size_t, Subset>> contraction_violation(const std::vector<std::size_t>& f, const ApproachTable& s, const ApproachTable& t) {
  if (f.size() != s.size()) throw dimension_error("map is not total on its source");
  for (auto y : f)
    if (y >= t.size()) throw unknown_point_error("map sends a point outside its target");
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Subset a = 0; a <= s.all(); ++a)
      if (s.at(x, a) < t.at(f[x], image_of(f, a))) return std::make_pair(x, a);
  return std::nullopt;
}

inline bool is_contraction(const std::vector<std::size_t>& f, const ApproachTable& s, const ApproachTable& t) { return !contraction_violation(f, s, t); }
inline bool is_contraction(const PointMap& f, const ApproachTable& s, const ApproachTable& t) { return is_contraction(f.image, s, t); }

/// omega(T)(x,A) = 0 if x is in the closure of A, inf otherwise.
inline ApproachTable embed_topology(const TopologySpec& top) {
  top.validate();
  ApproachTable t(top.labels);
  for (Subset a = 0; a <= top.all(); ++a) {
    Subset c = top.closure(a);
    for (std::size_t x = 0; x < top.labels.size(); ++x) t.set(x, a, contains(c, x) ? ExtValue{} : kInf);
  }
  return t;
}

/// Product of approach tables on the product carrier (first factor most
/// significant). On a finite carrier the initial structure for the
/// projections reduces to delta(x,A) = min_{a in A} max_i delta_i(x_i, {a_i}):
/// the sup over finite partitions of A is attained by the partition into
/// singletons.
inline ApproachTable product_table(const std::vector<ApproachTable>& factors) {
  if (factors.empty()) throw domain_error("product of an empty list of tables");
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& f : factors) {
    sizes.push_back(f.size());
    total *= f.size();
  }
  require_table_size(total);
  std::vector<std::string> labels(total);
  std::vector<std::vector<std::size_t>> coords(total);
  for (std::size_t p = 0; p < total; ++p) {
    coords[p] = product_coordinates(sizes, p);
    std::string l = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) l += (i ? "," : "") + factors[i].label(coords[p][i]);
    labels[p] = l + ")";
  }
  ApproachTable t(labels);
  for (std::size_t x = 0; x < total; ++x) {
    std::vector<ExtValue> single(total);
    for (std::size_t a = 0; a < total; ++a) {
      ExtValue m;
      for (std::size_t i = 0; i < factors.size(); ++i) m = std::max(m, factors[i].at(coords[x][i], singleton(coords[a][i])));
      single[a] = m;
    }
    t.set(x, 0, kInf);
    for (Subset a = 1; a <= t.all(); ++a) t.set(x, a, std::min(t.at(x, a & (a - 1)), single[lowest(a)]));
  }
  return t;
}

}  // namespace approach_lab
