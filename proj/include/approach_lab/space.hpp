#pragma once

// Finite generalized (Lawvere) metric spaces.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"

namespace approach_lab {

/// Subsets of a finite carrier as bitmasks; bit i is point i.
using Subset = std::uint32_t;

/// Largest carrier for which subset-indexed tables are materialized.
inline constexpr std::size_t kMaxTablePoints = 16;

inline Subset full_subset(std::size_t n) { return n >= 32 ? ~Subset{0} : ((Subset{1} << n) - 1); }
inline bool contains(Subset s, std::size_t i) { return (s >> i) & 1u; }
inline Subset singleton(std::size_t i) { return Subset{1} << i; }
inline int popcount(Subset s) { return __builtin_popcount(s); }
inline std::size_t lowest(Subset s) { return static_cast<std::size_t>(__builtin_ctz(s)); }

inline std::vector<std::size_t> members(Subset s) {
  std::vector<std::size_t> out;
  for (; s != 0; s &= s - 1) out.push_back(lowest(s));
  return out;
}

/// Labelled points with an exact distance matrix. The constructor checks
/// shape only; the metric laws are checked by check_metric_axioms so that
/// malformed inputs can still be inspected.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<ExtValue>> rows)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw dimension_error("a space needs at least one point");
    if (rows.size() != n) throw dimension_error("distance matrix has " + std::to_string(rows.size()) + " rows for " + std::to_string(n) + " points");
    d_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw dimension_error("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
      for (auto& v : rows[i]) d_.push_back(std::move(v));
    }
    index_labels();
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw unknown_point_error("unknown point '" + label + "'");
    return it->second;
  }

  bool has_point(const std::string& label) const { return index_.count(label) != 0; }

  const ExtValue& d(std::size_t x, std::size_t y) const { return d_[x * size() + y]; }

  std::vector<std::vector<ExtValue>> matrix() const {
    std::vector<std::vector<ExtValue>> rows(size());
    for (std::size_t i = 0; i < size(); ++i) rows[i].assign(d_.begin() + i * size(), d_.begin() + (i + 1) * size());
    return rows;
  }

  Subset all() const { return full_subset(size()); }

  Subset subset_of(const std::vector<std::string>& names) const {
    if (size() > 32) throw unsupported_error("subset masks need at most 32 points");
    Subset s = 0;
    for (const auto& name : names) s |= singleton(index(name));
    return s;
  }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return a.labels_ == b.labels_ && a.d_ == b.d_; }

 private:
  void index_labels() {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!index_.emplace(labels_[i], i).second) throw parse_error("duplicate point label '" + labels_[i] + "'");
  }

  std::vector<std::string> labels_;
  std::vector<ExtValue> d_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_space(std::vector<std::string> labels, std::vector<std::vector<ExtValue>> rows) {
  return std::make_shared<const FiniteSpace>(std::move(labels), std::move(rows));
}

inline bool same_space(const FiniteSpace& a, const FiniteSpace& b) { return &a == &b || a == b; }

struct MetricViolation {
  enum class Kind { diagonal, triangle } kind;
  std::size_t x, y, z;  // y == z == x for diagonal violations
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Lists every x with d(x,x) != 0 and every triple with d(x,z) > d(x,y)+d(y,z).
inline MetricReport check_metric_axioms(const FiniteSpace& s, std::size_t max_witnesses = SIZE_MAX) {
  MetricReport r;
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n && r.violations.size() < max_witnesses; ++x)
    if (!s.d(x, x).is_zero()) r.violations.push_back({MetricViolation::Kind::diagonal, x, x, x});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (r.violations.size() >= max_witnesses) return r;
        if (s.d(x, z) > s.d(x, y) + s.d(y, z)) r.violations.push_back({MetricViolation::Kind::triangle, x, y, z});
      }
  return r;
}

inline void require_metric(const FiniteSpace& s) {
  auto r = check_metric_axioms(s, 1);
  if (r.ok()) return;
  const auto& v = r.violations.front();
  if (v.kind == MetricViolation::Kind::diagonal) throw invalid_structure_error("d(" + s.label(v.x) + "," + s.label(v.x) + ") is not 0");
  throw invalid_structure_error("triangle law fails at (" + s.label(v.x) + "," + s.label(v.y) + "," + s.label(v.z) + ")");
}

inline FiniteSpace opposite(const FiniteSpace& s) {
  auto rows = s.matrix();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) rows[i][j] = s.d(j, i);
  return FiniteSpace(s.labels(), std::move(rows));
}

/// Coordinates of product point p, first factor most significant.
inline std::vector<std::size_t> product_coordinates(const std::vector<std::size_t>& sizes, std::size_t p) {
  std::vector<std::size_t> c(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    c[i] = p % sizes[i];
    p /= sizes[i];
  }
  return c;
}

/// Cartesian product with the sup metric. Labels are "(a,b,...)".
inline FiniteSpace product(const std::vector<FiniteSpace>& factors) {
  if (factors.empty()) throw domain_error("product of an empty list of spaces");
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& f : factors) {
    sizes.push_back(f.size());
    total *= f.size();
  }
  std::vector<std::string> labels(total);
  std::vector<std::vector<std::size_t>> coords(total);
  for (std::size_t p = 0; p < total; ++p) {
    coords[p] = product_coordinates(sizes, p);
    std::string l = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) l += (i ? "," : "") + factors[i].label(coords[p][i]);
    labels[p] = l + ")";
  }
  std::vector<std::vector<ExtValue>> rows(total, std::vector<ExtValue>(total));
  for (std::size_t p = 0; p < total; ++p)
    for (std::size_t q = 0; q < total; ++q) {
      ExtValue m;
      for (std::size_t i = 0; i < factors.size(); ++i) m = std::max(m, factors[i].d(coords[p][i], coords[q][i]));
      rows[p][q] = m;
    }
  return FiniteSpace(std::move(labels), std::move(rows));
}

inline FiniteSpace power(const FiniteSpace& s, std::size_t n) {
  if (n == 0) throw domain_error("power exponent must be positive");
  return product(std::vector<FiniteSpace>(n, s));
}

using Relation = std::vector<std::vector<bool>>;

/// x <= y iff d(x,y) = 0. Transitivity is asserted.
inline Relation specialization_order(const FiniteSpace& s) {
  const std::size_t n = s.size();
  Relation r(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) r[x][y] = s.d(x, y).is_zero();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][y] && r[y][z] && !r[x][z])
          throw invalid_structure_error("specialization order not transitive at (" + s.label(x) + "," + s.label(y) + "," + s.label(z) + ")");
  return r;
}

/// The metric of a preorder: 0 where x <= y, inf elsewhere.
inline FiniteSpace omega_of_order(std::vector<std::string> labels, const Relation& leq) {
  const std::size_t n = labels.size();
  if (leq.size() != n) throw dimension_error("relation size does not match the point count");
  std::vector<std::vector<ExtValue>> rows(n, std::vector<ExtValue>(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (leq[x].size() != n) throw dimension_error("relation row has the wrong length");
    for (std::size_t y = 0; y < n; ++y) rows[x][y] = (x == y || leq[x][y]) ? ExtValue{} : kInf;
  }
  return FiniteSpace(std::move(labels), std::move(rows));
}

/// Classes of the equivalence d(x,y) = d(y,x) = 0, in order of first member.
inline std::vector<std::vector<std::size_t>> zero_clusters(const FiniteSpace& s) {
  const std::size_t n = s.size();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    cls[x] = static_cast<int>(out.size());
    out.push_back({x});
    for (std::size_t y = x + 1; y < n; ++y)
      if (cls[y] < 0 && s.d(x, y).is_zero() && s.d(y, x).is_zero()) {
        cls[y] = cls[x];
        out.back().push_back(y);
      }
  }
  return out;
}

/// Smallest nonzero finite entry of the matrix, if any.
inline std::optional<ExtValue> min_positive_distance(const FiniteSpace& s) {
  std::optional<ExtValue> m;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y) {
      const auto& v = s.d(x, y);
      if (!v.is_zero() && v.is_finite() && (!m || v < *m)) m = v;
    }
  return m;
}

}  // namespace approach_lab
