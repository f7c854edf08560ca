#pragma once

// Finitely presented forward Cauchy nets and their Yoneda limits.
//
// Two descriptor families are supported: eventually cyclic nets over a
// finite space, and closed-form sequences in [0,inf] with d_L or d_R (and
// their finite powers, one descriptor per coordinate). Terms are indexed
// from n = 1.

#include <string>
#include <variant>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/space.hpp"

namespace approach_lab {

/// Runs `prefix`, then repeats `cycle` forever.
struct FiniteNet {
  SpacePtr space;
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;

  static FiniteNet constant(SpacePtr s, std::size_t x) { return {std::move(s), {}, {x}}; }

  static FiniteNet from_labels(SpacePtr s, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
    FiniteNet net{s, {}, {}};
    for (const auto& l : prefix) net.prefix.push_back(s->index(l));
    for (const auto& l : cycle) net.cycle.push_back(s->index(l));
    net.validate();
    return net;
  }

  void validate() const {
    if (!space) throw space_mismatch_error("net has no space");
    if (cycle.empty()) throw domain_error("net cycle must be nonempty");
    for (auto x : prefix)
      if (x >= space->size()) throw space_mismatch_error("net point outside its space");
    for (auto x : cycle)
      if (x >= space->size()) throw space_mismatch_error("net point outside its space");
  }

  /// x_n for n >= 1.
  std::size_t term(std::size_t n) const {
    if (n == 0) throw domain_error("net terms are indexed from 1");
    --n;
    return n < prefix.size() ? prefix[n] : cycle[(n - prefix.size()) % cycle.size()];
  }
};

/// In a finite space the tail of a net is its cycle, so the defining
/// inf-sup vanishes iff every ordered pair of cycle points is at distance 0.
inline bool is_forward_cauchy(const FiniteNet& net) {
  net.validate();
  for (auto u : net.cycle)
    for (auto v : net.cycle)
      if (!net.space->d(u, v).is_zero()) return false;
  return true;
}

/// inf_i sup_{j>=i} d(x_j, y) for each y: the max over the cycle.
inline std::vector<ExtValue> tail_distances_from(const FiniteNet& net) {
  net.validate();
  std::vector<ExtValue> t(net.space->size());
  for (std::size_t y = 0; y < t.size(); ++y)
    for (auto u : net.cycle) t[y] = std::max(t[y], net.space->d(u, y));
  return t;
}

/// The points x with d(x,-) equal to the tail of d(x_j,-). Never empty for a
/// forward Cauchy net (every cycle point qualifies).
inline std::vector<std::size_t> yoneda_limits(const FiniteNet& net) {
  if (!is_forward_cauchy(net)) throw not_forward_cauchy_error("net is not forward Cauchy");
  auto t = tail_distances_from(net);
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < net.space->size(); ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < t.size() && ok; ++y) ok = net.space->d(x, y) == t[y];
    if (ok) out.push_back(x);
  }
  return out;
}

enum class Carrier { DL, DR };

inline ExtValue carrier_distance(Carrier c, const ExtValue& a, const ExtValue& b) {
  return c == Carrier::DL ? d_left(a, b) : d_right(a, b);
}

/// [0,inf] with d_L or d_R, or its dim-fold power with the sup metric.
struct CanonicalSpace {
  Carrier base = Carrier::DR;
  unsigned dim = 1;

  std::string name() const {
    std::string b = base == Carrier::DL ? "DL" : "DR";
    return dim == 1 ? b : b + "^" + std::to_string(dim);
  }

  static CanonicalSpace parse(const std::string& text) {
    CanonicalSpace s;
    std::string head = text.substr(0, 2);
    if (head == "DL") s.base = Carrier::DL;
    else if (head == "DR") s.base = Carrier::DR;
    else throw parse_error("unknown canonical space '" + text + "'");
    if (text.size() == 2) return s;
    if (text[2] != '^' || text.size() == 3) throw parse_error("unknown canonical space '" + text + "'");
    unsigned n = 0;
    for (std::size_t i = 3; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9' || n > 1000) throw parse_error("bad power in '" + text + "'");
      n = n * 10 + static_cast<unsigned>(text[i] - '0');
    }
    if (n == 0) throw parse_error("power must be positive in '" + text + "'");
    s.dim = n;
    return s;
  }

  static bool is_canonical_name(const std::string& text) {
    try {
      parse(text);
      return true;
    } catch (const parse_error&) {
      return false;
    }
  }

  ExtValue distance(const std::vector<ExtValue>& a, const std::vector<ExtValue>& b) const {
    if (a.size() != dim || b.size() != dim) throw dimension_error("point has the wrong number of coordinates for " + name());
    ExtValue m;
    for (unsigned i = 0; i < dim; ++i) m = std::max(m, carrier_distance(base, a[i], b[i]));
    return m;
  }

  friend bool operator==(const CanonicalSpace&, const CanonicalSpace&) = default;
};

/// x_n = L + c q^n (from above) or L - c q^n (from below), 0 < q < 1.
/// L = inf stands for the constant net at inf.
struct GeometricSeq {
  ExtValue limit;
  ExtValue coeff;
  ExtValue ratio = ExtValue(1, 2);
  bool from_below = false;

  void validate() const {
    if (ratio.is_zero() || ratio >= ExtValue(1)) throw domain_error("geometric ratio must lie strictly between 0 and 1");
    if (coeff.is_infinite()) throw domain_error("geometric coefficient must be finite");
    if (from_below && limit.is_finite() && coeff * ratio > limit) throw domain_error("sequence from below would go negative");
  }

  ExtValue term(std::size_t n) const {
    if (n == 0) throw domain_error("sequence terms are indexed from 1");
    if (limit.is_infinite()) return kInf;
    ExtValue step = coeff * ratio.pow(static_cast<unsigned>(n));
    return from_below ? tminus(limit, step) : limit + step;
  }
};

/// x_n = a + b n.
struct LinearSeq {
  ExtValue offset;
  ExtValue slope;

  void validate() const {
    if (offset.is_infinite() || slope.is_infinite()) throw domain_error("linear coefficients must be finite");
  }

  ExtValue term(std::size_t n) const {
    if (n == 0) throw domain_error("sequence terms are indexed from 1");
    return offset + slope * ExtValue(static_cast<std::uint64_t>(n));
  }
};

using CanonicalSeq = std::variant<GeometricSeq, LinearSeq>;

inline ExtValue seq_term(const CanonicalSeq& s, std::size_t n) {
  return std::visit([n](const auto& v) { return v.term(n); }, s);
}

inline bool seq_forward_cauchy(const CanonicalSeq& s, Carrier c) {
  std::visit([](const auto& v) { v.validate(); }, s);
  if (const auto* lin = std::get_if<LinearSeq>(&s)) return c == Carrier::DR || lin->slope.is_zero();
  return true;
}

/// Ordinary limit, which is the Yoneda limit in both carriers.
inline ExtValue seq_limit(const CanonicalSeq& s) {
  if (const auto* g = std::get_if<GeometricSeq>(&s)) return g->limit;
  const auto& lin = std::get<LinearSeq>(s);
  return lin.slope.is_zero() ? lin.offset : kInf;
}

struct CanonicalNet {
  CanonicalSpace space;
  std::vector<CanonicalSeq> coords;

  void validate() const {
    if (coords.size() != space.dim)
      throw dimension_error(space.name() + " needs " + std::to_string(space.dim) + " coordinate descriptors, got " + std::to_string(coords.size()));
    for (const auto& c : coords) std::visit([](const auto& v) { v.validate(); }, c);
  }

  std::vector<ExtValue> term(std::size_t n) const {
    std::vector<ExtValue> out;
    for (const auto& c : coords) out.push_back(seq_term(c, n));
    return out;
  }
};

inline bool is_forward_cauchy(const CanonicalNet& net) {
  net.validate();
  for (const auto& c : net.coords)
    if (!seq_forward_cauchy(c, net.space.base)) return false;
  return true;
}

/// Coordinatewise limit; unique since both carriers are separated.
inline std::vector<ExtValue> yoneda_limit(const CanonicalNet& net) {
  if (!is_forward_cauchy(net)) throw not_forward_cauchy_error("sequence is not forward Cauchy in " + net.space.name());
  std::vector<ExtValue> out;
  for (const auto& c : net.coords) out.push_back(seq_limit(c));
  return out;
}

using NetDescriptor = std::variant<FiniteNet, CanonicalNet>;

inline bool is_forward_cauchy(const NetDescriptor& net) {
  return std::visit([](const auto& n) { return is_forward_cauchy(n); }, net);
}

}  // namespace approach_lab
