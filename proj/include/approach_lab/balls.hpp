#pragma once

// Formal balls, directed families of balls, and the four topologies of a
// finite space.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "approach_lab/approach.hpp"
#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/mutation.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"

namespace approach_lab {

struct FormalBall {
  std::size_t center = 0;
  ExtValue radius;

  FormalBall() = default;
  FormalBall(std::size_t c, ExtValue r) : center(c), radius(std::move(r)) {
    if (radius.is_infinite()) throw domain_error("formal balls have finite radius");
  }

  friend bool operator==(const FormalBall&, const FormalBall&) = default;
};

/// (x,r) below (y,s) iff r >= s + d(x,y).
inline bool ball_leq(const FiniteSpace& s, const FormalBall& a, const FormalBall& b) {
  if (a.center >= s.size() || b.center >= s.size()) throw unknown_point_error("ball center outside the space");
  return a.radius >= b.radius + s.d(a.center, b.center);
}

/// (x,r) in B+phi iff phi(x) < r.
inline bool bplus_contains(const WeightFn& phi, const FormalBall& b) {
  if (mutation_active(Mutation::nonstrict_bplus)) return phi(b.center) <= b.radius;
  return phi(b.center) < b.radius;
}

/// (x,r) in B phi iff phi(x) <= r.
inline bool bphi_contains(const WeightFn& phi, const FormalBall& b) { return phi(b.center) <= b.radius; }

/// r_n = base, base + coeff q^n, or base + coeff / n, for n >= 1.
struct RadiusForm {
  enum class Kind { constant, geometric, harmonic } kind = Kind::constant;
  ExtValue base;
  ExtValue coeff;
  ExtValue ratio = ExtValue(1, 2);

  void validate() const {
    if (base.is_infinite() || coeff.is_infinite()) throw domain_error("radii must be finite");
    if (kind == Kind::geometric && (ratio.is_zero() || ratio >= ExtValue(1))) throw domain_error("geometric ratio must lie strictly between 0 and 1");
  }

  bool converges_from_above() const { return kind != Kind::constant && !coeff.is_zero(); }

  ExtValue term(std::size_t n) const {
    if (n == 0) throw domain_error("radii are indexed from 1");
    switch (kind) {
      case Kind::constant: return base;
      case Kind::geometric: return base + coeff * ratio.pow(static_cast<unsigned>(n));
      case Kind::harmonic: return base + coeff.divided_by(ExtValue(static_cast<std::uint64_t>(n)));
    }
    return base;
  }

  RadiusForm shifted(const ExtValue& s) const {
    RadiusForm r = *this;
    r.base = base + s;
    return r;
  }
};

/// Balls (x_n, r_n) with x_n from an eventually cyclic net.
struct NetBallChain {
  FiniteNet centers;
  RadiusForm radius;

  FormalBall member(std::size_t n) const { return {centers.term(n), radius.term(n)}; }
};

/// A finitely presented family in BX: an explicit list or a net family.
using BallChain = std::variant<std::vector<FormalBall>, NetBallChain>;

inline BallChain shift_chain(const BallChain& c, const ExtValue& s) {
  if (const auto* list = std::get_if<std::vector<FormalBall>>(&c)) {
    std::vector<FormalBall> out;
    for (const auto& b : *list) out.emplace_back(b.center, b.radius + s);
    return out;
  }
  auto net = std::get<NetBallChain>(c);
  net.radius = net.radius.shifted(s);
  return net;
}

namespace detail {

/// A value in [-inf, inf): nullopt is -inf.
using SignedValue = std::optional<BigRational>;

inline SignedValue signed_minus(const ExtValue& a, const ExtValue& b) {
  if (b.is_infinite()) return std::nullopt;
  if (a.is_infinite()) throw domain_error("radius is infinite");
  return a.to_rational() - b.to_rational();
}

inline SignedValue signed_min(const SignedValue& a, const SignedValue& b) {
  if (!a || !b) return std::nullopt;
  return std::min(*a, *b);
}

inline void check_chain_space(const FiniteSpace& s, const BallChain& c) {
  if (const auto* list = std::get_if<std::vector<FormalBall>>(&c)) {
    if (list->empty()) throw domain_error("empty ball family");
    for (const auto& b : *list)
      if (b.center >= s.size()) throw unknown_point_error("ball center outside the space");
    return;
  }
  const auto& net = std::get<NetBallChain>(c);
  net.centers.validate();
  net.radius.validate();
  if (!same_space(*net.centers.space, s)) throw space_mismatch_error("ball family lives over another space");
}

}  // namespace detail

/// s_max(y) = inf_n (r_n - d(x_n, y)): the largest radius s with (y,s) above
/// every member (when >= 0). For a net family the tail contributes
/// base - max_{u in cycle} d(u,y), since each cycle point recurs with radii
/// decreasing to the base.
inline std::vector<detail::SignedValue> upper_radius(const FiniteSpace& s, const BallChain& c) {
  detail::check_chain_space(s, c);
  std::vector<detail::SignedValue> out(s.size());
  for (std::size_t y = 0; y < s.size(); ++y) {
    std::optional<detail::SignedValue> m;
    auto take = [&](const detail::SignedValue& v) { m = m ? detail::signed_min(*m, v) : v; };
    if (const auto* list = std::get_if<std::vector<FormalBall>>(&c)) {
      for (const auto& b : *list) take(detail::signed_minus(b.radius, s.d(b.center, y)));
    } else {
      const auto& net = std::get<NetBallChain>(c);
      for (std::size_t n = 1; n <= net.centers.prefix.size(); ++n) {
        auto b = net.member(n);
        take(detail::signed_minus(b.radius, s.d(b.center, y)));
      }
      ExtValue far;
      for (auto u : net.centers.cycle) far = std::max(far, s.d(u, y));
      take(detail::signed_minus(net.radius.base, far));
    }
    out[y] = *m;
  }
  return out;
}

namespace detail {

inline bool is_join_given(const FiniteSpace& s, const std::vector<SignedValue>& up, const FormalBall& b) {
  const auto& mine = up.at(b.center);
  const BigRational r = b.radius.to_rational();
  if (!mine || *mine < r) return false;
  for (std::size_t y = 0; y < s.size(); ++y) {
    if (!up[y] || *up[y] < 0) continue;
    if (s.d(b.center, y).is_infinite()) return false;
    if (r < *up[y] + s.d(b.center, y).to_rational()) return false;
  }
  return true;
}

}  // namespace detail

/// Upper bound of every member and below every upper bound.
inline bool is_join(const FiniteSpace& s, const BallChain& c, const FormalBall& b) {
  return detail::is_join_given(s, upper_radius(s, c), b);
}

/// The join of the family, if it has one. Candidates are (z, s_max(z)): any
/// upper bound centred at z lies above (z, s_max(z)).
inline std::optional<FormalBall> find_join(const FiniteSpace& s, const BallChain& c) {
  auto up = upper_radius(s, c);
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (!up[z] || *up[z] < 0) continue;
    FormalBall cand(z, ExtValue::from_rational(*up[z]));
    if (detail::is_join_given(s, up, cand)) return cand;
  }
  return std::nullopt;
}

namespace detail {

/// Some tail member lies above b: the deep tail radii approach the base,
/// from above when the radius form is not constant.
inline bool below_tail(const FiniteSpace& s, const NetBallChain& c, const FormalBall& b) {
  for (auto u : c.centers.cycle) {
    ExtValue need = c.radius.base + s.d(b.center, u);
    if (c.radius.converges_from_above() ? b.radius > need : b.radius >= need) return true;
  }
  return false;
}

}  // namespace detail

/// Every pair of members has an upper bound among the members. Net families
/// need a forward Cauchy center net; their tail is then a chain, and the
/// check reduces to prefix members against each other and against the
/// limit behaviour of each cycle position.
inline bool is_directed(const FiniteSpace& s, const BallChain& c) {
  detail::check_chain_space(s, c);
  if (const auto* list = std::get_if<std::vector<FormalBall>>(&c)) {
    for (const auto& a : *list)
      for (const auto& b : *list) {
        bool found = false;
        for (const auto& k : *list)
          if (ball_leq(s, a, k) && ball_leq(s, b, k)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
    return true;
  }
  const auto& net = std::get<NetBallChain>(c);
  if (!is_forward_cauchy(net.centers)) throw not_forward_cauchy_error("ball family centers are not forward Cauchy");
  const std::size_t p = net.centers.prefix.size();
  std::vector<FormalBall> pre;
  for (std::size_t n = 1; n <= p; ++n) pre.push_back(net.member(n));
  std::vector<bool> tail_ok(p);
  for (std::size_t i = 0; i < p; ++i) tail_ok[i] = detail::below_tail(s, net, pre[i]);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (tail_ok[i] && tail_ok[j]) continue;
      bool found = false;
      for (std::size_t k = 0; k < p && !found; ++k) found = ball_leq(s, pre[i], pre[k]) && ball_leq(s, pre[j], pre[k]);
      if (!found) return false;
    }
    if (tail_ok[i]) continue;
    for (auto u : net.centers.cycle) {
      bool found = false;
      for (std::size_t k = 0; k < p && !found; ++k)
        found = ball_leq(s, pre[i], pre[k]) && net.radius.base >= pre[k].radius + s.d(u, pre[k].center);
      if (!found) return false;
    }
  }
  return true;
}

/// Join of a directed family. A net family that ascends in n is also
/// checked against the (Yoneda limit of centers, inf of radii) route; the
/// tail always ascends, so only the prefix needs a look.
inline FormalBall chain_join(const FiniteSpace& s, const BallChain& c) {
  if (!is_directed(s, c)) throw not_directed_error("ball family is not directed");
  auto j = find_join(s, c);
  if (!j) throw invalid_structure_error("directed family without a join in a finite space");
  const auto* net = std::get_if<NetBallChain>(&c);
  bool ascending = net != nullptr;
  for (std::size_t n = 1; ascending && n <= net->centers.prefix.size(); ++n) ascending = ball_leq(s, net->member(n), net->member(n + 1));
  if (ascending) {
    auto lim = yoneda_limits(net->centers);
    FormalBall other(lim.front(), net->radius.base);
    if (!is_join(s, c, other) || !ball_leq(s, other, *j) || !ball_leq(s, *j, other))
      throw invalid_structure_error("join disagrees with the limit of the centers");
  }
  return *j;
}

struct ConditionSFailure {
  std::size_t chain;
  std::size_t shift;
  std::string what;
};

struct ConditionSReport {
  std::vector<ConditionSFailure> failures;
  std::size_t instances = 0;
  bool ok() const noexcept { return failures.empty(); }
};

/// For each family and shift s: a join exists iff the shifted family has
/// one, and then the shifted join is the join with its radius raised by s.
inline ConditionSReport check_condition_S_instance(const FiniteSpace& s, const std::vector<BallChain>& chains, const std::vector<ExtValue>& shifts) {
  ConditionSReport rep;
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    if (!is_directed(s, chains[ci])) throw not_directed_error("ball family " + std::to_string(ci) + " is not directed");
    auto j = find_join(s, chains[ci]);
    for (std::size_t si = 0; si < shifts.size(); ++si) {
      ++rep.instances;
      auto shifted = shift_chain(chains[ci], shifts[si]);
      auto js = find_join(s, shifted);
      if (j.has_value() != js.has_value()) {
        rep.failures.push_back({ci, si, j ? "shifted family has no join" : "only the shifted family has a join"});
        continue;
      }
      if (j && !(js->radius == j->radius + shifts[si] && ball_leq(s, *js, FormalBall(j->center, js->radius)) &&
                 ball_leq(s, FormalBall(j->center, js->radius), *js)))
        rep.failures.push_back({ci, si, "shifted join is not the shifted join"});
    }
  }
  return rep;
}

/// The four topologies of a finite space.
struct Topologies {
  TopologySpec open_ball;
  TopologySpec c_scott;
  TopologySpec d_scott;
  TopologySpec gen_scott;
};

/// Radii separating every distinct pattern of row entries: below the least
/// positive entry, between consecutive entries, above the largest.
inline std::vector<ExtValue> separating_radii(const FiniteSpace& s) {
  std::vector<ExtValue> finite;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.d(x, y).is_finite()) finite.push_back(s.d(x, y));
  finite.push_back(ExtValue{});
  std::sort(finite.begin(), finite.end());
  finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
  std::vector<ExtValue> radii;
  for (std::size_t i = 0; i + 1 < finite.size(); ++i) radii.push_back((finite[i] + finite[i + 1]).divided_by(ExtValue(2)));
  radii.push_back(finite.back() + ExtValue(1));
  return radii;
}

inline Subset open_ball_mask(const FiniteSpace& s, std::size_t x, const ExtValue& r) {
  Subset b = 0;
  for (std::size_t y = 0; y < s.size(); ++y)
    if (s.d(x, y) < r) b |= singleton(y);
  return b;
}

/// Topology generated by the open balls B(x,r). On a finite carrier every
/// point has a least open neighbourhood (the intersection of the balls
/// around it), and the open sets are the unions of those.
inline TopologySpec open_ball_topology(const FiniteSpace& s) {
  require_table_size(s.size());
  const Subset full = s.all();
  std::vector<Subset> least(s.size(), full);
  for (std::size_t c = 0; c < s.size(); ++c)
    for (const auto& r : separating_radii(s)) {
      Subset b = open_ball_mask(s, c, r);
      for (auto x : members(b)) least[x] &= b;
    }
  std::vector<Subset> opens;
  for (Subset u = 0; u <= full; ++u) {
    bool open = true;
    for (auto x : members(u)) open = open && (least[x] & u) == least[x];
    if (open) opens.push_back(u);
  }
  return TopologySpec::from_open_sets(s.labels(), opens);
}

inline TopologySpec c_scott_topology(const SpacePtr& s) { return coreflection(scott_distance_finite(s)); }

/// U is open iff for every forward Cauchy tail T whose Yoneda limits meet U
/// there is a radius from the separating grid with B(u, r) inside U for all
/// u in T (the net repeats T forever, so "eventually" means all of T).
inline TopologySpec gen_scott_topology(const FiniteSpace& s) {
  require_table_size(s.size());
  struct TailInfo {
    Subset tail = 0;
    Subset limits = 0;
    std::vector<Subset> balls;  // per radius: union over u in T of B(u, r)
  };
  std::vector<TailInfo> tails;
  auto radii = separating_radii(s);
  auto sp = std::make_shared<const FiniteSpace>(s);
  for (const auto& t : forward_cauchy_tails(s)) {
    TailInfo info;
    for (auto u : t) info.tail |= singleton(u);
    for (auto x : yoneda_limits(FiniteNet{sp, {}, t})) info.limits |= singleton(x);
    for (const auto& r : radii) {
      Subset b = 0;
      for (auto u : t) b |= open_ball_mask(s, u, r);
      info.balls.push_back(b);
    }
    tails.push_back(std::move(info));
  }
  std::vector<Subset> opens;
  for (Subset u = 0; u <= s.all(); ++u) {
    bool open = true;
    for (const auto& t : tails) {
      if ((t.limits & u) == 0) continue;
      bool some = false;
      for (Subset b : t.balls) some = some || (b & u) == b;
      if (!some) {
        open = false;
        break;
      }
    }
    if (open) opens.push_back(u);
  }
  return TopologySpec::from_open_sets(s.labels(), opens);
}

struct DScottResult {
  TopologySpec topology;
  std::vector<std::string> defects;
};

/// Radii at which membership in B phi or B+ phi can change, plus a point
/// strictly between each consecutive pair and one beyond.
inline std::vector<ExtValue> ball_radius_grid(const FiniteSpace& s, const std::vector<WeightFn>& weights) {
  std::vector<ExtValue> v{ExtValue{}};
  for (const auto& w : weights)
    for (const auto& x : w.values())
      if (x.is_finite()) v.push_back(x);
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.d(x, y).is_finite()) v.push_back(s.d(x, y));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<ExtValue> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
    out.push_back(i + 1 < v.size() ? (v[i] + v[i + 1]).divided_by(ExtValue(2)) : v[i] + ExtValue(1));
  }
  return out;
}

/// d-Scott closed sets through the sets F_C = B phi_C for phi_C = Gamma(-,C):
/// each F_C is checked to be a lower set of BX, closed under joins of the
/// net families over every forward Cauchy tail, and equal to B+ phi_C plus
/// the boundary balls on the radius grid. The closed sets are the
/// traces eta^{-1}(F_C).
inline DScottResult d_scott_topology(const SpacePtr& sp) {
  const FiniteSpace& s = *sp;
  require_table_size(s.size());
  DScottResult res;
  const auto gamma = alexandroff(s);
  const auto tails = forward_cauchy_tails(s);
  std::vector<Subset> closed;
  std::vector<WeightFn> phis;
  for (Subset c = 0; c <= s.all(); ++c) {
    std::vector<ExtValue> v;
    for (std::size_t x = 0; x < s.size(); ++x) v.push_back(gamma.at(x, c));
    phis.emplace_back(sp, std::move(v));
  }
  const auto grid = ball_radius_grid(s, {});
  struct JoinCase {
    Subset tail;
    ExtValue base;
    FormalBall join;
  };
  std::vector<JoinCase> joins;
  for (const auto& t : tails) {
    Subset tm = 0;
    for (auto u : t) tm |= singleton(u);
    for (const auto& r : grid)
      for (auto kind : {RadiusForm::Kind::constant, RadiusForm::Kind::geometric}) {
        NetBallChain chain{FiniteNet{sp, {}, t}, RadiusForm{kind, r, ExtValue(1), ExtValue(1, 2)}};
        joins.push_back({tm, r, chain_join(s, chain)});
      }
  }
  for (Subset c = 0; c <= s.all(); ++c) {
    const auto& phi = phis[c];
    const std::string where = " for C=" + subset_text(s.labels(), c);
    // Lower set: the corner (y, phi(y)) dominates (x, phi(y) + d(x,y)).
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (phi(y).is_infinite()) continue;
      for (std::size_t x = 0; x < s.size(); ++x) {
        ExtValue r = phi(y) + s.d(x, y);
        if (r.is_finite() && !bphi_contains(phi, FormalBall(x, r))) res.defects.push_back("B phi is not a lower set" + where);
      }
    }
    // Joins of directed families inside F_C stay inside. The members
    // (u, r + c q^n) all lie in B phi iff phi(u) <= r.
    for (const auto& jc : joins) {
      bool inside = true;
      for (auto u : members(jc.tail)) inside = inside && phi(u) <= jc.base;
      if (inside && !bphi_contains(phi, jc.join)) res.defects.push_back("B phi misses a join" + where);
    }
    // B+ phi is B phi without the boundary balls (x, phi(x)).
    for (std::size_t x = 0; x < s.size(); ++x)
      for (const auto& r : grid) {
        FormalBall b(x, r);
        if (bplus_contains(phi, b) != (bphi_contains(phi, b) && r != phi(x)))
          res.defects.push_back("B+ phi is not B phi minus its boundary at (" + s.label(x) + "," + r.str() + ")" + where);
      }
    Subset trace = 0;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (bphi_contains(phi, FormalBall(x, ExtValue{}))) trace |= singleton(x);
    closed.push_back(trace);
  }
  res.topology = TopologySpec(s.labels(), std::move(closed));
  if (auto d = res.topology.defect()) res.defects.push_back(*d);
  return res;
}

inline Topologies topologies(const SpacePtr& s) {
  Topologies t;
  t.open_ball = open_ball_topology(*s);
  t.c_scott = c_scott_topology(s);
  auto d = d_scott_topology(s);
  if (!d.defects.empty()) throw invalid_structure_error("d-Scott cross-check failed: " + d.defects.front());
  t.d_scott = std::move(d.topology);
  t.gen_scott = gen_scott_topology(*s);
  return t;
}

}  // namespace approach_lab
