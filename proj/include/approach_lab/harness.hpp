#pragma once

// Seeded random instances and the theorem battery B1-B12.
//
// Every (seed, trial, check) triple owns its random stream, so a witness is
// replayed by re-running one check on one trial.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "approach_lab/algebraic.hpp"
#include "approach_lab/approach.hpp"
#include "approach_lab/balls.hpp"
#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/io.hpp"
#include "approach_lab/mutation.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"

namespace approach_lab::harness {

using json = nlohmann::json;
using Rng = std::mt19937_64;

inline const std::vector<std::string>& battery_ids() {
  static const std::vector<std::string> ids{"B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "B9", "B10", "B11", "B12"};
  return ids;
}

inline bool is_battery_id(const std::string& id) {
  const auto& ids = battery_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

struct TrialConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::size_t max_points = 6;
  std::vector<std::string> checks;  // empty: all

  std::vector<std::string> selected() const { return checks.empty() ? battery_ids() : checks; }

  void validate() const {
    if (max_points == 0 || max_points > 6) throw domain_error("maxPoints must lie in 1..6");
    for (const auto& c : checks)
      if (!is_battery_id(c)) throw domain_error("unknown check '" + c + "'");
  }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng stream_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (trial * 0xd1b54a32d192ed03ULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (stream * 0x8cb92ba72f3d8dd7ULL);
  return Rng(splitmix64(s));
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

/// Numerators 1..32 over denominators 1..4, plus 0 and inf.
inline ExtValue draw_value(Rng& rng, bool allow_inf = true) {
  auto k = uniform(rng, 0, 15);
  if (k < 2) return allow_inf ? kInf : ExtValue{};
  if (k < 4) return {};
  return ExtValue(static_cast<std::int64_t>(uniform(rng, 1, 32)), static_cast<std::int64_t>(uniform(rng, 1, 4)));
}

inline std::vector<std::string> point_labels(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(std::string(1, static_cast<char>('a' + i)));
  return l;
}

/// Shortest-path closure; the diagonal is already 0.
inline void triangle_repair(std::vector<std::vector<ExtValue>>& d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
}

inline SpacePtr gen_space(const TrialConfig& cfg, Rng& rng, std::size_t min_points = 1) {
  const std::size_t n = uniform(rng, std::min(min_points, cfg.max_points), cfg.max_points);
  std::vector<std::vector<ExtValue>> d(n, std::vector<ExtValue>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i][j] = draw_value(rng);
  if (!mutation_active(Mutation::skip_triangle_repair)) triangle_repair(d);
  return make_space(point_labels(n), std::move(d));
}

inline FiniteNet gen_fc_net(const SpacePtr& s, Rng& rng) {
  auto clusters = zero_clusters(*s);
  const auto& cl = clusters[uniform(rng, 0, clusters.size() - 1)];
  std::vector<std::size_t> tail;
  while (tail.empty())
    for (auto u : cl)
      if (uniform(rng, 0, 1)) tail.push_back(u);
  std::shuffle(tail.begin(), tail.end(), rng);
  if (uniform(rng, 0, 2) == 0) tail.push_back(tail.front());
  FiniteNet net{s, {}, tail};
  for (std::size_t k = uniform(rng, 0, 3); k > 0; --k) net.prefix.push_back(uniform(rng, 0, s->size() - 1));
  return net;
}

inline WeightFn gen_weight(const SpacePtr& s, Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return yoneda_embed(s, uniform(rng, 0, s->size() - 1));
    case 1: return net_weight(gen_fc_net(s, rng));
    default: {
      std::vector<ExtValue> raw;
      for (std::size_t i = 0; i < s->size(); ++i) raw.push_back(draw_value(rng));
      return repair_to_weight(s, raw);
    }
  }
}

inline PointMap gen_map(const SpacePtr& x, const SpacePtr& y, Rng& rng) {
  PointMap f{x, y, {}};
  if (uniform(rng, 0, 3) == 0) {
    f.image.assign(x->size(), uniform(rng, 0, y->size() - 1));
    return f;
  }
  for (std::size_t i = 0; i < x->size(); ++i) f.image.push_back(uniform(rng, 0, y->size() - 1));
  return f;
}

/// X with d(x,x') raised to d_Y(f x, f x'), which makes f non-expansive.
inline SpacePtr pullback_space(const PointMap& f) {
  auto m = f.source->matrix();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = std::max(m[i][j], f.target->d(f(i), f(j)));
  return make_space(f.source->labels(), std::move(m));
}

inline BallChain gen_chain(const SpacePtr& s, Rng& rng) {
  if (uniform(rng, 0, 1) == 0) {
    std::vector<FormalBall> chain;
    std::size_t c = uniform(rng, 0, s->size() - 1);
    ExtValue r = draw_value(rng, false) + ExtValue(static_cast<std::int64_t>(uniform(rng, 0, 8)));
    chain.emplace_back(c, r);
    for (std::size_t k = uniform(rng, 0, 3); k > 0; --k) {
      std::size_t next = uniform(rng, 0, s->size() - 1);
      if (s->d(c, next) > r) break;
      r = tminus(r, s->d(c, next));
      if (uniform(rng, 0, 1)) r = tminus(r, ExtValue(1, 2));
      c = next;
      chain.emplace_back(c, r);
    }
    std::shuffle(chain.begin(), chain.end(), rng);
    return chain;
  }
  RadiusForm rf;
  rf.kind = static_cast<RadiusForm::Kind>(uniform(rng, 0, 2));
  rf.base = draw_value(rng, false);
  rf.coeff = draw_value(rng, false);
  NetBallChain chain{gen_fc_net(s, rng), rf};
  if (!is_directed(*s, chain)) chain.centers.prefix.clear();
  return chain;
}

inline json chain_to_json(const BallChain& c, const FiniteSpace& s) {
  if (const auto* list = std::get_if<std::vector<FormalBall>>(&c)) {
    json balls = json::array();
    for (const auto& b : *list) balls.push_back({s.label(b.center), b.radius.str()});
    return {{"balls", balls}};
  }
  const auto& net = std::get<NetBallChain>(c);
  json prefix = json::array(), cycle = json::array();
  for (auto u : net.centers.prefix) prefix.push_back(s.label(u));
  for (auto u : net.centers.cycle) cycle.push_back(s.label(u));
  static const char* forms[] = {"constant", "geometric", "harmonic"};
  return {{"prefix", prefix},
          {"cycle", cycle},
          {"radius", {{"form", forms[static_cast<int>(net.radius.kind)]}, {"base", net.radius.base.str()}, {"coeff", net.radius.coeff.str()}, {"ratio", net.radius.ratio.str()}}}};
}

/// Result of one check on one trial.
struct Outcome {
  bool ok = true;
  std::string locus;
  json instance = json::object();

  void fail(std::string where) {
    if (ok) {
      ok = false;
      locus = std::move(where);
    }
  }
};

namespace detail {

inline std::string pt(const FiniteSpace& s, std::size_t x) { return s.label(x); }

inline bool tables_equal(const ApproachTable& a, const ApproachTable& b, Outcome& out, const std::string& what) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (Subset s = 0; s <= a.all(); ++s)
      if (a.at(x, s) != b.at(x, s)) {
        out.fail(what + " differ at " + a.label(x) + "|" + subset_text(a.labels(), s) + ": " + a.at(x, s).str() + " vs " + b.at(x, s).str());
        return false;
      }
  return true;
}

// B+phi is directed when balls at margin eps above phi have common upper
// bounds in B+phi; eps lies below the grid resolution.
inline bool bplus_directed_oracle(const WeightFn& phi) {
  const auto& s = *phi.space();
  const ExtValue eps(1, 1024);
  bool has_zero = false;
  for (std::size_t x = 0; x < s.size(); ++x) has_zero = has_zero || phi(x).is_zero();
  if (!has_zero) return false;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (phi(x).is_infinite()) continue;
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (phi(y).is_infinite()) continue;
      FormalBall bx(x, phi(x) + eps), by(y, phi(y) + eps);
      bool found = false;
      for (std::size_t z = 0; z < s.size() && !found; ++z) {
        if (s.d(x, z).is_infinite() || s.d(y, z).is_infinite()) continue;
        auto t = std::min(bx.radius.to_rational() - s.d(x, z).to_rational(), by.radius.to_rational() - s.d(y, z).to_rational());
        if (t < 0) continue;
        FormalBall bz(z, ExtValue::from_rational(t));
        found = bplus_contains(phi, bz) && ball_leq(s, bx, bz) && ball_leq(s, by, bz);
      }
      if (!found) return false;
    }
  }
  return true;
}

inline std::vector<ExtValue> radius_grid(const FiniteSpace& s) {
  std::vector<ExtValue> r{ExtValue{}, ExtValue(1, 2), ExtValue(1), kInf};
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.d(x, y).is_finite()) {
        r.push_back(s.d(x, y));
        r.push_back(s.d(x, y) + ExtValue(1, 2));
      }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace detail

// Fills `out` as the instance is drawn, so a throwing check still leaves
// its instance behind.
inline void run_check_into(const std::string& id, const TrialConfig& cfg, std::size_t trial, Outcome& out) {
  const auto idx = static_cast<std::uint64_t>(std::find(battery_ids().begin(), battery_ids().end(), id) - battery_ids().begin());
  Rng rng = stream_rng(cfg.seed, trial, idx + 1);
  using detail::pt;
  auto X = gen_space(cfg, rng);
  const auto& s = *X;
  out.instance["space"] = io::space_to_json(s);
  auto metric = check_metric_axioms(s, 1);
  if (!metric.ok()) {
    const auto& v = metric.violations.front();
    out.fail("generated space violates the metric axioms at " + pt(s, v.x) + "," + pt(s, v.y) + "," + pt(s, v.z));
    return;
  }

  if (id == "B1") {
    auto omega = specialization(scott_distance_finite(X));
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y)
        if (omega.d(x, y) != s.d(x, y)) out.fail("Omega Sigma d(" + pt(s, x) + "," + pt(s, y) + ") = " + omega.d(x, y).str() + ", d = " + s.d(x, y).str());
  } else if (id == "B2") {
    auto phi = gen_weight(X, rng);
    out.instance["weight"] = io::weight_to_json(phi.values(), s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      auto lhs = bar_distance(yoneda_embed(X, x), phi);
      if (lhs != phi(x)) out.fail("d_bar(y(" + pt(s, x) + "), phi) = " + lhs.str() + ", phi(" + pt(s, x) + ") = " + phi(x).str());
    }
  } else if (id == "B3") {
    auto phi = gen_weight(X, rng);
    out.instance["weight"] = io::weight_to_json(phi.values(), s);
    bool flat = is_flat(phi);
    bool oracle = detail::bplus_directed_oracle(phi);
    bool rep = representing_point(phi).has_value();
    if (flat != oracle || flat != rep)
      out.fail(std::string("is_flat = ") + (flat ? "true" : "false") + ", B+phi directed = " + (oracle ? "true" : "false") + ", representable = " + (rep ? "true" : "false"));
  } else if (id == "B4") {
    auto net = gen_fc_net(X, rng);
    json prefix = json::array(), cycle = json::array();
    for (auto u : net.prefix) prefix.push_back(pt(s, u));
    for (auto u : net.cycle) cycle.push_back(pt(s, u));
    out.instance["net"] = {{"prefix", prefix}, {"cycle", cycle}};
    auto w = net_weight(net);
    auto col = colimits(w);
    auto lim = yoneda_limits(net);
    if (!is_flat(w)) out.fail("net weight is not flat");
    else if (col != lim) out.fail("colimits and Yoneda limits differ");
  } else if (id == "B5") {
    auto gamma = alexandroff(s);
    // witness-family sup (each witness passes the flat/colimit Scott test)
    auto sigma = scott_sup_table(X);
    if (detail::tables_equal(sigma, gamma, out, "Scott and Alexandroff")) {
      // every Scott weight vanishing on A is bounded by Gamma(-,A)
      auto cat = flat_catalogue(X);
      for (Subset b = 0; b <= s.all() && out.ok; ++b) {
        std::vector<ExtValue> col;
        for (std::size_t y = 0; y < s.size(); ++y) col.push_back(gamma.at(y, b));
        if (!is_scott_weight(WeightFn(X, col), cat)) out.fail("Gamma(-," + subset_text(s.labels(), b) + ") fails the flat-weight criterion");
      }
    }
  } else if (id == "B6") {
    auto t = topologies(X);
    auto core = coreflection(alexandroff(s));
    if (!(t.d_scott == t.c_scott)) out.fail("d-Scott != c-Scott");
    else if (!(t.c_scott == t.gen_scott)) out.fail("c-Scott != generalized Scott");
    else if (!(t.gen_scott == t.open_ball)) out.fail("generalized Scott != open-ball");
    else if (!(t.open_ball == core)) out.fail("open-ball != coreflection");
  } else if (id == "B7") {
    auto Y = uniform(rng, 0, 2) == 0 ? X : gen_space(cfg, rng);
    auto f = gen_map(X, Y, rng);
    if (uniform(rng, 0, 1)) f.source = pullback_space(f);
    out.instance["space"] = io::space_to_json(*f.source);
    out.instance["target"] = io::space_to_json(*Y);
    out.instance["map"] = f.image;
    bool contraction = is_contraction(f, scott_distance_finite(f.source), scott_distance_finite(Y));
    bool continuous = is_yoneda_continuous(f);
    if (contraction != continuous)
      out.fail(std::string("contraction = ") + (contraction ? "true" : "false") + ", Yoneda continuous = " + (continuous ? "true" : "false"));
  } else if (id == "B8") {
    auto Y = gen_space(cfg, rng);
    auto f = gen_map(X, Y, rng);
    f.source = pullback_space(f);
    out.instance["space"] = io::space_to_json(*f.source);
    out.instance["target"] = io::space_to_json(*Y);
    out.instance["map"] = f.image;
    for (int k = 0; k < 4 && out.ok; ++k) {
      auto phi = gen_weight(f.source, rng);
      auto xi = gen_weight(Y, rng);
      auto lhs = bar_distance(kan_extend(f, phi), xi);
      auto rhs = bar_distance(phi, precompose(xi, f));
      if (lhs != rhs) {
        out.instance["weight"] = io::weight_to_json(phi.values(), *f.source);
        out.instance["coweight_target"] = io::weight_to_json(xi.values(), *Y);
        out.fail("d_bar(f_! phi, xi) = " + lhs.str() + ", d_bar(phi, xi o f) = " + rhs.str());
      }
    }
  } else if (id == "B9") {
    std::vector<std::pair<std::string, ApproachTable>> tables;
    tables.emplace_back("Alexandroff", alexandroff(s));
    tables.emplace_back("Windels", windels_table(s, AlgebraicSpec{X, ExtValue(1, 2), {}, std::nullopt, 64}.basis_points()));
    tables.emplace_back("embedded coreflection", embed_topology(coreflection(tables.front().second)));
    if (s.size() <= 3) tables.emplace_back("product", product_table({tables.front().second, tables.front().second}));
    for (const auto& [name, t] : tables) {
      auto rep = check_approach_axioms(t, 1);
      if (!rep.ok()) {
        const auto& v = rep.violations.front();
        out.fail(name + " table violates (A" + std::to_string(v.axiom) + ") at " + t.label(v.x) + ", " + subset_text(t.labels(), v.a) + ", " + subset_text(t.labels(), v.b));
        break;
      }
    }
  } else if (id == "B10") {
    auto radii = detail::radius_grid(s);
    auto cat = flat_catalogue(X);
    for (std::size_t b = 0; b < s.size() && out.ok; ++b) {
      bool compact = is_compact_finite(X, b);
      bool all_scott = true;
      for (const auto& r : radii) {
        std::vector<ExtValue> v;
        for (std::size_t y = 0; y < s.size(); ++y) v.push_back(tminus(r, s.d(b, y)));
        all_scott = all_scott && is_scott_weight(WeightFn(X, v), cat);
      }
      if (compact != all_scott) out.fail(pt(s, b) + ": compact = " + (compact ? "true" : "false") + ", every r (-) d(b,-) Scott = " + (all_scott ? "true" : "false"));
    }
  } else if (id == "B11") {
    AlgebraicSpec spec;
    spec.carrier = X;
    auto w = windels_table(s, spec.basis_points());
    if (detail::tables_equal(w, scott_distance_finite(X), out, "Windels and Scott")) {
      std::size_t x = uniform(rng, 0, s.size() - 1);
      Subset a = static_cast<Subset>(uniform(rng, 0, s.all()));
      auto iv = scott_distance_algebraic(spec, x, a);
      if (!iv.exact() || iv.lo != w.at(x, a)) out.fail("algebraic evaluation differs at " + pt(s, x) + "|" + subset_text(s.labels(), a));
    }
  } else if (id == "B12") {
    std::vector<BallChain> chains;
    json cj = json::array();
    for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) {
      chains.push_back(gen_chain(X, rng));
      cj.push_back(chain_to_json(chains.back(), s));
    }
    out.instance["chains"] = cj;
    std::vector<ExtValue> shifts{ExtValue{}, ExtValue(1, 2), ExtValue(1), ExtValue(5, 2), draw_value(rng, false)};
    auto rep = check_condition_S_instance(s, chains, shifts);
    if (!rep.ok()) {
      const auto& f = rep.failures.front();
      out.fail("family " + std::to_string(f.chain) + ", shift " + shifts[f.shift].str() + ": " + f.what);
    }
    for (const auto& c : chains)
      if (out.ok && std::holds_alternative<NetBallChain>(c)) chain_join(s, c);
  } else {
    throw domain_error("unknown check '" + id + "'");
  }
}

/// Library errors raised while checking are failures of that check.
inline Outcome run_check(const std::string& id, const TrialConfig& cfg, std::size_t trial) {
  if (!is_battery_id(id)) throw domain_error("unknown check '" + id + "'");
  Outcome out;
  try {
    run_check_into(id, cfg, trial, out);
  } catch (const error& e) {
    out.fail(std::string("error: ") + e.what());
  }
  return out;
}

struct Witness {
  std::string check;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::size_t max_points = 6;
  std::string locus;
  json instance;

  json to_json() const {
    return {{"check", check}, {"seed", seed}, {"trial", trial}, {"max_points", max_points}, {"locus", locus}, {"instance", instance}};
  }
};

struct CheckStats {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Report {
  std::map<std::string, CheckStats> stats;
  std::vector<Witness> witnesses;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned mutations = 0;
  double wall_seconds = 0;

  bool ok() const { return witnesses.empty(); }

  void merge(const Report& other) {
    for (const auto& [k, v] : other.stats) {
      stats[k].passed += v.passed;
      stats[k].failed += v.failed;
    }
    witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
    trials += other.trials;
    wall_seconds += other.wall_seconds;
  }

  json to_json(bool with_time = true) const {
    json checks = json::object();
    for (const auto& [k, v] : stats) checks[k] = {{"passed", v.passed}, {"failed", v.failed}};
    json w = json::array();
    for (const auto& x : witnesses) w.push_back(x.to_json());
    json mut = json::array();
    for (unsigned bit : {1u, 2u, 4u})
      if (mutations & bit) mut.push_back(mutation_name(static_cast<Mutation>(bit)));
    json j{{"seed", seed}, {"trials", trials}, {"mutations", mut}, {"checks", checks}, {"witnesses", w}};
    if (with_time) j["wall_seconds"] = wall_seconds;
    return j;
  }
};

/// Witnesses per check are capped; counts are not.
inline Report run_battery(const TrialConfig& cfg, std::size_t max_witnesses_per_check = 3) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  rep.mutations = active_mutation_mask();
  for (const auto& id : cfg.selected()) rep.stats[id];
  for (std::size_t t = 0; t < cfg.trials; ++t)
    for (const auto& id : cfg.selected()) {
      auto o = run_check(id, cfg, t);
      if (o.ok) {
        ++rep.stats[id].passed;
        continue;
      }
      if (rep.stats[id].failed++ < max_witnesses_per_check) rep.witnesses.push_back({id, cfg.seed, t, cfg.max_points, o.locus, o.instance});
    }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Re-runs the witness's check on its trial.
inline Outcome replay(const Witness& w) {
  TrialConfig cfg;
  cfg.seed = w.seed;
  cfg.max_points = w.max_points;
  return run_check(w.check, cfg, w.trial);
}

inline const std::vector<std::string>& search_targets() {
  static const std::vector<std::string> t = [] {
    auto v = battery_ids();
    v.push_back("cScott!=genScott");
    return v;
  }();
  return t;
}

struct SearchReport {
  std::string target;
  std::size_t instances = 0;
  std::vector<Witness> witnesses;

  bool ok() const { return witnesses.empty(); }
  std::string verdict() const { return witnesses.empty() ? "no witness within budget" : "witness found"; }

  json to_json() const {
    json w = json::array();
    for (const auto& x : witnesses) w.push_back(x.to_json());
    return {{"target", target}, {"instances", instances}, {"verdict", verdict()}, {"witnesses", w}};
  }
};

namespace detail {

// Calls fn on every space with n points whose off-diagonal entries come
// from the grid, after triangle repair.
inline void for_each_grid_space(std::size_t n, const std::vector<ExtValue>& grid, const std::function<void(const SpacePtr&)>& fn) {
  const std::size_t cells = n * (n - 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= grid.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::vector<ExtValue>> d(n, std::vector<ExtValue>(n));
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          d[i][j] = grid[c % grid.size()];
          c /= grid.size();
        }
    triangle_repair(d);
    fn(make_space(point_labels(n), std::move(d)));
  }
}

}  // namespace detail

/// Battery targets run the check over cfg.trials random trials. The
/// c-Scott / generalized Scott target first sweeps every space with at most
/// three points over {0, 1, inf}, then cfg.trials random spaces.
inline SearchReport search_counterexample(const std::string& target, const TrialConfig& cfg) {
  const auto& targets = search_targets();
  if (std::find(targets.begin(), targets.end(), target) == targets.end()) throw domain_error("unknown search target '" + target + "'");
  cfg.validate();
  SearchReport rep;
  rep.target = target;
  if (is_battery_id(target)) {
    TrialConfig c = cfg;
    c.checks = {target};
    auto r = run_battery(c, SIZE_MAX);
    rep.instances = cfg.trials;
    rep.witnesses = r.witnesses;
    return rep;
  }
  auto probe = [&](const SpacePtr& X, std::size_t trial) {
    ++rep.instances;
    auto c = c_scott_topology(X);
    auto g = gen_scott_topology(*X);
    if (!(c == g)) {
      json inst{{"space", io::space_to_json(*X)}};
      rep.witnesses.push_back({target, cfg.seed, trial, cfg.max_points, "c-Scott and generalized Scott differ", inst});
    }
  };
  const std::vector<ExtValue> grid{ExtValue{}, ExtValue(1), kInf};
  for (std::size_t n = 1; n <= std::min<std::size_t>(3, cfg.max_points); ++n) detail::for_each_grid_space(n, grid, [&](const SpacePtr& X) { probe(X, SIZE_MAX); });
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = stream_rng(cfg.seed, t, 100);
    probe(gen_space(cfg, rng), t);
  }
  return rep;
}

}  // namespace approach_lab::harness
