// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "approach_lab.hpp"

using namespace approach_lab;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Result {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

ExtValue V(const char* s) { return ExtValue::parse(s); }

// 1. Full battery, default config.
Result battery() {
  Result r;
  harness::TrialConfig cfg;
  auto t = Clock::now();
  auto rep = harness::run_battery(cfg);
  double secs = since(t);
  std::size_t failed = 0, passed = 0;
  for (const auto& [id, st] : rep.stats) {
    failed += st.failed;
    passed += st.passed;
  }
  if (rep.stats.size() != 12) r.fail("expected 12 checks, ran " + std::to_string(rep.stats.size()));
  if (failed) r.fail(std::to_string(failed) + " failures, first: " + rep.witnesses.front().check + " " + rep.witnesses.front().locus);
  if (secs > 300) r.fail("took " + std::to_string(secs) + " s");
  if (r.ok) r.detail = std::to_string(cfg.trials) + " trials, " + std::to_string(passed) + " checks passed in " + std::to_string(secs) + " s";
  return r;
}

// 2. Worked values.
Result worked_values() {
  Result r;
  if (tminus(kInf, kInf) != V("0")) r.fail("inf (-) inf != 0");
  std::mt19937_64 rng(2);
  auto draw = [&] { return ExtValue(static_cast<std::int64_t>(rng() % 60), static_cast<std::int64_t>(1 + rng() % 6)); };
  AlgebraicSpec dr;
  dr.carrier = CanonicalSpace::parse("DR");
  for (int i = 0; i < 50; ++i) {
    ExtValue x = draw();
    std::vector<ExtValue> a;
    for (std::size_t k = rng() % 4; k > 0; --k) a.push_back(draw());
    ExtValue want = kInf;
    if (!a.empty()) {
      BigRational top = 0;
      for (const auto& v : a) top = std::max(top, v.to_rational());
      BigRational diff = x.to_rational() - top;
      want = diff > 0 ? ExtValue::from_rational(diff) : ExtValue{};
    }
    if (delta_P(x, a) != want) r.fail("delta_P(" + x.str() + ", ...) = " + delta_P(x, a).str() + ", expected " + want.str());
    auto i2 = scott_distance_algebraic(dr, x, a);
    if (i2.lo != want || i2.hi != want) r.fail("sigma_DR(" + x.str() + ", ...) disagrees with delta_P");
  }
  auto s = scott_distance_algebraic(dr, V("5"), {V("1"), V("3")});
  if (s.lo != V("2") || s.hi != V("2")) r.fail("sigma_DR(5,{1,3}) = [" + s.lo.str() + "," + s.hi.str() + "]");
  if (r.ok) r.detail = "inf (-) inf = 0; 50 delta_P instances; sigma_DR(5,{1,3}) = [2,2]";
  return r;
}

// Every metric on n points with entries from g, one per isomorphism class
// when `canonical` is set. Triangles are pruned as soon as all three cells
// are assigned.
void for_each_space(std::size_t n, const std::vector<ExtValue>& g, bool canonical, const std::function<void(const SpacePtr&)>& fn) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  std::vector<std::vector<int>> when(n, std::vector<int>(n, -1));
  for (std::size_t k = 0; k < cells.size(); ++k) when[cells[k].first][cells[k].second] = static_cast<int>(k);
  // triangles (x,y,z) completed by cell k
  std::vector<std::vector<std::array<std::size_t, 3>>> due(cells.size());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        int k = std::max({when[x][z], when[x][y], when[y][z]});
        due[static_cast<std::size_t>(k)].push_back({x, y, z});
      }
  std::vector<std::vector<ExtValue>> d(n, std::vector<ExtValue>(n));
  std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n, 0));
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
  auto minimal = [&] {
    for (const auto& q : perms)
      for (const auto& [i, j] : cells) {
        auto a = idx[q[i]][q[j]], b = idx[i][j];
        if (a != b) {
          if (a < b) return false;
          break;
        }
      }
    return true;
  };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == cells.size()) {
      if (!canonical || minimal()) fn(make_space(labels, d));
      return;
    }
    auto [i, j] = cells[k];
    for (std::size_t v = 0; v < g.size(); ++v) {
      d[i][j] = g[v];
      idx[i][j] = v;
      bool ok = true;
      for (const auto& t : due[k])
        if (d[t[0]][t[2]] > d[t[0]][t[1]] + d[t[1]][t[2]]) {
          ok = false;
          break;
        }
      if (ok) rec(k + 1);
    }
  };
  rec(0);
}

// 3. Scott = Alexandroff on every small grid space, by the witness-family
// sup and by the criterion that every flat weight is Cauchy.
Result finite_collapse() {
  Result r;
  std::size_t count = 0;
  auto check = [&](const SpacePtr& s) {
    ++count;
    auto a = alexandroff(*s);
    if (scott_sup_table(s) != a) r.fail("witness-family sup differs from Alexandroff on " + io::space_to_json(*s).dump());
    if (scott_distance_finite(s) != a) r.fail("scott_distance_finite differs from Alexandroff on " + io::space_to_json(*s).dump());
    for (const auto& f : flat_catalogue(s).flats)
      if (!is_cauchy(f)) r.fail("flat weight that is not Cauchy on " + io::space_to_json(*s).dump());
  };
  const std::vector<ExtValue> wide{V("0"), V("1/3"), V("1/2"), V("2/3"), V("1"), V("3/2"), V("2"), kInf};
  for (std::size_t n = 1; n <= 3; ++n) for_each_space(n, wide, false, check);
  std::size_t small = count;
  const std::vector<ExtValue> narrow{V("0"), V("1/3"), V("1/2"), V("1"), kInf};
  for_each_space(4, narrow, true, check);
  if (r.ok)
    r.detail = std::to_string(small) + " spaces on <= 3 points over {0,1/3,1/2,2/3,1,3/2,2,inf}, " + std::to_string(count - small) +
               " classes on 4 points over {0,1/3,1/2,1,inf}";
  return r;
}

// 4. Topology chain and condition (S) on the battery's spaces.
Result topology_chain() {
  Result r;
  harness::TrialConfig cfg;
  std::size_t s_instances = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto rng = harness::stream_rng(cfg.seed, t, 100);
    auto s = harness::gen_space(cfg, rng);
    auto top = topologies(s);
    auto d = d_scott_topology(s);
    std::string where = "trial " + std::to_string(t);
    if (!d.defects.empty()) r.fail(where + ": " + d.defects.front());
    if (top.d_scott.closed != top.c_scott.closed) r.fail(where + ": dScott != cScott");
    if (top.c_scott.closed != top.gen_scott.closed) r.fail(where + ": cScott != genScott");
    if (top.gen_scott.closed != top.open_ball.closed) r.fail(where + ": genScott != openBall");
    if (top.open_ball.closed != coreflection(alexandroff(*s)).closed) r.fail(where + ": openBall != coreflection");
    std::vector<BallChain> chains;
    for (int k = 0; k < 3; ++k) chains.push_back(harness::gen_chain(s, rng));
    auto rep = check_condition_S_instance(*s, chains, {V("1/2"), V("1"), V("3")});
    s_instances += rep.instances;
    if (!rep.ok()) r.fail(where + ": condition (S) fails: " + rep.failures.front().what);
  }
  if (r.ok) r.detail = std::to_string(cfg.trials) + " spaces equal across all four families; " + std::to_string(s_instances) + " condition (S) instances";
  return r;
}

// 5. GN case study.
Result gn() {
  Result r;
  auto t = Clock::now();
  auto rep = gn_case_study();
  double secs = since(t);
  std::size_t asserted = 0;
  for (const auto& i : rep.items) {
    if (i.informational) continue;
    ++asserted;
    if (!i.ok) r.fail(i.name + ": " + i.detail);
  }
  if (asserted != 4) r.fail("expected four sub-assertions, found " + std::to_string(asserted));
  if (gn_phi(V("0")) != V("1")) r.fail("phi(0) != 1");
  if (secs > 10) r.fail("took " + std::to_string(secs) + " s");
  if (r.ok) r.detail = "4 sub-assertions on 4097 grid points in " + std::to_string(secs) + " s";
  return r;
}

// 6. Certified intervals on DR.
Result intervals() {
  Result r;
  AlgebraicSpec dr;
  dr.carrier = CanonicalSpace::parse("DR");
  std::mt19937_64 rng(6);
  auto draw = [&] { return ExtValue(static_cast<std::int64_t>(rng() % 100), static_cast<std::int64_t>(1 + rng() % 7)); };
  for (int q = 0; q < 100; ++q) {
    ExtValue x = draw();
    std::vector<ExtValue> a;
    for (std::size_t k = 1 + rng() % 4; k > 0; --k) a.push_back(draw());
    ExtValue want = tminus(x, *std::max_element(a.begin(), a.end()));
    auto e = scott_distance_algebraic(dr, x, a);
    if (e.lo != e.hi || e.lo != want) r.fail("breakpoint value [" + e.lo.str() + "," + e.hi.str() + "] for expected " + want.str());
    SigmaOptions o;
    o.breakpoints = false;
    o.eps = ExtValue(1, 1024);
    auto coarse = scott_distance_algebraic(dr, x, a, o);
    o.eps = ExtValue(1, 1024 * 1024);
    auto fine = scott_distance_algebraic(dr, x, a, o);
    if (!coarse.contains(want) || !fine.contains(want)) r.fail("interval misses " + want.str());
    if (fine.width() > coarse.width()) r.fail("2^-20 interval wider than the 2^-10 one");
    if (coarse.width() > ExtValue(1, 1024) || fine.width() > ExtValue(1, 1024 * 1024)) r.fail("interval wider than its tolerance");
  }
  if (r.ok) r.detail = "100 queries exact by breakpoints and enclosed at 2^-10 and 2^-20";
  return r;
}

// 7. Each mutation fails some check with a witness that replays.
Result mutations() {
  Result r;
  std::string summary;
  for (Mutation m : {Mutation::inf_minus_inf, Mutation::skip_triangle_repair, Mutation::nonstrict_bplus}) {
    ScopedMutation guard(m);
    harness::TrialConfig cfg;
    cfg.trials = 100;
    auto rep = harness::run_battery(cfg, 1);
    std::string name(mutation_name(m));
    if (rep.ok()) {
      r.fail(name + " passes every check");
      continue;
    }
    std::size_t replayed = 0;
    for (const auto& w : rep.witnesses) {
      auto again = harness::replay(w);
      if (again.ok || again.locus != w.locus) r.fail(name + ": witness for " + w.check + " trial " + std::to_string(w.trial) + " does not replay");
      else ++replayed;
    }
    std::string failing;
    for (const auto& [id, st] : rep.stats)
      if (st.failed) failing += (failing.empty() ? "" : ",") + id;
    summary += (summary.empty() ? "" : "; ") + name + " -> " + failing + " (" + std::to_string(replayed) + " replayed)";
  }
  if (r.ok) r.detail = summary;
  return r;
}

// 8. Sigma of the square against the square of sigma on pointed spaces.
Result powers() {
  Result r;
  std::mt19937_64 rng(8);
  const std::vector<ExtValue> g{V("0"), V("1/3"), V("1/2"), V("1"), V("2"), kInf};
  std::size_t entries = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t) % 3;
    std::vector<std::vector<ExtValue>> d(n, std::vector<ExtValue>(n));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) d[i][j] = g[rng() % g.size()];
    harness::triangle_repair(d);
    auto s = make_space(harness::point_labels(n), d);
    auto rep = power_sigma_check(s, 2);
    entries += rep.entries;
    if (!rep.ok()) r.fail("mismatch on " + io::space_to_json(*s).dump() + ": " + rep.direct.str() + " vs " + rep.product.str());
  }
  if (r.ok) r.detail = "20 pointed spaces, " + std::to_string(entries) + " table entries equal";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Result (*run)();
  };
  const Criterion criteria[] = {
      {"battery B1-B12, 500 trials, 0 failures", battery},
      {"worked values reproduced exactly", worked_values},
      {"Scott = Alexandroff on all small grid spaces", finite_collapse},
      {"dScott = cScott = genScott = openBall", topology_chain},
      {"GN case study", gn},
      {"certified intervals on DR", intervals},
      {"mutations detected with replayable witnesses", mutations},
      {"sigma of squares = square of sigma", powers},
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.fail(std::string("error: ") + e.what());
    }
    failed += !res.ok;
    std::cout << (res.ok ? "PASS" : "FAIL") << " criterion " << k << ": " << c.name << " -- " << res.detail << std::endl;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
  return failed ? 1 : 0;
}
