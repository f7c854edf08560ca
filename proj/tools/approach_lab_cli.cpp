// approach-lab: command line front end.
//
// Exit codes: 0 all checks pass, 1 a check failed or a witness was found,
// 2 usage, parse or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "approach_lab.hpp"

namespace al = approach_lab;
using al::io::json;

namespace {

// "a,b", "{a,b}" and "{}" all work; the braces spare an empty argument.
std::vector<std::string> split(std::string text, char sep) {
  std::vector<std::string> out;
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

al::Subset subset_arg(const al::FiniteSpace& s, const std::string& text) {
  al::Subset a = 0;
  for (const auto& l : split(text, ',')) {
    if (!s.has_point(l)) throw al::parse_error("unknown point '" + l + "'", "--A");
    a |= al::singleton(s.index(l));
  }
  return a;
}

std::size_t point_arg(const al::FiniteSpace& s, const std::string& text) {
  if (!s.has_point(text)) throw al::parse_error("unknown point '" + text + "'", "--x");
  return s.index(text);
}

std::vector<al::ExtValue> coords_arg(const std::string& text, const std::string& locus) {
  std::vector<al::ExtValue> v;
  for (const auto& c : split(text, ':')) {
    try {
      v.push_back(al::ExtValue::parse(c));
    } catch (const al::parse_error& e) {
      throw al::parse_error(e.what(), locus);
    }
  }
  if (v.empty()) throw al::parse_error("empty point", locus);
  return v;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void print_topology(const std::string& name, const al::TopologySpec& t) {
  std::cout << name << ":";
  for (auto c : t.closed) std::cout << " " << al::subset_text(t.labels, c);
  std::cout << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("APPROACH_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw al::parse_error("APPROACH_LAB_SEED must be a non-negative integer", "environment");
    }
  }
  return 42;
}

void print_report(const al::harness::Report& rep) {
  std::cout << "seed: " << rep.seed << "\n";
  std::cout << "trials: " << rep.trials << "\n";
  for (const auto& id : al::harness::battery_ids()) {
    auto it = rep.stats.find(id);
    if (it == rep.stats.end()) continue;
    std::cout << id << ": " << (it->second.failed ? "FAIL" : "pass") << " (" << it->second.passed << " passed, " << it->second.failed << " failed)\n";
  }
  for (const auto& w : rep.witnesses) std::cout << "witness: " << w.to_json().dump() << "\n";
  std::cout << "result: " << (rep.ok() ? "pass" : "fail") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantitative domain theory on finite and canonical spaces"};
  app.require_subcommand(1);

  std::string space_file, x_arg, a_arg, kind, weight_file, target, checks, mutate, json_out, net_file, chain_file, witness_file, eps_arg = "1/1024";
  std::string sigma_space;
  std::uint64_t seed = 0;
  std::size_t trials = 100, max_points = 6;
  bool no_breakpoints = false, as_json = false;
  int code = 0;

  auto* check = app.add_subcommand("check", "validate a space file and its Alexandroff table");
  check->add_option("space", space_file)->required();

  auto* dist = app.add_subcommand("dist", "point-set distance on a finite space");
  dist->add_option("kind", kind)->required()->check(CLI::IsMember({"alexandroff", "scott"}));
  dist->add_option("space", space_file)->required();
  dist->add_option("--x", x_arg)->required();
  dist->add_option("--A", a_arg, "comma separated points, optionally in braces; {} is empty")->required();

  auto* sigma = app.add_subcommand("sigma", "Scott distance of an algebraic space");
  sigma->add_option("--space", sigma_space, "DL, DR, DL^n, DR^n, a space file or an algebraic spec file")->required();
  sigma->add_option("--x", x_arg, "point; coordinates of powers separated by ':'")->required();
  sigma->add_option("--A", a_arg, "comma separated points, optionally in braces; {} is empty")->required();
  sigma->add_option("--eps", eps_arg);
  sigma->add_flag("--no-breakpoints", no_breakpoints, "enumerate the basis grid instead of using breakpoints");

  auto* topo = app.add_subcommand("topology", "the four topologies of a finite space");
  topo->add_option("space", space_file)->required();
  topo->add_flag("--json", as_json);

  auto* table = app.add_subcommand("table", "print an approach table as JSON");
  table->add_option("space", space_file)->required();
  table->add_option("--kind", kind)->check(CLI::IsMember({"alexandroff", "scott"}));

  auto* weights = app.add_subcommand("weights", "weight calculus");
  weights->require_subcommand(1);
  auto* classify = weights->add_subcommand("classify", "flat / Cauchy / Scott classification");
  classify->add_option("space", space_file)->required();
  classify->add_option("weight", weight_file)->required();

  auto* limit = app.add_subcommand("limit", "Yoneda limits of a finite net");
  limit->add_option("space", space_file)->required();
  limit->add_option("net", net_file)->required();

  auto* join = app.add_subcommand("join", "join of a directed family of formal balls");
  join->add_option("space", space_file)->required();
  join->add_option("chain", chain_file)->required();

  auto* suite = app.add_subcommand("suite", "run the theorem battery");
  suite->add_option("--seed", seed);
  suite->add_option("--trials", trials);
  suite->add_option("--max-points", max_points);
  suite->add_option("--checks", checks, "comma separated subset of B1..B12");
  suite->add_option("--mutate", mutate, "inject a fault: inf-minus-inf, skip-triangle-repair, nonstrict-bplus");
  suite->add_option("--json", json_out, "write the report to this file");

  auto* replay = app.add_subcommand("replay", "re-run a witness from a suite report");
  replay->add_option("witness", witness_file)->required();
  replay->add_option("--mutate", mutate);

  auto* case_study = app.add_subcommand("case-study", "built-in case studies");
  case_study->add_option("name", target)->required()->check(CLI::IsMember({"gn"}));

  auto* search = app.add_subcommand("search", "counterexample search");
  search->add_option("target", target)->required();
  search->add_option("--seed", seed);
  search->add_option("--trials", trials);
  search->add_option("--max-points", max_points);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      auto m = al::check_metric_axioms(*s, 8);
      std::cout << "points: " << s->size() << "\n";
      std::cout << "metric: " << (m.ok() ? "ok" : "violated") << "\n";
      for (const auto& v : m.violations)
        std::cout << "violation: " << (v.kind == al::MetricViolation::Kind::diagonal ? "diagonal at " + s->label(v.x)
                                                                                      : "triangle at " + s->label(v.x) + "," + s->label(v.y) + "," + s->label(v.z))
                  << "\n";
      if (m.ok() && s->size() <= al::kMaxTablePoints) {
        auto rep = al::check_approach_axioms(al::alexandroff(*s), 8);
        std::cout << "alexandroff axioms: " << (rep.ok() ? "ok" : "violated") << "\n";
        if (!rep.ok()) code = 1;
      }
      if (!m.ok()) code = 1;
    } else if (*dist) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto x = point_arg(*s, x_arg);
      auto a = subset_arg(*s, a_arg);
      auto t = kind == "alexandroff" ? al::alexandroff(*s) : al::scott_distance_finite(s);
      std::cout << t.at(x, a).str() << "\n";
    } else if (*sigma) {
      al::AlgebraicSpec spec;
      if (al::CanonicalSpace::is_canonical_name(sigma_space)) {
        spec.carrier = al::CanonicalSpace::parse(sigma_space);
      } else {
        auto j = al::io::read_json_file(sigma_space);
        if (j.contains("carrier")) spec = al::io::algebraic_spec_from_json(j, sigma_space);
        else spec.carrier = al::io::space_from_json(j, sigma_space);
      }
      al::Interval iv;
      if (spec.is_finite()) {
        const auto& s = *spec.space();
        iv = al::scott_distance_algebraic(spec, point_arg(s, x_arg), subset_arg(s, a_arg));
      } else {
        al::SigmaOptions opt;
        opt.eps = al::ExtValue::parse(eps_arg);
        opt.breakpoints = !no_breakpoints;
        std::vector<std::vector<al::ExtValue>> pts;
        for (const auto& p : split(a_arg, ',')) pts.push_back(coords_arg(p, "--A"));
        iv = al::scott_distance_algebraic(spec, coords_arg(x_arg, "--x"), pts, opt);
      }
      std::cout << "lo: " << iv.lo.str() << "\n";
      std::cout << "hi: " << iv.hi.str() << "\n";
      std::cout << "exact: " << yes(iv.exact()) << "\n";
    } else if (*topo) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto t = al::topologies(s);
      auto core = al::coreflection(al::alexandroff(*s));
      bool equal = t.d_scott == t.c_scott && t.c_scott == t.gen_scott && t.gen_scott == t.open_ball && t.open_ball == core;
      if (as_json) {
        std::cout << json{{"open_ball", al::io::topology_to_json(t.open_ball)},
                          {"c_scott", al::io::topology_to_json(t.c_scott)},
                          {"d_scott", al::io::topology_to_json(t.d_scott)},
                          {"gen_scott", al::io::topology_to_json(t.gen_scott)},
                          {"coreflection", al::io::topology_to_json(core)},
                          {"equal", equal}}
                         .dump(2)
                  << "\n";
      } else {
        print_topology("open-ball", t.open_ball);
        print_topology("c-Scott", t.c_scott);
        print_topology("d-Scott", t.d_scott);
        print_topology("generalized Scott", t.gen_scott);
        print_topology("coreflection", core);
        std::cout << "equal: " << yes(equal) << "\n";
      }
      if (!equal) code = 1;
    } else if (*table) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto t = kind == "scott" ? al::scott_distance_finite(s) : al::alexandroff(*s);
      std::cout << al::io::table_to_json(t).dump(2) << "\n";
    } else if (*classify) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto phi = al::io::weight_from_json(al::io::read_json_file(weight_file), s, weight_file);
      auto rep = al::representing_point(phi);
      std::cout << "weight: yes\n";
      std::cout << "flat: " << yes(al::is_flat(phi)) << "\n";
      std::cout << "cauchy: " << yes(al::is_cauchy(phi)) << "\n";
      std::cout << "scott: " << yes(al::is_scott_weight(phi)) << "\n";
      std::cout << "representable: " << (rep ? s->label(*rep) : std::string("no")) << "\n";
      std::cout << "colimits:";
      for (auto c : al::colimits(phi)) std::cout << " " << s->label(c);
      std::cout << "\n";
    } else if (*limit) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto net = al::io::finite_net_from_json(al::io::read_json_file(net_file), s, net_file);
      bool fc = al::is_forward_cauchy(net);
      std::cout << "forward cauchy: " << yes(fc) << "\n";
      if (fc) {
        std::cout << "yoneda limits:";
        for (auto x : al::yoneda_limits(net)) std::cout << " " << s->label(x);
        std::cout << "\n";
      }
    } else if (*join) {
      auto s = al::io::space_from_json(al::io::read_json_file(space_file), space_file);
      al::require_metric(*s);
      auto chain = al::io::ball_chain_from_json(al::io::read_json_file(chain_file), s, chain_file);
      auto j = al::chain_join(*s, chain);
      std::cout << "join: (" << s->label(j.center) << "," << j.radius.str() << ")\n";
    } else if (*suite) {
      al::harness::TrialConfig cfg;
      cfg.seed = suite->count("--seed") ? seed : default_seed();
      cfg.trials = trials;
      cfg.max_points = max_points;
      cfg.checks = split(checks, ',');
      al::ScopedMutation guard(mutate.empty() ? 0u : static_cast<unsigned>(al::parse_mutation(mutate)));
      auto rep = al::harness::run_battery(cfg);
      print_report(rep);
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw al::parse_error("cannot write report", json_out);
        out << rep.to_json().dump(2) << "\n";
      }
      if (!rep.ok()) code = 1;
    } else if (*replay) {
      auto j = al::io::read_json_file(witness_file);
      al::harness::Witness w;
      w.check = al::io::field(j, "check", witness_file).get<std::string>();
      w.seed = al::io::field(j, "seed", witness_file).get<std::uint64_t>();
      w.trial = al::io::field(j, "trial", witness_file).get<std::size_t>();
      if (j.contains("max_points")) w.max_points = j.at("max_points").get<std::size_t>();
      al::ScopedMutation guard(mutate.empty() ? 0u : static_cast<unsigned>(al::parse_mutation(mutate)));
      auto o = al::harness::replay(w);
      std::cout << "check: " << w.check << "\n";
      std::cout << "result: " << (o.ok ? "pass" : "fail") << "\n";
      if (!o.ok) {
        std::cout << "locus: " << o.locus << "\n";
        code = 1;
      }
    } else if (*case_study) {
      auto rep = al::gn_case_study();
      for (const auto& it : rep.items)
        std::cout << (it.informational ? "info" : (it.ok ? "pass" : "FAIL")) << ": " << it.name << " (" << it.detail << ")\n";
      std::cout << "result: " << (rep.ok() ? "pass" : "fail") << "\n";
      if (!rep.ok()) code = 1;
    } else if (*search) {
      al::harness::TrialConfig cfg;
      cfg.seed = search->count("--seed") ? seed : default_seed();
      cfg.trials = trials;
      cfg.max_points = max_points;
      auto rep = al::harness::search_counterexample(target, cfg);
      std::cout << "target: " << rep.target << "\n";
      std::cout << "instances: " << rep.instances << "\n";
      for (const auto& w : rep.witnesses) std::cout << "witness: " << w.to_json().dump() << "\n";
      std::cout << "verdict: " << rep.verdict() << "\n";
      if (!rep.ok()) code = 1;
    }
  } catch (const al::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
