#pragma once

// JSON file formats. Values are strings "n", "p/q" or "inf"; JSON integers
// are accepted as well, JSON floats are not.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "approach_lab/algebraic.hpp"
#include "approach_lab/approach.hpp"
#include "approach_lab/balls.hpp"
#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"

namespace approach_lab::io {

using json = nlohmann::json;

inline json read_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw parse_error("malformed JSON", source + ":" + std::to_string(line));
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_json_text(ss.str(), path);
}

inline ExtValue value_from_json(const json& j, const std::string& locus) {
  if (j.is_string()) {
    try {
      return ExtValue::parse(j.get<std::string>());
    } catch (const parse_error& e) {
      throw parse_error(e.what(), locus);
    }
  }
  if (j.is_number_unsigned()) return ExtValue(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw parse_error("negative value", locus);
    return ExtValue(v);
  }
  throw parse_error("expected a value string", locus);
}

inline const json& field(const json& j, const char* key, const std::string& locus) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'", locus);
  return j.at(key);
}

inline std::vector<std::string> labels_from_json(const json& j, const std::string& locus) {
  if (!j.is_array()) throw parse_error("expected an array of labels", locus);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw parse_error("label must be a string", locus + "[" + std::to_string(i) + "]");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

// {"points": [...], "d": [[...], ...]}
inline SpacePtr space_from_json(const json& j, const std::string& source = "space") {
  auto labels = labels_from_json(field(j, "points", source), source + ".points");
  const json& d = field(j, "d", source);
  if (!d.is_array() || d.size() != labels.size()) throw parse_error("d must have one row per point", source + ".d");
  std::vector<std::vector<ExtValue>> rows;
  for (std::size_t x = 0; x < d.size(); ++x) {
    std::string row_locus = source + ".d[" + std::to_string(x) + "]";
    if (!d[x].is_array() || d[x].size() != labels.size()) throw parse_error("row has the wrong length", row_locus);
    std::vector<ExtValue> row;
    for (std::size_t y = 0; y < d[x].size(); ++y) row.push_back(value_from_json(d[x][y], row_locus + "[" + std::to_string(y) + "]"));
    rows.push_back(std::move(row));
  }
  try {
    return make_space(std::move(labels), std::move(rows));
  } catch (const parse_error& e) {
    throw parse_error(e.what(), source);
  }
}

inline json space_to_json(const FiniteSpace& s) {
  json rows = json::array();
  for (std::size_t x = 0; x < s.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < s.size(); ++y) row.push_back(s.d(x, y).str());
    rows.push_back(row);
  }
  return {{"points", s.labels()}, {"d", rows}};
}

// {"space": <name or inline>, "values": {point: value}}. An inline space
// must match the given one; a name is descriptive only.
inline WeightFn weight_from_json(const json& j, const SpacePtr& s, const std::string& source = "weight") {
  if (j.contains("space") && j.at("space").is_object()) {
    auto inline_space = space_from_json(j.at("space"), source + ".space");
    if (!(*inline_space == *s)) throw space_mismatch_error("weight file names a different space");
  }
  const json& vals = field(j, "values", source);
  if (!vals.is_object()) throw parse_error("values must be an object", source + ".values");
  std::map<std::string, ExtValue> m;
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    if (!s->has_point(it.key())) throw parse_error("unknown point '" + it.key() + "'", source + ".values");
    m[it.key()] = value_from_json(it.value(), source + ".values." + it.key());
  }
  return WeightFn(s, values_from_map(*s, m));
}

inline json weight_to_json(const std::vector<ExtValue>& v, const FiniteSpace& s) {
  json vals = json::object();
  for (std::size_t x = 0; x < s.size(); ++x) vals[s.label(x)] = v[x].str();
  return {{"values", vals}};
}

inline Subset subset_from_text(const std::string& text, const std::vector<std::string>& labels, const std::string& locus) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw parse_error("subset must be written {a,b}", locus);
  Subset a = 0;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return 0;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto it = std::find(labels.begin(), labels.end(), item);
    if (it == labels.end()) throw parse_error("unknown point '" + item + "'", locus);
    a |= singleton(static_cast<std::size_t>(it - labels.begin()));
  }
  return a;
}

// {"points": [...], "delta": {"x|{a,b}": value}}; missing entries are an error.
inline ApproachTable table_from_json(const json& j, const std::string& source = "table") {
  auto labels = labels_from_json(field(j, "points", source), source + ".points");
  require_table_size(labels.size());
  ApproachTable t(labels);
  const json& delta = field(j, "delta", source);
  if (!delta.is_object()) throw parse_error("delta must be an object", source + ".delta");
  std::vector<bool> seen(t.size() << t.size());
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    std::string locus = source + ".delta." + it.key();
    auto bar = it.key().find('|');
    if (bar == std::string::npos) throw parse_error("key must be x|{...}", locus);
    auto xl = it.key().substr(0, bar);
    auto xi = std::find(labels.begin(), labels.end(), xl);
    if (xi == labels.end()) throw parse_error("unknown point '" + xl + "'", locus);
    std::size_t x = static_cast<std::size_t>(xi - labels.begin());
    Subset a = subset_from_text(it.key().substr(bar + 1), labels, locus);
    t.set(x, a, value_from_json(it.value(), locus));
    seen[(x << t.size()) + a] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) throw parse_error("missing entry " + labels[k >> t.size()] + "|" + subset_text(labels, static_cast<Subset>(k & t.all())), source + ".delta");
  return t;
}

inline json table_to_json(const ApproachTable& t) {
  json delta = json::object();
  for (std::size_t x = 0; x < t.size(); ++x)
    for (Subset a = 0; a <= t.all(); ++a) delta[t.label(x) + "|" + subset_text(t.labels(), a)] = t.at(x, a).str();
  return {{"points", t.labels()}, {"delta", delta}};
}

inline json topology_to_json(const TopologySpec& top) {
  json closed = json::array();
  for (auto c : top.closed) {
    json set = json::array();
    for (auto i : members(c)) set.push_back(top.labels[i]);
    closed.push_back(set);
  }
  return {{"points", top.labels}, {"closed", closed}};
}

inline TopologySpec topology_from_json(const json& j, const std::string& source = "topology") {
  TopologySpec top;
  top.labels = labels_from_json(field(j, "points", source), source + ".points");
  const json& closed = field(j, "closed", source);
  if (!closed.is_array()) throw parse_error("closed must be an array", source + ".closed");
  for (std::size_t i = 0; i < closed.size(); ++i) {
    std::string locus = source + ".closed[" + std::to_string(i) + "]";
    Subset a = 0;
    for (const auto& l : labels_from_json(closed[i], locus)) {
      auto it = std::find(top.labels.begin(), top.labels.end(), l);
      if (it == top.labels.end()) throw parse_error("unknown point '" + l + "'", locus);
      a |= singleton(static_cast<std::size_t>(it - top.labels.begin()));
    }
    top.closed.push_back(a);
  }
  std::sort(top.closed.begin(), top.closed.end());
  top.closed.erase(std::unique(top.closed.begin(), top.closed.end()), top.closed.end());
  top.validate();
  return top;
}

inline FiniteNet finite_net_from_json(const json& j, const SpacePtr& s, const std::string& source = "net") {
  std::vector<std::string> prefix;
  if (j.contains("prefix")) prefix = labels_from_json(j.at("prefix"), source + ".prefix");
  auto cycle = labels_from_json(field(j, "cycle", source), source + ".cycle");
  try {
    return FiniteNet::from_labels(s, prefix, cycle);
  } catch (const unknown_point_error& e) {
    throw parse_error(e.what(), source);
  }
}

inline CanonicalSeq canonical_seq_from_json(const json& j, const std::string& source = "net") {
  const json& form = field(j, "form", source);
  if (form == "geometric") {
    GeometricSeq g;
    g.limit = value_from_json(field(j, "limit", source), source + ".limit");
    g.coeff = value_from_json(field(j, "coeff", source), source + ".coeff");
    if (j.contains("ratio")) g.ratio = value_from_json(j.at("ratio"), source + ".ratio");
    if (j.contains("from_below")) g.from_below = j.at("from_below").get<bool>();
    g.validate();
    return g;
  }
  if (form == "linear") {
    LinearSeq l;
    l.offset = value_from_json(field(j, "offset", source), source + ".offset");
    l.slope = value_from_json(field(j, "slope", source), source + ".slope");
    l.validate();
    return l;
  }
  throw parse_error("form must be geometric or linear", source + ".form");
}

inline RadiusForm radius_from_json(const json& j, const std::string& source = "radius") {
  RadiusForm r;
  const json& form = field(j, "form", source);
  if (form == "constant") r.kind = RadiusForm::Kind::constant;
  else if (form == "geometric") r.kind = RadiusForm::Kind::geometric;
  else if (form == "harmonic") r.kind = RadiusForm::Kind::harmonic;
  else throw parse_error("form must be constant, geometric or harmonic", source + ".form");
  r.base = value_from_json(field(j, "base", source), source + ".base");
  if (j.contains("coeff")) r.coeff = value_from_json(j.at("coeff"), source + ".coeff");
  if (j.contains("ratio")) r.ratio = value_from_json(j.at("ratio"), source + ".ratio");
  r.validate();
  return r;
}

// {"balls": [["a","1/2"], ...]} or a finite net descriptor plus "radius".
inline BallChain ball_chain_from_json(const json& j, const SpacePtr& s, const std::string& source = "chain") {
  if (j.contains("balls")) {
    std::vector<FormalBall> out;
    const json& balls = j.at("balls");
    for (std::size_t i = 0; i < balls.size(); ++i) {
      std::string locus = source + ".balls[" + std::to_string(i) + "]";
      if (!balls[i].is_array() || balls[i].size() != 2 || !balls[i][0].is_string()) throw parse_error("ball must be [point, radius]", locus);
      auto label = balls[i][0].get<std::string>();
      if (!s->has_point(label)) throw parse_error("unknown point '" + label + "'", locus);
      out.emplace_back(s->index(label), value_from_json(balls[i][1], locus + "[1]"));
    }
    return out;
  }
  return NetBallChain{finite_net_from_json(j, s, source), radius_from_json(field(j, "radius", source), source + ".radius")};
}

// {"carrier": "DR" | inline space, "basis": "grid(step)" | [labels], "bottom": point}
inline AlgebraicSpec algebraic_spec_from_json(const json& j, const std::string& source = "spec") {
  AlgebraicSpec spec;
  const json& carrier = field(j, "carrier", source);
  if (carrier.is_string()) spec.carrier = CanonicalSpace::parse(carrier.get<std::string>());
  else spec.carrier = space_from_json(carrier, source + ".carrier");
  if (j.contains("basis")) {
    const json& basis = j.at("basis");
    if (basis.is_string()) {
      auto text = basis.get<std::string>();
      if (text.rfind("grid(", 0) != 0 || text.back() != ')') throw parse_error("basis must be grid(step) or a list of points", source + ".basis");
      if (spec.is_finite()) throw parse_error("grid basis needs a canonical carrier", source + ".basis");
      spec.grid_step = value_from_json(text.substr(5, text.size() - 6), source + ".basis");
    } else {
      if (!spec.is_finite()) throw parse_error("point basis needs a finite carrier", source + ".basis");
      for (const auto& l : labels_from_json(basis, source + ".basis")) {
        if (!spec.space()->has_point(l)) throw parse_error("unknown point '" + l + "'", source + ".basis");
        spec.basis.push_back(spec.space()->index(l));
      }
    }
  }
  if (j.contains("bottom")) {
    if (!j.at("bottom").is_string()) throw parse_error("bottom must be a string", source + ".bottom");
    spec.bottom = j.at("bottom").get<std::string>();
  }
  spec.validate();
  return spec;
}

}  // namespace approach_lab::io
