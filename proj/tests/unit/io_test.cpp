#include <gtest/gtest.h>

#include "common.hpp"

namespace approach_lab {
namespace {

using test::V;

std::string locus_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const parse_error& e) {
    return e.locus();
  }
  return "<no error>";
}

TEST(Io, SpaceRoundTrip) {
  auto s = io::space_from_json(io::read_json_file(test::data_file("W.json")));
  EXPECT_EQ(*s, *test::W());
  EXPECT_EQ(*io::space_from_json(io::space_to_json(*s)), *s);
}

TEST(Io, IntegersAcceptedFloatsRejected) {
  auto s = io::space_from_json(io::read_json_text(R"({"points":["p","q"],"d":[[0,1],["inf",0]]})"));
  EXPECT_EQ(s->d(0, 1), V("1"));
  EXPECT_EQ(locus_of([] { io::space_from_json(io::read_json_file(test::data_file("bad_value.json")), "bad"); }), "bad.d[0][1]");
  EXPECT_EQ(locus_of([] { io::space_from_json(io::read_json_text(R"({"points":["p"],"d":[[0.5]]})"), "s"); }), "s.d[0][0]");
  EXPECT_EQ(locus_of([] { io::space_from_json(io::read_json_text(R"({"points":["p"],"d":[[-1]]})"), "s"); }), "s.d[0][0]");
}

TEST(Io, MalformedJsonReportsLine) {
  EXPECT_EQ(locus_of([] { io::read_json_text("{\n\"points\": [\n}", "f.json"); }), "f.json:3");
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), parse_error);
  EXPECT_EQ(locus_of([] { io::space_from_json(io::read_json_text(R"({"points":["p"]})"), "s"); }), "s");
}

TEST(Io, Weights) {
  auto s = test::W();
  auto phi = io::weight_from_json(io::read_json_file(test::data_file("W_weight.json")), s);
  EXPECT_EQ(phi.values(), (std::vector<ExtValue>{V("1"), V("1"), V("0")}));
  EXPECT_EQ(io::weight_from_json(io::weight_to_json(phi.values(), *s), s), phi);
  EXPECT_THROW(io::weight_from_json(io::read_json_text(R"({"values":{"a":"0","b":"2","c":"1"}})"), s), not_a_weight_error);
  EXPECT_THROW(io::weight_from_json(io::read_json_text(R"({"values":{"z":"0"}})"), s), parse_error);
  auto other = io::read_json_text(R"({"space":{"points":["p"],"d":[["0"]]},"values":{"p":"0"}})");
  EXPECT_THROW(io::weight_from_json(other, s), space_mismatch_error);
}

TEST(Io, TablesAndTopologies) {
  auto t = alexandroff(*test::W());
  EXPECT_EQ(io::table_from_json(io::table_to_json(t)), t);
  auto j = io::table_to_json(t);
  j["delta"].erase("a|{b}");
  EXPECT_THROW(io::table_from_json(j), parse_error);
  auto top = coreflection(alexandroff(*test::chain3()));
  EXPECT_EQ(io::topology_from_json(io::topology_to_json(top)).closed, top.closed);
  EXPECT_THROW(io::topology_from_json(io::read_json_text(R"({"points":["u","v"],"closed":[["u"],["v"]]})")), invalid_structure_error);
  EXPECT_EQ(io::subset_from_text("{}", {"a"}, "x"), 0u);
  EXPECT_EQ(io::subset_from_text("{b,a}", {"a", "b"}, "x"), 3u);
  EXPECT_THROW(io::subset_from_text("a,b", {"a", "b"}, "x"), parse_error);
}

TEST(Io, NetsAndChains) {
  auto s = test::W();
  auto net = io::finite_net_from_json(io::read_json_file(test::data_file("W_net.json")), s);
  EXPECT_EQ(net.prefix, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(yoneda_limits(net), std::vector<std::size_t>{1});
  auto chain = io::ball_chain_from_json(io::read_json_file(test::data_file("W_chain.json")), s);
  EXPECT_EQ(chain_join(*s, chain), FormalBall(1, V("1")));
  auto list = io::ball_chain_from_json(io::read_json_text(R"({"balls":[["a","2"],["b",1]]})"), s);
  EXPECT_EQ(chain_join(*s, list), FormalBall(1, V("1")));
  EXPECT_THROW(io::ball_chain_from_json(io::read_json_text(R"({"balls":[["z","2"]]})"), s), parse_error);
  auto seq = io::canonical_seq_from_json(io::read_json_text(R"({"form":"linear","offset":"0","slope":"1"})"));
  EXPECT_EQ(seq_term(seq, 3), V("3"));
  EXPECT_THROW(io::canonical_seq_from_json(io::read_json_text(R"({"form":"spiral"})")), parse_error);
}

TEST(Io, AlgebraicSpecs) {
  auto dr = io::algebraic_spec_from_json(io::read_json_file(test::data_file("DR_spec.json")));
  EXPECT_FALSE(dr.is_finite());
  EXPECT_EQ(dr.grid_step, V("1/2"));
  auto fin = io::algebraic_spec_from_json(io::read_json_text(R"({"carrier":{"points":["a","b"],"d":[["0","1"],["1","0"]]},"basis":["b"]})"));
  EXPECT_EQ(fin.basis, std::vector<std::size_t>{1});
  EXPECT_THROW(io::algebraic_spec_from_json(io::read_json_text(R"({"carrier":"DR","basis":["a"]})")), parse_error);
  EXPECT_THROW(io::algebraic_spec_from_json(io::read_json_text(R"({"carrier":"DQ"})")), parse_error);
  EXPECT_THROW(io::algebraic_spec_from_json(io::read_json_text(R"({"carrier":"DR","bottom":"inf"})")), invalid_structure_error);
}

}  // namespace
}  // namespace approach_lab
