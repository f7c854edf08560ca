#include <gtest/gtest.h>

#include "common.hpp"

namespace approach_lab {
namespace {

using namespace harness;

TEST(Harness, GeneratedSpacesAreValidAndDeterministic) {
  TrialConfig cfg;
  cfg.seed = 1;
  cfg.max_points = 3;
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto r1 = stream_rng(cfg.seed, t, 1), r2 = stream_rng(cfg.seed, t, 1);
    auto a = gen_space(cfg, r1), b = gen_space(cfg, r2);
    EXPECT_EQ(*a, *b);
    EXPECT_LE(a->size(), 3u);
    EXPECT_TRUE(check_metric_axioms(*a).ok());
  }
}

TEST(Harness, SkipRepairYieldsInvalidSpaces) {
  ScopedMutation m(Mutation::skip_triangle_repair);
  TrialConfig cfg;
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto r = stream_rng(cfg.seed, t, 1);
    bad += !check_metric_axioms(*gen_space(cfg, r)).ok();
  }
  EXPECT_GT(bad, 10u);
}

TEST(Harness, SmallBatteryPasses) {
  TrialConfig cfg;
  cfg.trials = 40;
  auto rep = run_battery(cfg);
  EXPECT_TRUE(rep.ok());
  for (const auto& id : battery_ids()) {
    EXPECT_EQ(rep.stats[id].passed, 40u) << id;
    EXPECT_EQ(rep.stats[id].failed, 0u) << id;
  }
}

TEST(Harness, ReportIsDeterministic) {
  TrialConfig cfg;
  cfg.trials = 10;
  cfg.seed = 99;
  EXPECT_EQ(run_battery(cfg).to_json(false), run_battery(cfg).to_json(false));
}

void expect_detected(Mutation m, const std::vector<std::string>& checks) {
  ScopedMutation guard(m);
  TrialConfig cfg;
  cfg.trials = 100;
  cfg.checks = checks;
  auto rep = run_battery(cfg);
  ASSERT_FALSE(rep.ok()) << mutation_name(m);
  for (const auto& w : rep.witnesses) {
    auto again = replay(w);
    EXPECT_FALSE(again.ok);
    EXPECT_EQ(again.locus, w.locus);
    EXPECT_EQ(again.instance, w.instance);
  }
}

TEST(Harness, InfMinusInfIsDetected) { expect_detected(Mutation::inf_minus_inf, {"B2"}); }
TEST(Harness, SkipRepairIsDetected) { expect_detected(Mutation::skip_triangle_repair, {"B1"}); }
TEST(Harness, NonstrictBPlusIsDetected) { expect_detected(Mutation::nonstrict_bplus, {"B6"}); }

TEST(Harness, WitnessRoundTrip) {
  ScopedMutation guard(Mutation::inf_minus_inf);
  TrialConfig cfg;
  cfg.trials = 100;
  cfg.checks = {"B2"};
  auto rep = run_battery(cfg);
  ASSERT_FALSE(rep.witnesses.empty());
  auto j = rep.witnesses.front().to_json();
  EXPECT_EQ(j.at("check"), "B2");
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_TRUE(j.contains("instance"));
}

TEST(Harness, ConfigValidation) {
  TrialConfig cfg;
  cfg.checks = {"B13"};
  EXPECT_THROW(run_battery(cfg), domain_error);
  EXPECT_THROW(run_check("nope", TrialConfig{}, 0), domain_error);
  TrialConfig big;
  big.max_points = 7;
  EXPECT_THROW(run_battery(big), domain_error);
}

TEST(Harness, Search) {
  TrialConfig cfg;
  cfg.trials = 30;
  auto b6 = search_counterexample("B6", cfg);
  EXPECT_TRUE(b6.witnesses.empty());
  EXPECT_EQ(b6.verdict(), "no witness within budget");
  auto collapse = search_counterexample("cScott!=genScott", cfg);
  EXPECT_TRUE(collapse.witnesses.empty());
  EXPECT_GT(collapse.instances, 700u);
  EXPECT_THROW(search_counterexample("B99", cfg), domain_error);
  EXPECT_THROW(search_counterexample("", cfg), domain_error);
}

TEST(Harness, MutationNames) {
  EXPECT_EQ(parse_mutation("inf-minus-inf"), Mutation::inf_minus_inf);
  EXPECT_EQ(parse_mutation("none"), Mutation::none);
  EXPECT_THROW(parse_mutation("everything"), parse_error);
}

}  // namespace
}  // namespace approach_lab
