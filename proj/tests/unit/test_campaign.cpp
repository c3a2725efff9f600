#include "depletion/campaign.hpp"
#include "depletion/errors.hpp"
#include "depletion/scene.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace depletion {
namespace {

TEST(Campaign, NamesAndDefaults) {
  const auto& names = campaign_names();
  EXPECT_EQ(names.size(), 7u);
  EXPECT_EQ(default_campaign_size("tightness"), 10000u);
  EXPECT_EQ(default_campaign_size("inclusion-exclusion"), 20u);
  EXPECT_THROW(default_campaign_size("nope"), InputError);
  EXPECT_THROW(run_campaign("nope", {}), InputError);
}

class SmallCampaign : public ::testing::TestWithParam<std::string> {};

TEST_P(SmallCampaign, PassesOnASample) {
  CampaignOptions opt;
  opt.n_configs = 40;
  opt.seed = 7;
  const auto r = run_campaign(GetParam(), opt);
  EXPECT_TRUE(r.passed()) << format_report(r);
  EXPECT_EQ(r.name, GetParam());
  EXPECT_EQ(r.configurations, 40u);
}

INSTANTIATE_TEST_SUITE_P(All, SmallCampaign,
                         ::testing::Values("tightness", "monotonicity", "descartes", "dichotomy",
                                           "plane-reduction", "wall"),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Campaign, ThreadCountDoesNotChangeReport) {
  CampaignOptions opt;
  opt.n_configs = 60;
  opt.seed = 11;
  opt.threads = 1;
  const auto one = run_campaign("dichotomy", opt);
  opt.threads = 3;
  const auto three = run_campaign("dichotomy", opt);
  EXPECT_EQ(format_report(one), format_report(three));
}

TEST(Campaign, InclusionExclusionDetectsTripleOverlapWithEnoughSamples) {
  CampaignOptions opt;
  opt.n_configs = 4;
  opt.seed = 3;
  opt.mc_samples = 200'000;
  opt.contact_samples = 100'000'000;
  const auto r = run_campaign("inclusion-exclusion", opt);
  EXPECT_EQ(r.configurations, 5u);
  EXPECT_TRUE(r.passed()) << format_report(r);
}

TEST(Campaign, TripleOverlapIsBelowNoiseAtAMillionSamples) {
  // The triple-overlap area at 1.2 times the contact threshold is about 0.6
  // standard errors at 10^6 samples, so the check cannot see it.
  CampaignOptions opt;
  opt.n_configs = 1;
  opt.seed = 3;
  opt.mc_samples = 100'000;
  opt.contact_samples = 1'000'000;
  const auto r = run_campaign("inclusion-exclusion", opt);
  ASSERT_EQ(r.failures.size(), 1u) << format_report(r);
  EXPECT_EQ(r.failures[0].index, 1u);
  EXPECT_LT(r.failures[0].violation, 3.0);
}

TEST(Campaign, ReportFormatAndReproducibleFailureScene) {
  CampaignReport r;
  r.name = "dichotomy";
  r.configurations = 2;
  r.seed = 5;
  r.max_violation = 0.5;
  r.failures.push_back({1, 99, 0.5, "something off",
                        R"({"bodies":[{"params":{"center":[0.0,0.0],"radius":1.0},"type":"ball"}],"dimension":2})"});
  const std::string text = format_report(r);
  EXPECT_NE(text.find("campaign: dichotomy\n"), std::string::npos);
  EXPECT_NE(text.find("failure index=1 seed=99 violation=0.5 detail=\"something off\""),
            std::string::npos);
  EXPECT_NE(text.find("result: FAIL\n"), std::string::npos);
  const Scene s = parse_scene(r.failures[0].scene);
  EXPECT_EQ(s.bodies.size(), 1u);
}

}  // namespace
}  // namespace depletion
