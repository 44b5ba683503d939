#include <gtest/gtest.h>

#include "tamecft/campaign.hpp"
#include "tamecft/selfcheck.hpp"

using namespace tamecft;

TEST(Rng, ReferenceValues) {
  Lcg64 r(1);
  EXPECT_EQ(r.next(), 3811929328484256ULL);
  EXPECT_EQ(r.next(), 4588334339901763ULL);
  EXPECT_EQ(r.next(), 5839902250111733ULL);
  Lcg64 t = Lcg64::for_trial(42, 7);
  EXPECT_EQ(t.next(), 6031518774897679ULL);
  EXPECT_EQ(t.next(), 974552327441765ULL);
  EXPECT_EQ(t.next(), 7406927800267073ULL);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t v = r.range(-2, 2);
    EXPECT_GE(v, -2);
    EXPECT_LE(v, 2);
  }
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  CampaignConfig cfg;
  cfg.trials = 40;
  cfg.seed = 9;
  cfg.threads = 1;
  CampaignResult a = run_campaign(cfg);
  cfg.threads = 4;
  CampaignResult b = run_campaign(cfg);
  a.report.erase("timing");
  b.report.erase("timing");
  a.report["config"].erase("threads");
  b.report["config"].erase("threads");
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(a.report["schema"], 1);
  EXPECT_EQ(a.report["records"].size(), 40u);
  cfg.seed = 10;
  CampaignResult c = run_campaign(cfg);
  EXPECT_NE(c.report["records"].dump(), a.report["records"].dump());
}

TEST(Campaign, ZeroTrialsIsAnEmptyPass) {
  CampaignConfig cfg;
  cfg.trials = 0;
  const CampaignResult r = run_campaign(cfg);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.report["records"].empty());
  EXPECT_EQ(r.report["pass"], true);
}

TEST(Campaign, InvalidConfigs) {
  CampaignConfig cfg;
  cfg.ns = {3};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.ns = {4};
  cfg.p = 6;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.p = 5;
  cfg.trials = -1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Campaign, NegativeControlsFail) {
  for (const Convention conv : {Convention{true, false}, Convention{false, true}}) {
    CampaignConfig cfg;
    cfg.trials = 100;
    cfg.convention = conv;
    EXPECT_FALSE(run_campaign(cfg).pass());
  }
}

TEST(Selfcheck, PassesWithEnoughAssertions) {
  const SelfcheckResult r = run_selfcheck();
  EXPECT_GE(r.assertions.size(), 40u);
  EXPECT_TRUE(r.pass()) << r.to_text();
  const auto j = r.to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["pass"], true);
}

TEST(Selfcheck, NegativeControlsFail) {
  EXPECT_FALSE(run_selfcheck({true, false}).pass());
  EXPECT_FALSE(run_selfcheck({false, true}).pass());
}

TEST(Campaign, FailingPairsReplayFromEchoedStrings) {
  CampaignConfig cfg;
  cfg.trials = 40;
  cfg.convention = {true, false};
  const CampaignResult r = run_campaign(cfg);
  const NodeRing ring = campaign_ring(cfg);
  const auto covers = campaign_covers(cfg);
  int replayed = 0;
  for (const auto& rec : r.report["records"]) {
    const FactoredElement f = FactoredElement::parse(ring, rec["f"].get<std::string>());
    const FactoredElement g = FactoredElement::parse(ring, rec["g"].get<std::string>());
    EXPECT_EQ(product_formula(ring, f, g, covers, cfg.convention).pass, rec["pass"].get<bool>());
    if (!rec["pass"].get<bool>()) ++replayed;
  }
  EXPECT_GT(replayed, 0);
}
