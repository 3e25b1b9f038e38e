#include <gtest/gtest.h>

#include <sstream>

#include "seqmine/datagen.hpp"
#include "seqmine/io.hpp"
#include "seqmine/miner.hpp"

using namespace seqmine;

TEST(ItemPopularity, SingleItemAlphabet) {
  auto law = item_popularity_law(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(law(), 0u);
}

TEST(ItemPopularity, CentralItemsDominate) {
  auto law = item_popularity_law(50, 0.5, 0.05, 7);
  std::vector<std::size_t> hist(50, 0);
  for (int i = 0; i < 100000; ++i) ++hist[law()];
  std::vector<ItemId> order(50);
  for (ItemId i = 0; i < 50; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) { return hist[a] > hist[b]; });
  EXPECT_EQ((std::set<ItemId>{order[0], order[1]}), (std::set<ItemId>{24, 25}));
  EXPECT_GT(hist[25], 3 * hist[20]);
  EXPECT_EQ(hist[0] + hist[49], 0u);
}

TEST(ItemPopularity, EqualSeedsGiveEqualStreams) {
  auto a = item_popularity_law(50, 0.5, 0.05, 3);
  auto b = item_popularity_law(50, 0.5, 0.05, 3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a(), b());
  EXPECT_THROW(item_popularity_law(0), UsageError);
}

TEST(Generate, Deterministic) {
  GenParams gp;
  gp.num_sequences = 100;
  const auto a = generate(gp);
  const auto b = generate(gp);
  EXPECT_EQ(write_spmf(a.db), write_spmf(b.db));
  std::ostringstream ma, mb;
  write_manifest(a, ma);
  write_manifest(b, mb);
  EXPECT_EQ(ma.str(), mb.str());
  gp.seed = 2;
  EXPECT_NE(write_spmf(generate(gp).db), write_spmf(a.db));
}

TEST(Generate, EmptyDatabase) {
  GenParams gp;
  gp.num_sequences = 0;
  const auto g = generate(gp);
  EXPECT_TRUE(g.db.empty());
  EXPECT_EQ(g.db.alphabet.size(), 50u);
  for (const auto& p : g.planted) EXPECT_TRUE(p.sids.empty());
}

TEST(Generate, DefaultsMatchTableShape) {
  const auto g = generate(GenParams{});
  EXPECT_EQ(g.db.size(), 500u);
  EXPECT_EQ(g.planted.size(), 20u);
  EXPECT_TRUE(g.db.simple_mode);
  const double mean = static_cast<double>(g.db.total_items()) / static_cast<double>(g.db.size());
  EXPECT_NEAR(mean, 20.0, 2.0);
  for (const auto& p : g.planted) {
    EXPECT_EQ(p.sids.size(), 50u);
    const auto sup = support(g.db, p.pattern);
    EXPECT_GE(sup.count, 50u);
    EXPECT_TRUE(std::includes(sup.ids.begin(), sup.ids.end(), p.sids.begin(), p.sids.end()));
  }
}

TEST(Generate, PlantedPatternsAreMined) {
  GenParams gp;
  gp.num_sequences = 200;
  gp.num_patterns = 5;
  gp.mean_pattern_length = 3;
  gp.min_fraction = 0.2;
  const auto g = generate(gp);
  MiningParams p;
  p.fmin = Threshold::absolute(40);
  p.maxlen = 6;
  const auto r = mine(g.db, p);
  for (const auto& pp : g.planted) {
    if (pp.pattern.size() > p.maxlen) continue;
    EXPECT_NE(r.find(pp.pattern), nullptr);
  }
}

TEST(Generate, ManifestFormat) {
  GenParams gp;
  gp.num_sequences = 4;
  gp.num_patterns = 1;
  gp.mean_length = 3;
  gp.mean_pattern_length = 1;
  gp.min_fraction = 0.5;
  gp.alphabet_size = 5;
  const auto g = generate(gp);
  std::ostringstream out;
  write_manifest(g, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j.contains("pattern"));
  EXPECT_EQ(j["sids"].size(), 2u);
}

TEST(Generate, InfeasibleLengthCap) {
  GenParams gp;
  gp.num_sequences = 10;
  gp.num_patterns = 5;
  gp.min_fraction = 1.0;
  gp.max_sequence_length = 4;
  EXPECT_THROW(generate(gp), UsageError);
}

TEST(Generate, InvalidParameters) {
  GenParams gp;
  gp.alphabet_size = 0;
  EXPECT_THROW(generate(gp), UsageError);
  gp = GenParams{};
  gp.mean_pattern_length = 30;
  EXPECT_THROW(generate(gp), UsageError);
  gp = GenParams{};
  gp.min_fraction = 1.5;
  EXPECT_THROW(generate(gp), UsageError);
}
