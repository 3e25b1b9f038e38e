#include <gtest/gtest.h>

#include <random>

#include "seqmine/oracle.hpp"
#include "support/random_db.hpp"

using namespace seqmine;
using seqmine::testing::d7;
using seqmine::testing::names;
using seqmine::testing::pat;

namespace {

MiningParams params(std::size_t fmin, std::size_t maxlen) {
  MiningParams p;
  p.fmin = Threshold::absolute(fmin);
  p.maxlen = maxlen;
  return p;
}

}  // namespace

TEST(Oracle, FixtureFrequent) {
  const auto db = d7();
  EXPECT_EQ(names(oracle::oracle_frequent(db, params(3, 3)), db.alphabet),
            names({"a", "b", "c", "ab", "ac", "bc", "abc"}));
  EXPECT_TRUE(oracle::oracle_frequent(db, params(8, 3)).entries.empty());
}

TEST(Oracle, FixtureCondensed) {
  const auto db = d7();
  const auto frequent = oracle::oracle_frequent(db, params(3, 7));
  EXPECT_EQ(names(oracle::oracle_condensed(frequent, Mode::closed), db.alphabet),
            names({"a", "b", "ab", "ac", "abc"}));
  EXPECT_EQ(names(oracle::oracle_condensed(frequent, Mode::maximal), db.alphabet), names({"abc"}));
  EXPECT_EQ(names(oracle::oracle_condensed(frequent, Mode::backward_maximal), db.alphabet),
            names({"c", "ac", "bc", "abc"}));
  MiningResult one;
  one.entries.push_back({pat(db, "a"), 6, {1, 2, 4, 5, 6, 7}});
  for (Mode m : {Mode::closed, Mode::maximal, Mode::backward_closed, Mode::backward_maximal}) {
    EXPECT_EQ(oracle::oracle_condensed(one, m).entries, one.entries);
  }
}

TEST(Oracle, Embeddings) {
  const auto db = d7();
  const auto six = oracle::oracle_embeddings(db.sequences[5], pat(db, "ac"));
  EXPECT_EQ(six, (std::vector<std::vector<Pos>>{{1, 2}, {1, 4}}));
  EXPECT_TRUE(oracle::oracle_embeddings(db.sequences[2], pat(db, "ac")).empty());
  EXPECT_EQ(oracle::oracle_prefix_pairs(db.sequences[5], pat(db, "ac")),
            (std::set<std::pair<Pos, Pos>>{{1, 1}, {2, 2}, {2, 4}}));
  EXPECT_EQ(oracle::oracle_prefix_pairs(db.sequences[4], pat(db, "ac")), (std::set<std::pair<Pos, Pos>>{{1, 1}}));
  EXPECT_EQ(oracle::oracle_fill_pairs(db.sequences[0], pat(db, "ac")),
            (std::set<std::pair<Pos, Pos>>{{1, 1}, {1, 2}, {2, 2}}));
}

TEST(Oracle, ContainsIsSubsequence) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 3000; ++i) {
    const auto s = seqmine::testing::random_sequence(rng, 1 + rng() % 8, 4, 1 + i % 2);
    const auto p = seqmine::testing::random_pattern(rng, 4, 4, 1 + i % 2);
    EXPECT_EQ(oracle::contains(s.elements, p), is_subsequence(p, s));
    EXPECT_EQ(!oracle::oracle_embeddings(s, p).empty(), is_subsequence(p, s));
  }
}

TEST(Oracle, SupportsAreConsistent) {
  std::mt19937_64 rng(52);
  for (int round = 0; round < 20; ++round) {
    const auto db = seqmine::testing::random_db(rng, {});
    for (const auto& e : oracle::oracle_frequent(db, params(2, 3)).entries) {
      EXPECT_EQ(support(db, e.pattern).ids, e.support_ids);
      EXPECT_GE(e.support, 2u);
    }
  }
}

TEST(Oracle, StrictlyBelow) {
  const auto db = d7();
  EXPECT_TRUE(oracle::strictly_below(pat(db, "ac"), pat(db, "abc"), false));
  EXPECT_FALSE(oracle::strictly_below(pat(db, "ac"), pat(db, "abc"), true));
  EXPECT_TRUE(oracle::strictly_below(pat(db, "ab"), pat(db, "abc"), true));
  EXPECT_FALSE(oracle::strictly_below(pat(db, "ab"), pat(db, "ab"), false));
  EXPECT_TRUE(oracle::strictly_below(Pattern({{0}, {1}}), Pattern({{0}, {1, 2}}), true));
}

TEST(Oracle, ConstrainedFixture) {
  const auto db = d7();
  oracle::OracleConstraints c;
  c.maxgap = 0;
  const auto r = oracle::oracle_constrained(db, params(3, 3), c);
  EXPECT_EQ(r.find(pat(db, "abc"))->support, 3u);
  oracle::OracleConstraints m;
  m.must_have = {2};
  m.cannot_have = {1};
  EXPECT_EQ(names(oracle::oracle_constrained(db, params(3, 3), m), db.alphabet), names({"c", "ac"}));
  oracle::OracleConstraints rx;
  rx.regex = "a(b|c)*c";
  EXPECT_EQ(names(oracle::oracle_constrained(db, params(3, 3), rx), db.alphabet), names({"ac", "abc"}));
}

TEST(Oracle, GuardsRejectLargeInputs) {
  oracle::OracleConfig cfg;
  cfg.max_db_size = 3;
  EXPECT_THROW(oracle::oracle_frequent(d7(), params(1, 2), cfg), oracle::OracleLimit);
  oracle::OracleConfig len;
  len.max_pattern_len = 2;
  EXPECT_THROW(oracle::oracle_frequent(d7(), params(1, 4), len), oracle::OracleLimit);
  EXPECT_NO_THROW(oracle::oracle_frequent(d7(), params(1, 2), len));
}
