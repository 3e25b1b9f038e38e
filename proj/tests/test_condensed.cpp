#include <gtest/gtest.h>

#include <random>

#include "seqmine/condensed.hpp"
#include "seqmine/miner.hpp"
#include "seqmine/oracle.hpp"
#include "support/random_db.hpp"

using namespace seqmine;
using seqmine::testing::d7;
using seqmine::testing::names;
using seqmine::testing::pat;

namespace {

MiningParams params(std::size_t fmin, std::size_t maxlen, Mode mode, Strategy s = Strategy::fill_gaps) {
  MiningParams p;
  p.fmin = Threshold::absolute(fmin);
  p.maxlen = maxlen;
  p.mode = mode;
  p.strategy = s;
  return p;
}

std::vector<std::uint32_t> ids(const SequenceDatabase& db, const Pattern& p) { return support(db, p).ids; }

Pattern insert_element(const Pattern& p, std::size_t slot, ItemId item) {
  Pattern q = p;
  q.elements.insert(q.elements.begin() + static_cast<long>(slot), Itemset{item});
  return q;
}

Pattern grow_element(const Pattern& p, std::size_t slot, ItemId item) {
  Pattern q = p;
  auto& e = q.elements[slot];
  e.insert(std::lower_bound(e.begin(), e.end(), item), item);
  return q;
}

}  // namespace

TEST(OccurrenceBounds, Examples) {
  const auto db = d7();
  for (Strategy s : {Strategy::skip_gaps, Strategy::fill_gaps}) {
    const auto two = occurrence_bounds(db.sequences[1], pat(db, "ac"), s);
    ASSERT_TRUE(two);
    EXPECT_EQ(two->leftmost, (std::vector<Pos>{2, 4}));
    EXPECT_EQ(two->rightmost, (std::vector<Pos>{2, 4}));
    const auto six = occurrence_bounds(db.sequences[5], pat(db, "ac"), s);
    ASSERT_TRUE(six);
    EXPECT_EQ(six->leftmost, (std::vector<Pos>{1, 2}));
    EXPECT_EQ(six->rightmost, (std::vector<Pos>{1, 4}));
    EXPECT_FALSE(occurrence_bounds(db.sequences[2], pat(db, "ac"), s));
  }
}

TEST(InsertableRegions, Examples) {
  const auto db = d7();
  const auto two = insertable_regions(db.sequences[1], pat(db, "ac"), Strategy::fill_gaps);
  EXPECT_EQ(two.between, (std::vector<Itemset>{{3}, {1}, {}}));
  const auto one = insertable_regions(db.sequences[0], pat(db, "ac"), Strategy::skip_gaps);
  EXPECT_EQ(one.between, (std::vector<Itemset>{{}, {}, {}}));
  const auto six = insertable_regions(db.sequences[5], pat(db, "ac"), Strategy::skip_gaps);
  EXPECT_EQ(six.between, (std::vector<Itemset>{{}, {1, 2}, {1, 2}}));
  EXPECT_EQ(six.bounds, (std::vector<std::pair<Pos, Pos>>{{0, 1}, {1, 4}, {2, 5}}));
  EXPECT_THROW(insertable_regions(db.sequences[2], pat(db, "ac"), Strategy::fill_gaps), UsageError);
}

TEST(Maximality, Examples) {
  const auto db = d7();
  EXPECT_TRUE(is_maximal(db, pat(db, "abc"), 3, ids(db, pat(db, "abc"))));
  EXPECT_FALSE(is_maximal(db, pat(db, "ab"), 3, ids(db, pat(db, "ab"))));
  const auto single = read_spmf(std::string("1 -1 -2\n"));
  EXPECT_TRUE(is_maximal(single, Pattern::of_items({0}), 1, {1}));
}

TEST(Closure, Examples) {
  const auto db = d7();
  EXPECT_FALSE(is_closed(db, pat(db, "bc"), 3, ids(db, pat(db, "bc"))));
  EXPECT_TRUE(is_closed(db, pat(db, "abc"), 3, ids(db, pat(db, "abc"))));
  EXPECT_FALSE(is_closed(db, pat(db, "c"), 3, ids(db, pat(db, "c"))));
  EXPECT_TRUE(is_closed(db, pat(db, "ab"), 3, ids(db, pat(db, "ab")), Strategy::skip_gaps));
}

TEST(Backward, Examples) {
  const auto db = d7();
  EXPECT_FALSE(backward_filter(db, pat(db, "a"), 3, ids(db, pat(db, "a")), CondensedKind::backward_maximal));
  EXPECT_TRUE(backward_filter(db, pat(db, "abc"), 3, ids(db, pat(db, "abc")), CondensedKind::backward_closed));
  EXPECT_TRUE(backward_filter(db, pat(db, "c"), 3, ids(db, pat(db, "c")), CondensedKind::maximal));
}

TEST(CondensedMining, FixtureSets) {
  const auto db = d7();
  for (Strategy s : {Strategy::skip_gaps, Strategy::fill_gaps}) {
    EXPECT_EQ(names(mine(db, params(3, 7, Mode::closed, s)), db.alphabet), names({"a", "b", "ab", "ac", "abc"}));
    EXPECT_EQ(names(mine(db, params(3, 7, Mode::maximal, s)), db.alphabet), names({"abc"}));
    EXPECT_EQ(names(mine(db, params(3, 7, Mode::backward_maximal, s)), db.alphabet),
              names({"c", "ac", "bc", "abc"}));
    EXPECT_EQ(names(mine(db, params(3, 7, Mode::backward_closed, s)), db.alphabet),
              names({"a", "b", "c", "ab", "ac", "bc", "abc"}));
  }
}

TEST(CondensedMining, FixtureMatchesOracle) {
  const auto db = d7();
  for (Mode m : {Mode::closed, Mode::maximal, Mode::backward_closed, Mode::backward_maximal}) {
    for (std::size_t fmin = 1; fmin <= 7; ++fmin) {
      const auto p = params(fmin, 4, m);
      EXPECT_EQ(mine(db, p).entries, oracle::oracle_condensed(db, p).entries) << to_string(m) << " " << fmin;
    }
  }
}

TEST(CondensedMining, LengthCapUsesFullDomination) {
  const auto db = d7();
  EXPECT_TRUE(mine(db, params(3, 2, Mode::maximal)).entries.empty());
}

TEST(CondensedMining, StrategiesAndOracleAgree) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 60; ++round) {
    seqmine::testing::RandomDbShape shape;
    shape.max_sequences = 15;
    shape.max_length = 7;
    shape.alphabet = 5;
    shape.max_itemset = round % 3 == 0 ? 2 : 1;
    const auto db = seqmine::testing::random_db(rng, shape);
    const Mode m = static_cast<Mode>(1 + round % 4);
    auto p = params(1 + rng() % 3, 1 + rng() % 7, m);
    p.itemset_mode = !db.simple_mode;
    const auto expected = oracle::oracle_condensed(db, p).entries;
    p.strategy = Strategy::skip_gaps;
    EXPECT_EQ(mine(db, p).entries, expected) << "round " << round;
    p.strategy = Strategy::fill_gaps;
    EXPECT_EQ(mine(db, p).entries, expected) << "round " << round;
  }
}

TEST(CondensedMining, SetRelations) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 30; ++round) {
    const auto db = seqmine::testing::random_db(rng, {});
    const std::size_t fmin = 1 + rng() % 4;
    const auto frequent = names(mine(db, params(fmin, 12, Mode::frequent)), db.alphabet);
    const auto closed = names(mine(db, params(fmin, 12, Mode::closed)), db.alphabet);
    const auto maximal = names(mine(db, params(fmin, 12, Mode::maximal)), db.alphabet);
    const auto bclosed = names(mine(db, params(fmin, 12, Mode::backward_closed)), db.alphabet);
    const auto bmaximal = names(mine(db, params(fmin, 12, Mode::backward_maximal)), db.alphabet);
    auto subset = [](const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
    EXPECT_TRUE(subset(maximal, closed));
    EXPECT_TRUE(subset(closed, bclosed));
    EXPECT_TRUE(subset(maximal, bmaximal));
    EXPECT_TRUE(subset(bmaximal, bclosed));
    EXPECT_TRUE(subset(bclosed, frequent));
  }
}

TEST(InsertableRegions, SoundAndComplete) {
  std::mt19937_64 rng(43);
  const std::size_t k = 4;
  for (int round = 0; round < 3000; ++round) {
    const std::size_t width = 1 + round % 2;
    const auto s = seqmine::testing::random_sequence(rng, 1 + rng() % 9, k, width);
    const auto p = seqmine::testing::random_subpattern(rng, s, 4);
    const Strategy strategy = (round / 2) % 2 == 0 ? Strategy::skip_gaps : Strategy::fill_gaps;
    const auto r = insertable_regions(s, p, strategy, width > 1);
    for (std::size_t slot = 0; slot <= p.size(); ++slot) {
      for (ItemId x = 0; x < k; ++x) {
        const bool listed = std::binary_search(r.between[slot].begin(), r.between[slot].end(), x);
        EXPECT_EQ(listed, is_subsequence(insert_element(p, slot, x), s));
      }
    }
    if (width > 1) {
      for (std::size_t slot = 0; slot < p.size(); ++slot) {
        for (ItemId x = 0; x < k; ++x) {
          if (contains_item(p.elements[slot], x)) continue;
          const bool listed = std::binary_search(r.within[slot].begin(), r.within[slot].end(), x);
          EXPECT_EQ(listed, is_subsequence(grow_element(p, slot, x), s));
        }
      }
    }
  }
}

TEST(CondensedMining, StrictModeFiltersWithinOutput) {
  const auto db = d7();
  auto p = params(3, 7, Mode::maximal);
  ConstraintSet cs;
  cs.cannot_have = {1};
  EXPECT_TRUE(mine(db, p, cs).entries.empty());
  p.strict_condensed = true;
  EXPECT_EQ(names(mine(db, p, cs), db.alphabet), names({"ac"}));
}

TEST(CondensedMining, StrictFilterMatchesOracleCondense) {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 30; ++round) {
    const auto db = seqmine::testing::random_db(rng, {});
    const auto frequent = mine(db, params(2, 12, Mode::frequent));
    for (Mode m : {Mode::closed, Mode::maximal, Mode::backward_closed, Mode::backward_maximal}) {
      EXPECT_EQ(strict_condensed_filter(frequent.entries, *condensed_kind(m)),
                oracle::oracle_condense(frequent.entries, m));
    }
  }
}
