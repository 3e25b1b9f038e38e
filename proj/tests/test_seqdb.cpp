#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "seqmine/io.hpp"
#include "seqmine/miner.hpp"
#include "support/random_db.hpp"

using namespace seqmine;
using seqmine::testing::d7;

TEST(Alphabet, OrdersLabelsNaturally) {
  const auto a = Alphabet::from_labels({"10", "b", "2", "a"});
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a.label(0), "2");
  EXPECT_EQ(a.label(1), "10");
  EXPECT_EQ(a.label(2), "a");
  EXPECT_EQ(a.label(3), "b");
  EXPECT_EQ(a.find("a"), 2);
  EXPECT_EQ(a.find("zz"), -1);
  EXPECT_THROW(a.at("zz"), std::out_of_range);
}

TEST(Alphabet, RejectsDuplicateLabels) {
  EXPECT_THROW(Alphabet::from_labels({"a", "a"}), std::invalid_argument);
}

TEST(Spmf, ReadsItemsetsAndPositions) {
  const auto db = read_spmf(std::string("1 2 -1 3 -2\n"));
  ASSERT_EQ(db.size(), 1u);
  const auto& s = db.sequences[0];
  EXPECT_EQ(s.sid, 1u);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.at(1).size(), 2u);
  EXPECT_EQ(s.at(2).size(), 1u);
  EXPECT_FALSE(db.simple_mode);
}

TEST(Spmf, EmptyInputGivesEmptyDatabase) {
  const auto db = read_spmf(std::string(""));
  EXPECT_EQ(db.size(), 0u);
  EXPECT_TRUE(db.alphabet.empty());
}

TEST(Spmf, RejectsMalformedInput) {
  EXPECT_THROW(read_spmf(std::string("1 x -1 -2\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("1 1 -1 -2\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("1 -1 -1 -2\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("1 -1 2 -1\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("1 -1 -2 3 -2\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("-2\n")), DataError);
  EXPECT_THROW(read_spmf(std::string("-7 -2\n")), DataError);
}

TEST(Spmf, IgnoresCommentsAndMetadata) {
  const auto db = read_spmf(std::string("# comment\n% another\n@CONVERTED_FROM_TEXT\n\n5 -1 -2\n"));
  ASSERT_EQ(db.size(), 1u);
  EXPECT_EQ(db.alphabet.label(0), "5");
}

TEST(Spmf, FixtureStatistics) {
  const auto db = d7();
  EXPECT_EQ(db.size(), 7u);
  EXPECT_EQ(db.alphabet.size(), 4u);
  EXPECT_EQ(db.total_items(), 19u);
  EXPECT_TRUE(db.simple_mode);
  EXPECT_EQ(db.alphabet.labels(), (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(Spmf, FixtureFileMatchesEmbeddedCopy) {
  const auto db = load_database(std::string(SEQMINE_DATA_DIR) + "/d7.spmf", InputFormat::spmf);
  EXPECT_EQ(write_spmf(db), write_spmf(d7()));
}

TEST(Spmf, MissingFileIsDataError) {
  EXPECT_THROW(load_database("/nonexistent/x.spmf", InputFormat::spmf), DataError);
}

TEST(Spmf, RoundTripIsStableOnRandomDatabases) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    seqmine::testing::RandomDbShape shape;
    shape.max_itemset = round % 2 == 0 ? 1 : 3;
    const auto db = seqmine::testing::random_db(rng, shape);
    const std::string once = write_spmf(db);
    const auto reread = read_spmf(once);
    const std::string twice = write_spmf(reread);
    EXPECT_EQ(write_spmf(read_spmf(twice)), twice);
    ASSERT_EQ(reread.size(), db.size());
    for (std::size_t s = 0; s < db.size(); ++s) {
      ASSERT_EQ(reread.sequences[s].size(), db.sequences[s].size());
      for (Pos p = 1; p <= db.sequences[s].size(); ++p) {
        std::vector<std::string> a, b;
        for (ItemId i : db.sequences[s].at(p)) a.push_back(db.alphabet.label(i));
        for (ItemId i : reread.sequences[s].at(p)) b.push_back(reread.alphabet.label(i));
        EXPECT_EQ(a, b);
      }
    }
  }
}

TEST(Spmf, WritesCanonicalText) {
  const auto db = read_spmf(std::string("3 1 -1 2 -2\n"));
  EXPECT_EQ(write_spmf(db), "1 3 -1 2 -1 -2\n");
}

TEST(AspFacts, FixtureFirstSequence) {
  const std::string facts = write_asp_facts(d7());
  EXPECT_EQ(facts.substr(0, 25), "seq(1,1,a).\nseq(1,2,c).\ns");
  std::size_t lines = 0;
  for (char c : facts) lines += c == '\n' ? 1 : 0;
  EXPECT_EQ(lines, d7().total_items());
}

TEST(AspFacts, EmptyDatabase) {
  SequenceDatabase db;
  EXPECT_EQ(write_asp_facts(db), "");
}

TEST(AspFacts, QuotesNonConstantLabels) {
  const auto db = read_spmf(std::string("@CONVERTED_FROM_TEXT\n@ITEM=1=A-B\n1 -1 -2\n"));
  EXPECT_EQ(write_asp_facts(db), "seq(1,1,\"A-B\").\n");
  const auto ints = read_spmf(std::string("7 -1 -2\n"));
  EXPECT_EQ(write_asp_facts(ints), "seq(1,1,\"7\").\n");
}

TEST(AspFacts, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    seqmine::testing::RandomDbShape shape;
    shape.max_itemset = 2;
    const auto db = seqmine::testing::random_db(rng, shape);
    const std::string facts = write_asp_facts(db);
    const auto back = read_asp_facts(facts);
    EXPECT_EQ(write_asp_facts(back), facts);
  }
  const auto numeric = read_spmf(std::string("10 2 -1 3 -1 -2\n2 -1 -2\n"));
  const auto back = read_asp_facts(write_asp_facts(numeric));
  EXPECT_EQ(write_spmf(back), write_spmf(numeric));
}

TEST(AspFacts, ParsesCommentsAndQuotedTerms) {
  const auto db = read_asp_facts("% header\nseq(4,1,a). seq(4,2,\"x y\").\nseq(9,1,b).\n");
  ASSERT_EQ(db.size(), 2u);
  EXPECT_EQ(db.sequences[0].sid, 1u);
  EXPECT_EQ(db.alphabet.label(db.sequences[0].at(2)[0]), "x y");
}

TEST(AspFacts, RejectsGapsAndSyntaxErrors) {
  EXPECT_THROW(read_asp_facts("seq(1,2,a)."), DataError);
  EXPECT_THROW(read_asp_facts("seq(1,1,a)"), DataError);
  EXPECT_THROW(read_asp_facts("pat(1,1,a)."), DataError);
}

TEST(Results, RecordFormat) {
  const auto db = d7();
  MiningResult r;
  r.entries.push_back({seqmine::testing::pat(db, "ac"), 5, {1, 2, 4, 6, 7}});
  EXPECT_EQ(write_results(r, db.alphabet), "{\"pattern\":[[\"a\"],[\"c\"]],\"support\":5,\"support_ids\":[1,2,4,6,7]}\n");
  EXPECT_EQ(write_results(MiningResult{}, db.alphabet), "");
}

TEST(Results, RoundTripOfMinedResults) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 20; ++round) {
    seqmine::testing::RandomDbShape shape;
    shape.max_sequences = 15;
    shape.max_itemset = round % 2 == 0 ? 1 : 2;
    const auto db = seqmine::testing::random_db(rng, shape);
    MiningParams p;
    p.fmin = Threshold::absolute(2);
    p.maxlen = 4;
    p.itemset_mode = !db.simple_mode;
    const auto r = mine(db, p);
    const auto back = read_results(write_results(r, db.alphabet), db.alphabet);
    EXPECT_EQ(back.entries, r.entries);
  }
}

TEST(Results, MalformedRecordIsDataError) {
  EXPECT_THROW(read_results(std::string("{\"pattern\":1}\n"), d7().alphabet), DataError);
}

TEST(PatternText, ParsesSeveralSpellings) {
  const auto db = d7();
  EXPECT_EQ(parse_pattern("ac", db.alphabet), Pattern::of_items({0, 2}));
  EXPECT_EQ(parse_pattern("a c", db.alphabet), Pattern::of_items({0, 2}));
  EXPECT_EQ(parse_pattern("a,c", db.alphabet), Pattern::of_items({0, 2}));
  EXPECT_EQ(parse_pattern("(ba) c", db.alphabet), Pattern({{0, 1}, {2}}));
  EXPECT_THROW(parse_pattern("x", db.alphabet), UsageError);
  EXPECT_THROW(parse_pattern("(a", db.alphabet), UsageError);
  EXPECT_THROW(parse_pattern("", db.alphabet), UsageError);
}

TEST(Threshold, ParsesAndResolves) {
  EXPECT_EQ(Threshold::parse("3").resolve(7), 3u);
  EXPECT_EQ(Threshold::parse("10%").resolve(500), 50u);
  EXPECT_EQ(Threshold::parse("0.1").resolve(7), 1u);
  EXPECT_EQ(Threshold::parse("50%").resolve(7), 4u);
  EXPECT_THROW(Threshold::parse("0"), UsageError);
  EXPECT_THROW(Threshold::parse("-3"), UsageError);
  EXPECT_THROW(Threshold::parse("abc"), UsageError);
  EXPECT_THROW(Threshold::parse("150%"), UsageError);
  EXPECT_THROW(Threshold::parse("10%").resolve(0), UsageError);
}

TEST(Pattern, CanonicalOrder) {
  const Pattern a = Pattern::of_items({2});
  const Pattern b = Pattern::of_items({0, 1});
  const Pattern c = Pattern::of_items({0, 2});
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(to_string(Pattern({{0, 1}, {2}}), d7().alphabet), "<(ab)c>");
}
