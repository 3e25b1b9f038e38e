#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "seqmine/io.hpp"
#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine::testing {

struct RandomDbShape {
  std::size_t min_sequences = 1;
  std::size_t max_sequences = 40;
  std::size_t max_length = 12;
  std::size_t alphabet = 8;
  /// Largest itemset size; 1 gives a simple database.
  std::size_t max_itemset = 1;
};

/// Letters a, b, c, ... as labels so regexes can be cross-checked on strings.
inline std::vector<std::string> letter_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline Itemset random_itemset(std::mt19937_64& rng, std::size_t k, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_int_distribution<ItemId> item(0, static_cast<ItemId>(k - 1));
  Itemset e;
  const std::size_t n = size(rng);
  while (e.size() < n) {
    e.push_back(item(rng));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return e;
}

inline Sequence random_sequence(std::mt19937_64& rng, std::size_t length, std::size_t k, std::size_t max_itemset) {
  Sequence s;
  for (std::size_t i = 0; i < length; ++i) s.elements.push_back(random_itemset(rng, k, max_itemset));
  return s;
}

/// The full alphabet is kept even if some items never occur.
inline SequenceDatabase random_db(std::mt19937_64& rng, const RandomDbShape& shape) {
  SequenceDatabase db;
  db.alphabet = Alphabet::from_labels(letter_labels(shape.alphabet));
  std::uniform_int_distribution<std::size_t> count(shape.min_sequences, shape.max_sequences);
  std::uniform_int_distribution<std::size_t> length(1, shape.max_length);
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Sequence s = random_sequence(rng, length(rng), shape.alphabet, shape.max_itemset);
    s.sid = static_cast<std::uint32_t>(i + 1);
    db.sequences.push_back(std::move(s));
  }
  db.validate();
  return db;
}

/// Random subsequence of `s` (a pattern it supports).
inline Pattern random_subpattern(std::mt19937_64& rng, const Sequence& s, std::size_t max_len) {
  std::vector<std::size_t> positions(s.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  std::uniform_int_distribution<std::size_t> len(1, std::min(max_len, s.size()));
  positions.resize(len(rng));
  std::sort(positions.begin(), positions.end());
  Pattern p;
  for (std::size_t q : positions) {
    const auto& e = s.elements[q];
    Itemset sub;
    for (ItemId x : e)
      if (rng() % 2 == 0) sub.push_back(x);
    if (sub.empty()) sub.push_back(e[rng() % e.size()]);
    p.elements.push_back(sub);
  }
  return p;
}

inline Pattern random_pattern(std::mt19937_64& rng, std::size_t max_len, std::size_t k, std::size_t max_itemset) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  Pattern p;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) p.elements.push_back(random_itemset(rng, k, max_itemset));
  return p;
}

inline SequenceDatabase d7() {
  return read_spmf(std::string(
      "@CONVERTED_FROM_TEXT\n@ITEM=1=a\n@ITEM=2=b\n@ITEM=3=c\n@ITEM=4=d\n"
      "1 -1 3 -1 -2\n4 -1 1 -1 2 -1 3 -1 -2\n2 -1 -2\n1 -1 2 -1 3 -1 -2\n"
      "1 -1 2 -1 -2\n1 -1 3 -1 2 -1 3 -1 -2\n1 -1 2 -1 3 -1 -2\n"));
}

/// Pattern from single-character labels, e.g. "abc".
inline Pattern pat(const SequenceDatabase& db, const std::string& text) { return parse_pattern(text, db.alphabet); }

/// Pattern texts of a result without the angle brackets, e.g. {"a", "ac"}.
inline std::set<std::string> names(const MiningResult& r, const Alphabet& alphabet) {
  std::set<std::string> out;
  for (const auto& e : r.entries) {
    const std::string t = to_string(e.pattern, alphabet);
    out.insert(t.substr(1, t.size() - 2));
  }
  return out;
}

inline std::set<std::string> names(std::initializer_list<const char*> items) {
  return std::set<std::string>(items.begin(), items.end());
}

}  // namespace seqmine::testing
