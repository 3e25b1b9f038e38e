#pragma once

// Subsequence and prefix relations, support counting and the two embedding
// relations: skip-gaps (every admissible match pair) and fill-gaps (the
// monotone frontier of leftmost matches).

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

/// True iff every item of `a` occurs in `b`. Both must be sorted.
inline bool is_subitemset(const Itemset& a, const Itemset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains_item(const Itemset& set, ItemId item) {
  return std::binary_search(set.begin(), set.end(), item);
}

/// T ⪯ S: an increasing position mapping with element-wise sub-itemset matches.
inline bool is_subsequence(const Pattern& t, const Sequence& s) {
  std::size_t k = 0;
  for (Pos j = 1; j <= s.size() && k < t.size(); ++j) {
    if (is_subitemset(t.elements[k], s.at(j))) ++k;
  }
  return k == t.size();
}

inline bool is_subsequence(const Pattern& t, const Pattern& s) {
  std::size_t k = 0;
  for (std::size_t j = 0; j < s.size() && k < t.size(); ++j) {
    if (is_subitemset(t.elements[k], s.elements[j])) ++k;
  }
  return k == t.size();
}

/// T ⪯_b S: the first |T|-1 elements are equal and the last is a sub-itemset
/// of S's element at the same position.
inline bool is_prefix(const Pattern& t, const std::vector<Itemset>& s) {
  if (t.empty()) return true;
  if (t.size() > s.size()) return false;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (t.elements[k] != s[k]) return false;
  }
  return is_subitemset(t.elements.back(), s[t.size() - 1]);
}

inline bool is_prefix(const Pattern& t, const Sequence& s) { return is_prefix(t, s.elements); }
inline bool is_prefix(const Pattern& t, const Pattern& s) { return is_prefix(t, s.elements); }

struct SupportSet {
  std::size_t count = 0;
  std::vector<std::uint32_t> ids;
};

inline SupportSet support(const SequenceDatabase& db, const Pattern& p) {
  SupportSet out;
  for (const auto& s : db.sequences) {
    if (is_subsequence(p, s)) out.ids.push_back(s.sid);
  }
  out.count = out.ids.size();
  return out;
}

using MatchPair = std::pair<Pos, Pos>;  // (pattern position, sequence position)

/// Skip-gaps relation ℰ: (i, j) holds iff pattern element i matches sequence
/// position j and the pattern prefix of length i-1 embeds strictly before j.
struct SkipGapsEmbedding {
  /// positions[i-1] = increasing sequence positions j with (i, j) in ℰ.
  std::vector<std::vector<Pos>> positions;

  bool contains(Pos i, Pos j) const {
    if (i == 0 || i > positions.size()) return false;
    return std::binary_search(positions[i - 1].begin(), positions[i - 1].end(), j);
  }

  /// True iff some (|P|, j) is present.
  bool complete() const { return !positions.empty() && !positions.back().empty(); }

  std::vector<MatchPair> pairs() const {
    std::vector<MatchPair> out;
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (Pos j : positions[i]) out.emplace_back(static_cast<Pos>(i + 1), j);
    return out;
  }
};

/// Forward scan per pattern position: row i+1 keeps matches after the
/// smallest position of row i.
inline SkipGapsEmbedding skip_gaps_embedding(const Sequence& s, const Pattern& p) {
  SkipGapsEmbedding emb;
  emb.positions.resize(p.size());
  Pos after = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Pos j = after + 1; j <= s.size(); ++j) {
      if (is_subitemset(p.elements[i], s.at(j))) emb.positions[i].push_back(j);
    }
    if (emb.positions[i].empty()) break;
    after = emb.positions[i].front();
  }
  return emb;
}

/// Fill-gaps relation ℰ′, stored as the leftmost position per pattern
/// position; (i, j) holds for every j from leftmost[i] to |S|.
struct FillGapsFrontier {
  std::vector<Pos> leftmost;  // 0 = row empty
  Pos sequence_length = 0;

  bool contains(Pos i, Pos j) const {
    if (i == 0 || i > leftmost.size() || j > sequence_length) return false;
    const Pos first = leftmost[i - 1];
    return first != 0 && j >= first;
  }

  /// (|P|, |S|) present.
  bool complete() const {
    return !leftmost.empty() && contains(static_cast<Pos>(leftmost.size()), sequence_length);
  }

  std::vector<MatchPair> pairs() const {
    std::vector<MatchPair> out;
    for (std::size_t i = 0; i < leftmost.size(); ++i) {
      if (leftmost[i] == 0) continue;
      for (Pos j = leftmost[i]; j <= sequence_length; ++j) out.emplace_back(static_cast<Pos>(i + 1), j);
    }
    return out;
  }
};

inline FillGapsFrontier fill_gaps_frontier(const Sequence& s, const Pattern& p) {
  FillGapsFrontier f;
  f.sequence_length = static_cast<Pos>(s.size());
  f.leftmost.assign(p.size(), 0);
  Pos j = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++j;
    while (j <= s.size() && !is_subitemset(p.elements[i], s.at(j))) ++j;
    if (j > s.size()) break;
    f.leftmost[i] = j;
  }
  return f;
}

/// Mirror of the fill-gaps frontier scanned from the end of the sequence:
/// rightmost[i-1] is the largest j such that the pattern suffix starting at
/// element i embeds in the sequence suffix starting at j (0 = none).
inline std::vector<Pos> reverse_frontier(const Sequence& s, const Pattern& p) {
  std::vector<Pos> rightmost(p.size(), 0);
  Pos j = static_cast<Pos>(s.size()) + 1;
  for (std::size_t k = p.size(); k-- > 0;) {
    --j;
    while (j >= 1 && !is_subitemset(p.elements[k], s.at(j))) --j;
    if (j == 0) break;
    rightmost[k] = j;
  }
  return rightmost;
}

/// Sequence-level support decision through either embedding relation.
inline bool supports_via(Strategy strategy, const Sequence& s, const Pattern& p) {
  if (p.empty()) return true;
  switch (strategy) {
    case Strategy::skip_gaps: return skip_gaps_embedding(s, p).complete();
    case Strategy::fill_gaps: return fill_gaps_frontier(s, p).complete();
  }
  throw UsageError("unknown strategy");
}

}  // namespace seqmine
