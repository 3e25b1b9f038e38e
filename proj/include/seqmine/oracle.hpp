#pragma once

// Exhaustive reference implementation for tiny inputs. Shares only the
// data types with the miner: candidates are every distinct subsequence of
// every database sequence, support is decided by explicit enumeration of
// position mappings, and condensation is a pairwise comparison.

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "seqmine/constraints.hpp"
#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine::oracle {

struct OracleConfig {
  std::size_t max_pattern_len = 16;
  std::size_t max_alphabet = 64;
  std::size_t max_db_size = 200;
  std::size_t max_sequence_length = 16;
  std::size_t max_candidates = 2'000'000;
};

/// Raised when an input is too large for exhaustive enumeration.
class OracleLimit : public UsageError {
 public:
  using UsageError::UsageError;
};

namespace detail {

inline bool subset_of(const Itemset& a, const Itemset& b) {
  for (ItemId x : a) {
    bool found = false;
    for (ItemId y : b) found = found || x == y;
    if (!found) return false;
  }
  return true;
}

/// Every strictly increasing mapping of pattern positions onto sequence
/// positions with element-wise inclusion.
inline void enumerate_mappings(const Sequence& s, const Pattern& p, std::size_t i, Pos from,
                               std::vector<Pos>& current, std::vector<std::vector<Pos>>& out,
                               std::size_t limit) {
  if (i == p.size()) {
    out.push_back(current);
    if (out.size() > limit) throw OracleLimit("oracle: too many embeddings");
    return;
  }
  for (Pos j = from; j <= s.size(); ++j) {
    if (!subset_of(p.elements[i], s.elements[j - 1])) continue;
    current.push_back(j);
    enumerate_mappings(s, p, i + 1, j + 1, current, out, limit);
    current.pop_back();
  }
}

inline bool embeds(const Pattern& p, const std::vector<Itemset>& s, std::size_t i, std::size_t from) {
  if (i == p.size()) return true;
  for (std::size_t j = from; j < s.size(); ++j) {
    if (subset_of(p.elements[i], s[j]) && embeds(p, s, i + 1, j + 1)) return true;
  }
  return false;
}

/// Non-empty subsets of an itemset (all of them, or singletons only).
inline std::vector<Itemset> sub_itemsets(const Itemset& e, bool itemsets) {
  std::vector<Itemset> out;
  if (!itemsets) {
    for (ItemId x : e) out.push_back({x});
    return out;
  }
  if (e.size() > 16) throw OracleLimit("oracle: itemset too large");
  for (std::uint32_t mask = 1; mask < (1u << e.size()); ++mask) {
    Itemset sub;
    for (std::size_t b = 0; b < e.size(); ++b)
      if (mask & (1u << b)) sub.push_back(e[b]);
    out.push_back(sub);
  }
  return out;
}

inline void collect_subsequences(const Sequence& s, std::size_t from, std::size_t maxlen, bool itemsets,
                                 std::vector<Itemset>& current, std::set<Pattern>& out, std::size_t limit) {
  if (!current.empty()) {
    out.insert(Pattern(current));
    if (out.size() > limit) throw OracleLimit("oracle: too many candidate patterns");
  }
  if (current.size() == maxlen) return;
  for (std::size_t j = from; j < s.size(); ++j) {
    for (const auto& sub : sub_itemsets(s.elements[j], itemsets)) {
      current.push_back(sub);
      collect_subsequences(s, j + 1, maxlen, itemsets, current, out, limit);
      current.pop_back();
    }
  }
}

inline void guard(const SequenceDatabase& db, const OracleConfig& cfg) {
  if (db.size() > cfg.max_db_size) throw OracleLimit("oracle: database has too many sequences");
  if (db.alphabet.size() > cfg.max_alphabet) throw OracleLimit("oracle: alphabet too large");
  for (const auto& s : db.sequences)
    if (s.size() > cfg.max_sequence_length) throw OracleLimit("oracle: sequence too long");
}

}  // namespace detail

/// P ⪯ S by backtracking.
inline bool contains(const std::vector<Itemset>& s, const Pattern& p) { return detail::embeds(p, s, 0, 0); }

/// All complete embeddings of `p` into `s`, as 1-based position lists.
inline std::vector<std::vector<Pos>> oracle_embeddings(const Sequence& s, const Pattern& p,
                                                       const OracleConfig& cfg = {}) {
  if (s.size() > cfg.max_sequence_length) throw OracleLimit("oracle: sequence too long");
  std::vector<std::vector<Pos>> out;
  std::vector<Pos> current;
  if (p.empty()) return out;
  detail::enumerate_mappings(s, p, 0, 1, current, out, cfg.max_candidates);
  return out;
}

/// Pairs (i, j) such that the prefix P[1..i] has an embedding ending at j.
inline std::set<std::pair<Pos, Pos>> oracle_prefix_pairs(const Sequence& s, const Pattern& p,
                                                         const OracleConfig& cfg = {}) {
  std::set<std::pair<Pos, Pos>> out;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    Pattern prefix(std::vector<Itemset>(p.elements.begin(), p.elements.begin() + static_cast<long>(i)));
    for (const auto& m : oracle_embeddings(s, prefix, cfg)) out.insert({static_cast<Pos>(i), m.back()});
  }
  return out;
}

/// Pairs (i, j) such that P[1..i] embeds in the prefix S[1..j].
inline std::set<std::pair<Pos, Pos>> oracle_fill_pairs(const Sequence& s, const Pattern& p,
                                                       const OracleConfig& cfg = {}) {
  std::set<std::pair<Pos, Pos>> out;
  for (const auto& [i, j] : oracle_prefix_pairs(s, p, cfg))
    for (Pos q = j; q <= s.size(); ++q) out.insert({i, q});
  return out;
}

/// Candidate patterns with their supporting sids.
inline std::map<Pattern, std::vector<std::uint32_t>> oracle_candidates(const SequenceDatabase& db,
                                                                       std::size_t maxlen, bool itemsets,
                                                                       const OracleConfig& cfg = {}) {
  detail::guard(db, cfg);
  maxlen = std::min(maxlen, db.max_length());
  if (maxlen > cfg.max_pattern_len) throw OracleLimit("oracle: pattern length bound too large");
  std::map<Pattern, std::vector<std::uint32_t>> support;
  for (const auto& s : db.sequences) {
    std::set<Pattern> subs;
    std::vector<Itemset> current;
    detail::collect_subsequences(s, 0, maxlen, itemsets, current, subs, cfg.max_candidates);
    for (const auto& p : subs) support[p];
  }
  for (auto& [p, ids] : support) {
    for (const auto& s : db.sequences)
      if (contains(s.elements, p)) ids.push_back(s.sid);
  }
  return support;
}

inline std::size_t resolve_fmin(const SequenceDatabase& db, const Threshold& fmin) {
  if (fmin.is_fraction() && db.empty()) throw UsageError("oracle: fraction threshold on empty database");
  return db.empty() ? fmin.resolve(1) : fmin.resolve(db.size());
}

inline MiningResult oracle_frequent(const SequenceDatabase& db, const MiningParams& params,
                                    const OracleConfig& cfg = {}) {
  if (params.maxlen < 1) throw UsageError("maxlen must be at least 1");
  const std::size_t fmin = resolve_fmin(db, params.fmin);
  MiningResult r;
  r.params = params;
  for (auto& [p, ids] : oracle_candidates(db, params.maxlen, params.itemset_mode, cfg)) {
    if (ids.size() < fmin || p.size() < params.minlen) continue;
    r.entries.push_back({p, ids.size(), ids});
  }
  r.canonicalize();
  r.stats.pattern_count = r.entries.size();
  return r;
}

/// Pairwise condensation: P ≺ Q (≺_b for the backward kinds), proper.
inline bool strictly_below(const Pattern& p, const Pattern& q, bool backward) {
  if (p == q) return false;
  if (!backward) return contains(q.elements, p);
  if (p.size() > q.size()) return false;
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (p.elements[k] != q.elements[k]) return false;
  return detail::subset_of(p.elements.back(), q.elements[p.size() - 1]);
}

/// Keeps the members of `frequent` not dominated within `frequent`.
inline std::vector<ResultEntry> oracle_condense(const std::vector<ResultEntry>& frequent, Mode mode) {
  const bool backward = mode == Mode::backward_closed || mode == Mode::backward_maximal;
  const bool closure = mode == Mode::closed || mode == Mode::backward_closed;
  std::vector<ResultEntry> out;
  for (const auto& p : frequent) {
    bool dominated = false;
    for (const auto& q : frequent) {
      if (closure && q.support != p.support) continue;
      if (strictly_below(p.pattern, q.pattern, backward)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

inline MiningResult oracle_condensed(const MiningResult& frequent, Mode mode) {
  MiningResult r;
  r.params = frequent.params;
  r.params.mode = mode;
  r.entries = mode == Mode::frequent ? frequent.entries : oracle_condense(frequent.entries, mode);
  r.canonicalize();
  r.stats.pattern_count = r.entries.size();
  return r;
}

/// Condensed patterns of length ≤ params.maxlen. Domination is evaluated
/// against every frequent pattern regardless of length.
inline MiningResult oracle_condensed(const SequenceDatabase& db, const MiningParams& params,
                                     const OracleConfig& cfg = {}) {
  MiningParams full = params;
  full.maxlen = std::max<std::size_t>(1, db.max_length());
  full.minlen = 1;
  auto all = oracle_frequent(db, full, cfg);
  if (params.mode == Mode::frequent) {
    all.entries.erase(std::remove_if(all.entries.begin(), all.entries.end(),
                                     [&](const ResultEntry& e) {
                                       return e.pattern.size() > params.maxlen || e.pattern.size() < params.minlen;
                                     }),
                      all.entries.end());
    all.params = params;
    return all;
  }
  MiningResult r;
  r.params = params;
  for (auto& e : oracle_condense(all.entries, params.mode)) {
    if (e.pattern.size() <= params.maxlen && e.pattern.size() >= params.minlen) r.entries.push_back(e);
  }
  r.canonicalize();
  r.stats.pattern_count = r.entries.size();
  return r;
}

/// Constraint description for the oracle. The regular expression is an
/// ECMAScript pattern over the concatenated single-character labels.
struct OracleConstraints {
  std::vector<ItemId> must_have;
  bool must_have_all = true;
  std::vector<ItemId> cannot_have;
  std::vector<Pattern> super_patterns;
  bool super_patterns_all = false;
  bool has_aggregate = false;
  CostTable costs;
  AggregateOp op = AggregateOp::sum;
  Comparator cmp = Comparator::ge;
  long long threshold = 0;
  std::string regex;
  std::size_t mingap = 0;
  std::size_t maxgap = unbounded;
  std::size_t minspan = 0;
  std::size_t maxspan = unbounded;
};

namespace detail {

inline bool holds(long long a, Comparator c, long long b) {
  if (c == Comparator::lt) return a < b;
  if (c == Comparator::le) return a <= b;
  if (c == Comparator::gt) return a > b;
  if (c == Comparator::ge) return a >= b;
  if (c == Comparator::eq) return a == b;
  return a != b;
}

inline bool pattern_accepted(const Pattern& p, const OracleConstraints& c, const Alphabet& alphabet) {
  std::set<ItemId> items;
  std::vector<ItemId> flat;
  for (const auto& e : p.elements)
    for (ItemId x : e) {
      items.insert(x);
      flat.push_back(x);
    }
  for (ItemId x : c.cannot_have)
    if (items.count(x)) return false;
  if (!c.must_have.empty()) {
    std::size_t hit = 0;
    for (ItemId x : c.must_have) hit += items.count(x);
    if (c.must_have_all ? hit != c.must_have.size() : hit == 0) return false;
  }
  if (!c.super_patterns.empty()) {
    std::size_t hit = 0;
    for (const auto& sp : c.super_patterns) hit += contains(p.elements, sp) ? 1 : 0;
    if (c.super_patterns_all ? hit != c.super_patterns.size() : hit == 0) return false;
  }
  if (c.has_aggregate) {
    std::vector<long long> values;
    for (ItemId x : flat) {
      if (x >= c.costs.size() || !c.costs[x]) throw UsageError("oracle: missing cost");
      values.push_back(*c.costs[x]);
    }
    long long sum = 0;
    for (long long v : values) sum += v;
    long long value = 0;
    long long rhs = c.threshold;
    switch (c.op) {
      case AggregateOp::sum: value = sum; break;
      case AggregateOp::min: value = *std::min_element(values.begin(), values.end()); break;
      case AggregateOp::max: value = *std::max_element(values.begin(), values.end()); break;
      case AggregateOp::avg:
        value = sum;
        rhs = c.threshold * static_cast<long long>(values.size());
        break;
    }
    if (!holds(value, c.cmp, rhs)) return false;
  }
  if (!c.regex.empty()) {
    std::string text;
    for (ItemId x : flat) text += alphabet.label(x);
    if (!std::regex_match(text, std::regex(c.regex))) return false;
  }
  return true;
}

inline bool mapping_ok(const std::vector<Pos>& m, const OracleConstraints& c) {
  for (std::size_t i = 1; i < m.size(); ++i) {
    const std::size_t gap = m[i] - m[i - 1] - 1;
    if (gap < c.mingap || gap > c.maxgap) return false;
  }
  const std::size_t span = m.back() - m.front() + 1;
  return span >= c.minspan && span <= c.maxspan;
}

}  // namespace detail

/// Definitional constrained mining: a sequence supports P iff some complete
/// embedding satisfies every gap and span bound.
inline MiningResult oracle_constrained(const SequenceDatabase& db, const MiningParams& params,
                                       const OracleConstraints& c, const OracleConfig& cfg = {}) {
  if (params.maxlen < 1) throw UsageError("maxlen must be at least 1");
  const std::size_t fmin = resolve_fmin(db, params.fmin);
  MiningResult r;
  r.params = params;
  for (auto& [p, plain] : oracle_candidates(db, params.maxlen, params.itemset_mode, cfg)) {
    if (plain.size() < fmin || p.size() < params.minlen) continue;
    if (!detail::pattern_accepted(p, c, db.alphabet)) continue;
    std::vector<std::uint32_t> ids;
    for (std::uint32_t sid : plain) {
      for (const auto& m : oracle_embeddings(db.sequences[sid - 1], p, cfg)) {
        if (detail::mapping_ok(m, c)) {
          ids.push_back(sid);
          break;
        }
      }
    }
    if (ids.size() >= fmin) r.entries.push_back({p, ids.size(), ids});
  }
  r.canonicalize();
  r.stats.pattern_count = r.entries.size();
  return r;
}

}  // namespace seqmine::oracle
