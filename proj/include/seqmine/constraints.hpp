#pragma once

// Pattern and embedding constraints. Each constraint exposes a viability
// test (may the current prefix still be extended into an accepted pattern?)
// used for pruning and an acceptance test applied when a pattern is emitted.

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqmine/regex.hpp"
#include "seqmine/relations.hpp"
#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

enum class AggregateOp { sum, min, max, avg };
enum class Comparator { lt, le, gt, ge, eq, ne };

inline AggregateOp parse_aggregate_op(const std::string& text) {
  if (text == "sum") return AggregateOp::sum;
  if (text == "min") return AggregateOp::min;
  if (text == "max") return AggregateOp::max;
  if (text == "avg") return AggregateOp::avg;
  throw UsageError("unknown aggregate '" + text + "' (expected sum|min|max|avg)");
}

inline Comparator parse_comparator(const std::string& text) {
  if (text == "<" || text == "lt") return Comparator::lt;
  if (text == "<=" || text == "le") return Comparator::le;
  if (text == ">" || text == "gt") return Comparator::gt;
  if (text == ">=" || text == "ge") return Comparator::ge;
  if (text == "==" || text == "=" || text == "eq") return Comparator::eq;
  if (text == "!=" || text == "ne") return Comparator::ne;
  throw UsageError("unknown comparator '" + text + "'");
}

inline bool compare(long long lhs, Comparator cmp, long long rhs) {
  switch (cmp) {
    case Comparator::lt: return lhs < rhs;
    case Comparator::le: return lhs <= rhs;
    case Comparator::gt: return lhs > rhs;
    case Comparator::ge: return lhs >= rhs;
    case Comparator::eq: return lhs == rhs;
    case Comparator::ne: return lhs != rhs;
  }
  return false;
}

/// Item cost table indexed by item id.
using CostTable = std::vector<std::optional<long long>>;

/// Reads `label<TAB>integer` lines. Labels outside the alphabet are skipped.
inline CostTable read_cost_table(std::istream& in, const Alphabet& alphabet) {
  CostTable costs(alphabet.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto tab = line.find('\t');
    long long value = 0;
    if (tab == std::string::npos || !detail::parse_integer(line.substr(tab + 1), value)) {
      throw DataError("cost table line " + std::to_string(line_no) + ": expected label<TAB>integer");
    }
    const long long id = alphabet.find(line.substr(0, tab));
    if (id >= 0) costs[static_cast<std::size_t>(id)] = value;
  }
  return costs;
}

struct AggregateConstraint {
  CostTable costs;
  AggregateOp op = AggregateOp::sum;
  Comparator cmp = Comparator::ge;
  long long threshold = 0;

  long long cost(ItemId item) const {
    if (item >= costs.size() || !costs[item]) {
      throw UsageError("aggregate constraint: missing cost for item id " + std::to_string(item));
    }
    return *costs[item];
  }

  /// sum with an upper bound over non-negative costs: once violated, every
  /// extension violates it too.
  bool anti_monotone() const {
    if (op != AggregateOp::sum || (cmp != Comparator::le && cmp != Comparator::lt)) return false;
    return std::all_of(costs.begin(), costs.end(),
                       [](const std::optional<long long>& c) { return !c || *c >= 0; });
  }
};

/// Folds item costs with multiplicity; `avg` is compared as sum vs
/// threshold × item count so no rounding is involved.
inline bool aggregate_constraint(const Pattern& p, const AggregateConstraint& agg) {
  long long sum = 0;
  long long lo = 0;
  long long hi = 0;
  long long n = 0;
  for (const auto& e : p.elements) {
    for (ItemId i : e) {
      const long long c = agg.cost(i);
      sum += c;
      lo = n == 0 ? c : std::min(lo, c);
      hi = n == 0 ? c : std::max(hi, c);
      ++n;
    }
  }
  if (n == 0) return false;
  switch (agg.op) {
    case AggregateOp::sum: return compare(sum, agg.cmp, agg.threshold);
    case AggregateOp::min: return compare(lo, agg.cmp, agg.threshold);
    case AggregateOp::max: return compare(hi, agg.cmp, agg.threshold);
    case AggregateOp::avg: return compare(sum, agg.cmp, agg.threshold * n);
  }
  return false;
}

/// Gap and span bounds on embeddings. Gap = positions strictly between two
/// consecutive mapped elements; span = last - first + 1.
struct EmbeddingBounds {
  std::size_t mingap = 0;
  std::size_t maxgap = unbounded;
  std::size_t minspan = 0;
  std::size_t maxspan = unbounded;

  bool active() const noexcept {
    return mingap != 0 || maxgap != unbounded || minspan != 0 || maxspan != unbounded;
  }
  bool gap_ok(Pos from, Pos to) const noexcept {
    const std::size_t gap = static_cast<std::size_t>(to - from - 1);
    return gap >= mingap && gap <= maxgap;
  }
  bool span_within_max(Pos first, Pos last) const noexcept {
    return static_cast<std::size_t>(last - first + 1) <= maxspan;
  }
  bool span_within_min(Pos first, Pos last) const noexcept {
    return static_cast<std::size_t>(last - first + 1) >= minspan;
  }
};

struct Verdict {
  bool viable = true;
  bool accepted = true;
};

/// Conjunction of the seven constraint families (length lives in
/// MiningParams).
struct ConstraintSet {
  std::vector<ItemId> must_have;
  /// Require every must_have item (default) or at least one of them.
  bool must_have_all = true;
  std::vector<ItemId> cannot_have;

  std::vector<Pattern> super_patterns;
  /// Require every declared sub-pattern instead of at least one.
  bool super_patterns_all = false;

  std::optional<AggregateConstraint> aggregate;
  std::optional<RegexDfa> regex;
  EmbeddingBounds embedding;

  bool neutral() const {
    return must_have.empty() && cannot_have.empty() && super_patterns.empty() && !aggregate &&
           !regex && !embedding.active();
  }

  void validate() const {
    std::vector<ItemId> a = must_have;
    std::vector<ItemId> b = cannot_have;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<ItemId> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (!both.empty()) throw UsageError("an item cannot be both required and forbidden");
    if (embedding.mingap > embedding.maxgap) throw UsageError("min-gap exceeds max-gap");
    if (embedding.minspan > embedding.maxspan) throw UsageError("min-span exceeds max-span");
    for (const auto& sp : super_patterns) {
      if (sp.empty()) throw UsageError("super-pattern constraint: empty sub-pattern");
    }
  }
};

inline bool pattern_has_item(const Pattern& p, ItemId item) {
  return std::any_of(p.elements.begin(), p.elements.end(),
                     [&](const Itemset& e) { return contains_item(e, item); });
}

/// Forbidden items fail viability (the branch is pruned); required items
/// are checked for acceptance only.
inline Verdict item_constraint(const Pattern& p, const std::vector<ItemId>& must_have,
                               const std::vector<ItemId>& cannot_have, bool must_have_all = true) {
  Verdict v;
  for (ItemId i : cannot_have) {
    if (pattern_has_item(p, i)) return {false, false};
  }
  if (!must_have.empty()) {
    std::size_t present = 0;
    for (ItemId i : must_have) present += pattern_has_item(p, i) ? 1 : 0;
    v.accepted = must_have_all ? present == must_have.size() : present > 0;
  }
  return v;
}

/// Max length is anti-monotone (prunes); min length is checked on emission.
inline Verdict length_constraint(std::size_t length, std::size_t minlen, std::size_t maxlen) {
  if (maxlen < 1) throw UsageError("maxlen must be at least 1");
  if (minlen > maxlen) throw UsageError("minlen exceeds maxlen");
  const bool viable = length <= maxlen;
  return {viable, viable && length >= minlen};
}

/// Accept iff at least one (or, with `all`, every) declared sub-pattern is a
/// subsequence of `p`.
inline bool superpattern_constraint(const Pattern& p, const std::vector<Pattern>& subs, bool all = false) {
  if (subs.empty()) return true;
  std::size_t hits = 0;
  for (const auto& sp : subs) hits += is_subsequence(sp, p) ? 1 : 0;
  return all ? hits == subs.size() : hits > 0;
}

using Chain = std::pair<Pos, Pos>;  // (sequence position, position of first element)

/// Skip-gaps relation extended with the position of the first mapped element.
struct ChainEmbedding {
  /// rows[i-1]: sorted distinct chains admitted for pattern position i.
  std::vector<std::vector<Chain>> rows;
  /// Some complete chain also satisfies the minimum span.
  bool supported = false;

  bool contains(Pos i, Pos j, Pos first) const {
    if (i == 0 || i > rows.size()) return false;
    return std::binary_search(rows[i - 1].begin(), rows[i - 1].end(), Chain{j, first});
  }
};

/// Chains are admitted position by position: gaps must lie in
/// [mingap, maxgap] and the running span may not exceed maxspan; minspan is
/// only required of complete chains since it is not prefix-monotone. The
/// strategy argument is accepted for interface symmetry; spans need the
/// per-chain first position only the skip-gaps representation carries.
inline ChainEmbedding constrained_embeddings(const Sequence& s, const Pattern& p, const EmbeddingBounds& b,
                                             Strategy /*strategy*/ = Strategy::skip_gaps) {
  ChainEmbedding emb;
  emb.rows.resize(p.size());
  if (p.empty()) return emb;
  for (Pos j = 1; j <= s.size(); ++j) {
    if (is_subitemset(p.elements[0], s.at(j)) && b.span_within_max(j, j)) emb.rows[0].push_back({j, j});
  }
  for (std::size_t i = 1; i < p.size(); ++i) {
    auto& row = emb.rows[i];
    for (const auto& [prev, first] : emb.rows[i - 1]) {
      for (Pos j = prev + 1; j <= s.size(); ++j) {
        if (!b.gap_ok(prev, j)) {
          if (static_cast<std::size_t>(j - prev - 1) > b.maxgap) break;
          continue;
        }
        if (!b.span_within_max(first, j)) break;
        if (is_subitemset(p.elements[i], s.at(j))) row.push_back({j, first});
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (row.empty()) break;
  }
  for (const auto& [j, first] : emb.rows.back()) {
    if (b.span_within_min(first, j)) emb.supported = true;
  }
  return emb;
}

/// Support under embedding constraints.
inline SupportSet constrained_support(const SequenceDatabase& db, const Pattern& p, const EmbeddingBounds& b) {
  SupportSet out;
  for (const auto& s : db.sequences) {
    if (constrained_embeddings(s, p, b).supported) out.ids.push_back(s.sid);
  }
  out.count = out.ids.size();
  return out;
}

/// Acceptance of a complete pattern against every pattern-level constraint
/// (embedding constraints are handled by the support computation).
inline bool accepts_pattern(const ConstraintSet& cs, const Pattern& p) {
  if (!item_constraint(p, cs.must_have, cs.cannot_have, cs.must_have_all).accepted) return false;
  if (!superpattern_constraint(p, cs.super_patterns, cs.super_patterns_all)) return false;
  if (cs.aggregate && !aggregate_constraint(p, *cs.aggregate)) return false;
  if (cs.regex && !regex_check(p, *cs.regex).accepted) return false;
  return true;
}

}  // namespace seqmine
