#pragma once

// Closed / maximal filtering (and their backward, prefix-extension-only
// variants) computed from insertable regions: a pattern is not maximal when
// some single-item insertion is frequent among its supporters, and not
// closed when some insertion is possible in every supporter.

#include <algorithm>
#include <optional>
#include <vector>

#include "seqmine/relations.hpp"
#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

enum class CondensedKind { closed, maximal, backward_closed, backward_maximal };

inline std::optional<CondensedKind> condensed_kind(Mode mode) {
  switch (mode) {
    case Mode::closed: return CondensedKind::closed;
    case Mode::maximal: return CondensedKind::maximal;
    case Mode::backward_closed: return CondensedKind::backward_closed;
    case Mode::backward_maximal: return CondensedKind::backward_maximal;
    case Mode::frequent: break;
  }
  return std::nullopt;
}

inline bool is_backward(CondensedKind k) {
  return k == CondensedKind::backward_closed || k == CondensedKind::backward_maximal;
}
inline bool is_closure(CondensedKind k) {
  return k == CondensedKind::closed || k == CondensedKind::backward_closed;
}

/// Per pattern position, the smallest and largest sequence position taken
/// by any embedding.
struct OccurrenceBounds {
  std::vector<Pos> leftmost;
  std::vector<Pos> rightmost;
};

/// From ℰ (skip-gaps): leftmost = first admissible match of each row,
/// rightmost = last match of row l, then the last match of row i before
/// rightmost[i+1]. From ℰ′ (fill-gaps): its frontier gives leftmost and the
/// mirrored frontier gives rightmost.
inline std::optional<OccurrenceBounds> occurrence_bounds(const Sequence& s, const Pattern& p, Strategy strategy) {
  if (p.empty()) return std::nullopt;
  OccurrenceBounds b;
  if (strategy == Strategy::skip_gaps) {
    const auto emb = skip_gaps_embedding(s, p);
    if (!emb.complete()) return std::nullopt;
    const std::size_t l = p.size();
    b.leftmost.resize(l);
    b.rightmost.resize(l);
    for (std::size_t i = 0; i < l; ++i) b.leftmost[i] = emb.positions[i].front();
    b.rightmost[l - 1] = emb.positions[l - 1].back();
    for (std::size_t i = l - 1; i-- > 0;) {
      const auto& row = emb.positions[i];
      auto it = std::lower_bound(row.begin(), row.end(), b.rightmost[i + 1]);
      b.rightmost[i] = *std::prev(it);
    }
    return b;
  }
  const auto frontier = fill_gaps_frontier(s, p);
  if (!frontier.complete()) return std::nullopt;
  b.leftmost = frontier.leftmost;
  b.rightmost = reverse_frontier(s, p);
  return b;
}

/// Insertable regions R_i (i = 1..l+1) of a supporting sequence: positions
/// strictly between leftmost[i-1] (0 for i = 1) and rightmost[i] (n+1 for
/// i = l+1). `within[i-1]` lists items that can join element i itself; it
/// is only filled when itemset extensions are requested.
struct InsertableRegions {
  std::vector<std::pair<Pos, Pos>> bounds;  // exclusive (l_i, u_i)
  std::vector<Itemset> between;
  std::vector<Itemset> within;
};

namespace detail {

inline void sort_unique(Itemset& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

}  // namespace detail

inline InsertableRegions regions_from_bounds(const Sequence& s, const Pattern& p, const OccurrenceBounds& ob,
                                             bool itemset_extensions) {
  const std::size_t l = p.size();
  const Pos n = static_cast<Pos>(s.size());
  InsertableRegions r;
  r.bounds.resize(l + 1);
  r.between.resize(l + 1);
  for (std::size_t i = 0; i <= l; ++i) {
    const Pos lo = i == 0 ? 0 : ob.leftmost[i - 1];
    const Pos hi = i == l ? n + 1 : ob.rightmost[i];
    r.bounds[i] = {lo, hi};
    for (Pos q = lo + 1; q < hi; ++q) {
      const auto& e = s.at(q);
      r.between[i].insert(r.between[i].end(), e.begin(), e.end());
    }
    detail::sort_unique(r.between[i]);
  }
  r.within.resize(l);
  if (itemset_extensions) {
    for (std::size_t i = 0; i < l; ++i) {
      const Pos lo = i == 0 ? 0 : ob.leftmost[i - 1];
      const Pos hi = i + 1 == l ? n + 1 : ob.rightmost[i + 1];
      for (Pos q = lo + 1; q < hi; ++q) {
        const auto& e = s.at(q);
        if (!is_subitemset(p.elements[i], e)) continue;
        std::set_difference(e.begin(), e.end(), p.elements[i].begin(), p.elements[i].end(),
                            std::back_inserter(r.within[i]));
      }
      detail::sort_unique(r.within[i]);
    }
  }
  return r;
}

/// Throws UsageError when `p` is not a subsequence of `s`.
inline InsertableRegions insertable_regions(const Sequence& s, const Pattern& p, Strategy strategy,
                                            bool itemset_extensions = false) {
  const auto ob = occurrence_bounds(s, p, strategy);
  if (!ob) throw UsageError("insertable_regions: pattern is not supported by the sequence");
  return regions_from_bounds(s, p, *ob, itemset_extensions);
}

/// Reusable counter over (insertion slot, item) pairs. Slots 0..l are
/// new-element insertions before element 1..after element l; slots l+1..2l
/// add an item to an existing element (itemset patterns only).
class CondensedChecker {
 public:
  CondensedChecker(const SequenceDatabase& db, Strategy strategy, bool itemset_mode)
      : db_(db), strategy_(strategy), itemset_mode_(itemset_mode), k_(db.alphabet.size()) {}

  bool holds(const Pattern& p, const std::vector<std::uint32_t>& support_ids, std::size_t fmin,
             CondensedKind kind) {
    if (p.empty() || support_ids.empty()) return false;
    const std::size_t l = p.size();
    const std::size_t slots = 2 * l + 1;
    if (counts_.size() < slots * k_) {
      counts_.resize(slots * k_, 0);
      seen_.resize(slots * k_, 0);
    }
    const bool backward = is_backward(kind);
    bool result = true;
    for (std::uint32_t sid : support_ids) {
      const Sequence& s = db_.sequences.at(sid - 1);
      const auto ob = occurrence_bounds(s, p, strategy_);
      if (!ob) throw UsageError("condensed check: support id does not support the pattern");
      ++stamp_;
      const Pos n = static_cast<Pos>(s.size());
      // new-element insertions
      for (std::size_t i = backward ? l : 0; i <= l; ++i) {
        const Pos lo = i == 0 ? 0 : ob->leftmost[i - 1];
        const Pos hi = i == l ? n + 1 : ob->rightmost[i];
        for (Pos q = lo + 1; q < hi; ++q) {
          for (ItemId item : s.at(q)) bump(i * k_ + item);
        }
      }
      if (itemset_mode_) {
        for (std::size_t i = backward ? l - 1 : 0; i < l; ++i) {
          const Pos lo = i == 0 ? 0 : ob->leftmost[i - 1];
          const Pos hi = i + 1 == l ? n + 1 : ob->rightmost[i + 1];
          const Itemset& element = p.elements[i];
          for (Pos q = lo + 1; q < hi; ++q) {
            const auto& e = s.at(q);
            if (!is_subitemset(element, e)) continue;
            for (ItemId item : e) {
              if (!contains_item(element, item)) bump((l + 1 + i) * k_ + item);
            }
          }
        }
      }
    }
    const std::size_t needed = is_closure(kind) ? support_ids.size() : fmin;
    for (std::size_t key : touched_) {
      if (counts_[key] >= needed) result = false;
      counts_[key] = 0;
    }
    touched_.clear();
    return result;
  }

 private:
  void bump(std::size_t key) {
    if (seen_[key] == stamp_) return;
    seen_[key] = stamp_;
    if (counts_[key]++ == 0) touched_.push_back(key);
  }

  const SequenceDatabase& db_;
  Strategy strategy_;
  bool itemset_mode_;
  std::size_t k_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t stamp_ = 0;
  std::vector<std::size_t> touched_;
};

inline bool is_maximal(const SequenceDatabase& db, const Pattern& p, std::size_t fmin,
                       const std::vector<std::uint32_t>& support_ids, Strategy strategy = Strategy::fill_gaps,
                       bool itemset_mode = false) {
  return CondensedChecker(db, strategy, itemset_mode).holds(p, support_ids, fmin, CondensedKind::maximal);
}

inline bool is_closed(const SequenceDatabase& db, const Pattern& p, std::size_t fmin,
                      const std::vector<std::uint32_t>& support_ids, Strategy strategy = Strategy::fill_gaps,
                      bool itemset_mode = false) {
  return CondensedChecker(db, strategy, itemset_mode).holds(p, support_ids, fmin, CondensedKind::closed);
}

/// Backward variants: only extensions after the last element (and, for
/// itemset patterns, growth of the last element) are considered.
inline bool backward_filter(const SequenceDatabase& db, const Pattern& p, std::size_t fmin,
                            const std::vector<std::uint32_t>& support_ids, CondensedKind kind,
                            Strategy strategy = Strategy::fill_gaps, bool itemset_mode = false) {
  if (kind == CondensedKind::closed) kind = CondensedKind::backward_closed;
  if (kind == CondensedKind::maximal) kind = CondensedKind::backward_maximal;
  return CondensedChecker(db, strategy, itemset_mode).holds(p, support_ids, fmin, kind);
}

/// Condensation restricted to an already materialized (e.g. constrained)
/// result set: P is dropped when another entry Q with P ≺ Q (≺_b for the
/// backward kinds) exists, with equal support for the closure kinds.
inline std::vector<ResultEntry> strict_condensed_filter(const std::vector<ResultEntry>& entries,
                                                        CondensedKind kind) {
  std::vector<std::size_t> items(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) items[i] = entries[i].pattern.item_count();

  std::vector<ResultEntry> kept;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& p = entries[i];
    bool dominated = false;
    for (std::size_t j = 0; j < entries.size() && !dominated; ++j) {
      if (items[j] <= items[i]) continue;
      const auto& q = entries[j];
      if (is_closure(kind) && q.support != p.support) continue;
      dominated = is_backward(kind) ? is_prefix(p.pattern, q.pattern) : is_subsequence(p.pattern, q.pattern);
    }
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

}  // namespace seqmine
