#pragma once

// Depth-first prefix-projected search. Each node keeps, per supporting
// sequence, the embedding state its strategy needs:
//   fill-gaps  : (leftmost end of the prefix minus its last element, leftmost end)
//   skip-gaps  : every admissible end position of the last element
//   chains     : (end position, first position) pairs, used whenever gap or
//                span bounds are active
// Children are built in two passes over the projected entries: count the
// extension items, then materialize the frames of the frequent ones.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <thread>
#include <vector>

#include "seqmine/condensed.hpp"
#include "seqmine/constraints.hpp"
#include "seqmine/relations.hpp"
#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

/// Document frequency filter.
inline std::vector<ItemId> frequent_items(const SequenceDatabase& db, std::size_t fmin) {
  std::vector<std::size_t> freq(db.alphabet.size(), 0);
  std::vector<std::uint32_t> seen(db.alphabet.size(), 0);
  for (const auto& s : db.sequences) {
    for (const auto& e : s.elements) {
      for (ItemId i : e) {
        if (seen[i] == s.sid) continue;
        seen[i] = s.sid;
        ++freq[i];
      }
    }
  }
  std::vector<ItemId> out;
  for (ItemId i = 0; i < freq.size(); ++i)
    if (freq[i] >= fmin && freq[i] > 0) out.push_back(i);
  return out;
}

/// Pseudo-projected database: suffix of sequence `sid` from position `start`.
struct ProjectedView {
  struct Entry {
    std::uint32_t sid = 0;
    Pos start = 1;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

inline ProjectedView root_view(const SequenceDatabase& db) {
  ProjectedView v;
  v.entries.reserve(db.size());
  for (const auto& s : db.sequences) v.entries.push_back({s.sid, 1});
  return v;
}

inline ProjectedView project(const ProjectedView& view, const SequenceDatabase& db, const Itemset& extension) {
  ProjectedView out;
  for (const auto& e : view.entries) {
    const Sequence& s = db.sequences.at(e.sid - 1);
    for (Pos j = e.start; j <= s.size(); ++j) {
      if (is_subitemset(extension, s.at(j))) {
        out.entries.push_back({e.sid, j + 1});
        break;
      }
    }
  }
  return out;
}

inline ProjectedView project(const ProjectedView& view, const SequenceDatabase& db, ItemId item) {
  return project(view, db, Itemset{item});
}

inline std::vector<ItemId> locally_frequent_items(const ProjectedView& view, const SequenceDatabase& db,
                                                  std::size_t fmin) {
  std::vector<std::size_t> freq(db.alphabet.size(), 0);
  std::vector<std::size_t> seen(db.alphabet.size(), 0);
  std::size_t stamp = 0;
  for (const auto& e : view.entries) {
    ++stamp;
    const Sequence& s = db.sequences.at(e.sid - 1);
    for (Pos j = e.start; j <= s.size(); ++j) {
      for (ItemId i : s.at(j)) {
        if (seen[i] == stamp) continue;
        seen[i] = stamp;
        ++freq[i];
      }
    }
  }
  std::vector<ItemId> out;
  for (ItemId i = 0; i < freq.size(); ++i)
    if (freq[i] >= fmin && freq[i] > 0) out.push_back(i);
  return out;
}

namespace detail {

/// Contiguous copy of the database for cache-friendly scanning.
class FlatDatabase {
 public:
  explicit FlatDatabase(const SequenceDatabase& db) {
    seq_begin_.reserve(db.size() + 1);
    seq_begin_.push_back(0);
    item_begin_.push_back(0);
    for (const auto& s : db.sequences) {
      sids_.push_back(s.sid);
      for (const auto& e : s.elements) {
        items_.insert(items_.end(), e.begin(), e.end());
        item_begin_.push_back(static_cast<std::uint32_t>(items_.size()));
      }
      seq_begin_.push_back(static_cast<std::uint32_t>(item_begin_.size() - 1));
    }
  }

  std::size_t size() const noexcept { return sids_.size(); }
  std::uint32_t sid(std::uint32_t s) const noexcept { return sids_[s]; }
  Pos length(std::uint32_t s) const noexcept { return seq_begin_[s + 1] - seq_begin_[s]; }

  const ItemId* begin(std::uint32_t s, Pos p) const noexcept {
    return items_.data() + item_begin_[seq_begin_[s] + p - 1];
  }
  const ItemId* end(std::uint32_t s, Pos p) const noexcept { return items_.data() + item_begin_[seq_begin_[s] + p]; }

  bool includes(std::uint32_t s, Pos p, const Itemset& set) const noexcept {
    return std::includes(begin(s, p), end(s, p), set.begin(), set.end());
  }

 private:
  std::vector<std::uint32_t> sids_;
  std::vector<std::uint32_t> seq_begin_;
  std::vector<std::uint32_t> item_begin_;
  std::vector<ItemId> items_;
};

enum class Representation { frontier, positions, chains };
enum Ext : int { seq_ext = 0, set_ext = 1 };

/// Projected entries of one node. Entry e covers data[begin[e] .. begin[e+1]).
struct Frame {
  std::vector<std::uint32_t> seq;
  std::vector<std::uint32_t> begin;
  std::vector<Pos> data;

  std::size_t size() const noexcept { return seq.size(); }
  std::size_t entry_end(std::size_t e) const noexcept {
    return e + 1 < begin.size() ? begin[e + 1] : data.size();
  }
  void clear() noexcept {
    seq.clear();
    begin.clear();
    data.clear();
  }
  std::size_t words() const noexcept { return seq.size() + begin.size() + data.size(); }
};

struct Child {
  ItemId item = 0;
  Ext kind = seq_ext;
  int dfa_state = 0;
  long long agg_sum = 0;
  std::size_t accepted = 0;
  Frame frame;
};

struct SearchSetup {
  const SequenceDatabase* source = nullptr;
  const FlatDatabase* db = nullptr;
  const ConstraintSet* cs = nullptr;
  Representation rep = Representation::frontier;
  std::size_t k = 0;
  std::size_t fmin = 1;
  std::size_t minlen = 1;
  std::size_t maxlen = 1;
  bool itemset_mode = false;
  bool local_pruning = true;
  bool collect = true;
  bool agg_prune = false;
  EmbeddingBounds bounds;
  std::vector<char> allowed;
  std::vector<ItemId> allowed_items;
  std::atomic<bool>* stop = nullptr;
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;
};

template <Representation R>
class Worker {
 public:
  explicit Worker(const SearchSetup& setup) : s_(setup) {
    for (int k = 0; k < 2; ++k) {
      count_[k].assign(s_.k, 0);
      stamp_[k].assign(s_.k, 0);
      slot_[k].assign(s_.k, -1);
    }
  }

  std::vector<ResultEntry> out;
  MiningStats stats;

  /// Expands the root into level 0 and returns its children.
  const std::vector<Child>& expand_root() {
    Frame root;
    for (std::uint32_t q = 0; q < s_.db->size(); ++q) {
      root.seq.push_back(q);
      root.begin.push_back(static_cast<std::uint32_t>(root.data.size()));
      if constexpr (R == Representation::frontier) {
        root.data.push_back(0);
        root.data.push_back(0);
      }
    }
    pattern_.clear();
    expand(root, 0, 0, 0);
    return levels_[0];
  }

  /// Emits `child` and explores its subtree. `depth` is the expansion depth
  /// of its parent.
  void visit(const Child& child, std::size_t depth) {
    if (stopped()) return;
    if (child.kind == seq_ext) {
      pattern_.push_back({child.item});
    } else {
      pattern_.back().push_back(child.item);
    }
    emit(child);
    const bool can_grow = pattern_.size() < s_.maxlen || s_.itemset_mode;
    if (can_grow) {
      expand(child.frame, child.dfa_state, child.agg_sum, depth + 1);
      const std::vector<Child>& children = levels_[depth + 1];
      for (std::size_t c = 0; c < used_[depth + 1]; ++c) {
        visit(children[c], depth + 1);
        if (stopped()) break;
      }
    }
    if (child.kind == seq_ext) {
      pattern_.pop_back();
    } else {
      pattern_.back().pop_back();
    }
  }

  /// Number of children produced by the last expansion into `level`.
  std::size_t used(std::size_t level) const { return used_[level]; }

 private:
  bool stopped() {
    if (s_.stop->load(std::memory_order_relaxed)) return true;
    if (s_.has_deadline && (++ticks_ & 1023u) == 0 && std::chrono::steady_clock::now() >= s_.deadline) {
      s_.stop->store(true);
      return true;
    }
    return false;
  }

  /// Calls emit(kind, item, a, b) for every extension event of one entry.
  template <class F>
  void events(std::uint32_t q, const Pos* d, const Pos* d_end, const Itemset* last, F&& f) const {
    const FlatDatabase& db = *s_.db;
    const Pos n = db.length(q);
    const std::size_t l = pattern_.size();
    const bool seq_allowed = l < s_.maxlen;
    const bool set_allowed = s_.itemset_mode && last != nullptr;
    const ItemId floor = set_allowed ? last->back() : 0;

    if constexpr (R == Representation::frontier) {
      const Pos prev = d[0];
      const Pos end = d[1];
      if (seq_allowed) {
        for (Pos j = end + 1; j <= n; ++j)
          for (const ItemId* it = db.begin(q, j); it != db.end(q, j); ++it) f(seq_ext, *it, end, j);
      }
      if (set_allowed) {
        for (Pos j = end; j <= n; ++j) {
          if (!db.includes(q, j, *last)) continue;
          for (const ItemId* it = db.begin(q, j); it != db.end(q, j); ++it)
            if (*it > floor) f(set_ext, *it, prev, j);
        }
      }
    } else if constexpr (R == Representation::positions) {
      if (l == 0) {
        for (Pos j = 1; j <= n; ++j)
          for (const ItemId* it = db.begin(q, j); it != db.end(q, j); ++it) f(seq_ext, *it, j, 0);
        return;
      }
      if (seq_allowed) {
        for (Pos j = d[0] + 1; j <= n; ++j)
          for (const ItemId* it = db.begin(q, j); it != db.end(q, j); ++it) f(seq_ext, *it, j, 0);
      }
      if (set_allowed) {
        for (const Pos* p = d; p != d_end; ++p)
          for (const ItemId* it = db.begin(q, *p); it != db.end(q, *p); ++it)
            if (*it > floor) f(set_ext, *it, *p, 0);
      }
    } else {
      const EmbeddingBounds& b = s_.bounds;
      if (l == 0) {
        if (b.maxspan < 1) return;
        for (Pos j = 1; j <= n; ++j)
          for (const ItemId* it = db.begin(q, j); it != db.end(q, j); ++it) f(seq_ext, *it, j, j);
        return;
      }
      for (const Pos* p = d; p != d_end; p += 2) {
        const Pos at = p[0];
        const Pos first = p[1];
        if (seq_allowed) {
          const std::size_t lo = static_cast<std::size_t>(at) + 1 + b.mingap;
          std::size_t hi = n;
          if (b.maxgap != unbounded) hi = std::min(hi, static_cast<std::size_t>(at) + 1 + b.maxgap);
          if (b.maxspan != unbounded) hi = std::min(hi, static_cast<std::size_t>(first) + b.maxspan - 1);
          for (std::size_t j = lo; j <= hi; ++j) {
            const Pos pj = static_cast<Pos>(j);
            for (const ItemId* it = db.begin(q, pj); it != db.end(q, pj); ++it) f(seq_ext, *it, pj, first);
          }
        }
        if (set_allowed) {
          for (const ItemId* it = db.begin(q, at); it != db.end(q, at); ++it)
            if (*it > floor) f(set_ext, *it, at, first);
        }
      }
    }
  }

  bool candidate_ok(Ext kind, ItemId x, int dfa_state, long long agg_sum, int& next_state, long long& next_sum) const {
    if (!s_.allowed[x]) return false;
    next_state = dfa_state;
    next_sum = agg_sum;
    const ConstraintSet& cs = *s_.cs;
    if (cs.regex && kind == seq_ext) {
      next_state = cs.regex->next(dfa_state, x);
      if (!cs.regex->live(next_state)) return false;
    }
    if (cs.aggregate) {
      next_sum = agg_sum + cs.aggregate->cost(x);
      if (s_.agg_prune && !compare(next_sum, cs.aggregate->cmp, cs.aggregate->threshold)) return false;
    }
    return true;
  }

  void expand(const Frame& frame, int dfa_state, long long agg_sum, std::size_t level) {
    ++stats.nodes_expanded;
    while (levels_.size() <= level) {
      levels_.emplace_back();
      used_.push_back(0);
    }
    std::vector<Child>& children = levels_[level];
    const Itemset* last = pattern_.empty() ? nullptr : &pattern_.back();

    // Pass 1: count distinct entries per extension item.
    for (std::size_t e = 0; e < frame.size(); ++e) {
      ++entry_stamp_;
      const Pos* d = frame.data.data() + frame.begin[e];
      const Pos* d_end = frame.data.data() + frame.entry_end(e);
      events(frame.seq[e], d, d_end, last, [&](Ext kind, ItemId x, Pos, Pos) {
        if (stamp_[kind][x] == entry_stamp_) return;
        stamp_[kind][x] = entry_stamp_;
        if (count_[kind][x]++ == 0) touched_[kind].push_back(x);
      });
    }

    // Candidate selection, children ordered by kind (itemset first) then id.
    std::size_t n_children = 0;
    candidates_.clear();
    for (int kind : {set_ext, seq_ext}) {
      if (s_.local_pruning) {
        for (ItemId x : touched_[kind])
          if (count_[kind][x] >= s_.fmin) candidates_.push_back({kind, x});
      } else if (!touched_[kind].empty()) {
        const ItemId floor = (kind == set_ext && last) ? last->back() : 0;
        for (ItemId x : s_.allowed_items)
          if (kind == seq_ext || x > floor) candidates_.push_back({kind, x});
      }
      for (ItemId x : touched_[kind]) count_[kind][x] = 0;
      touched_[kind].clear();
    }
    std::sort(candidates_.begin(), candidates_.end());
    for (const auto& [kind_int, x] : candidates_) {
      const Ext kind = static_cast<Ext>(kind_int);
      int next_state = 0;
      long long next_sum = 0;
      if (!candidate_ok(kind, x, dfa_state, agg_sum, next_state, next_sum)) continue;
      if (children.size() <= n_children) children.emplace_back();
      Child& c = children[n_children];
      c.item = x;
      c.kind = kind;
      c.dfa_state = next_state;
      c.agg_sum = next_sum;
      c.accepted = 0;
      c.frame.clear();
      slot_[kind][x] = static_cast<std::int32_t>(n_children);
      ++n_children;
    }

    // Pass 2: build child frames.
    if (n_children > 0) {
      for (std::size_t e = 0; e < frame.size(); ++e) {
        const std::uint32_t q = frame.seq[e];
        const Pos* d = frame.data.data() + frame.begin[e];
        const Pos* d_end = frame.data.data() + frame.entry_end(e);
        events(q, d, d_end, last, [&](Ext kind, ItemId x, Pos a, Pos b) {
          const std::int32_t c = slot_[kind][x];
          if (c < 0) return;
          Frame& f = children[static_cast<std::size_t>(c)].frame;
          const bool fresh = f.seq.empty() || f.seq.back() != q;
          if (fresh) {
            f.seq.push_back(q);
            f.begin.push_back(static_cast<std::uint32_t>(f.data.size()));
            if constexpr (R == Representation::chains) touched_children_.push_back(static_cast<std::uint32_t>(c));
          } else if constexpr (R == Representation::frontier) {
            return;
          }
          f.data.push_back(a);
          if constexpr (R != Representation::positions) f.data.push_back(b);
        });
        if constexpr (R == Representation::chains) {
          for (std::uint32_t c : touched_children_) normalize_last_entry(children[c].frame);
          touched_children_.clear();
        }
      }
      for (const auto& [kind, x] : candidates_) slot_[kind][x] = -1;
    }

    // Drop infrequent children (only reachable without local pruning) and
    // compute accepted support.
    std::size_t kept = 0;
    std::uint64_t words = 0;
    for (std::size_t c = 0; c < n_children; ++c) {
      Child& ch = children[c];
      if (ch.frame.size() < s_.fmin) continue;
      ch.accepted = accepted_support(ch.frame);
      words += ch.frame.words();
      if (kept != c) std::swap(children[kept], ch);
      ++kept;
    }
    stats.peak_frame_words = std::max(stats.peak_frame_words, words);
    used_[level] = kept;
  }

  void normalize_last_entry(Frame& f) {
    const std::size_t from = f.begin.back();
    auto& tmp = chain_buffer_;
    tmp.clear();
    for (std::size_t i = from; i < f.data.size(); i += 2) tmp.emplace_back(f.data[i], f.data[i + 1]);
    std::sort(tmp.begin(), tmp.end());
    tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
    f.data.resize(from);
    for (const auto& [a, b] : tmp) {
      f.data.push_back(a);
      f.data.push_back(b);
    }
  }

  std::size_t accepted_support(const Frame& f) const {
    if constexpr (R != Representation::chains) {
      return f.size();
    } else {
      if (s_.bounds.minspan == 0) return f.size();
      std::size_t n = 0;
      for (std::size_t e = 0; e < f.size(); ++e) n += entry_accepted(f, e) ? 1 : 0;
      return n;
    }
  }

  bool entry_accepted(const Frame& f, std::size_t e) const {
    if constexpr (R != Representation::chains) {
      return true;
    } else {
      if (s_.bounds.minspan == 0) return true;
      for (std::size_t i = f.begin[e]; i < f.entry_end(e); i += 2) {
        if (s_.bounds.span_within_min(f.data[i + 1], f.data[i])) return true;
      }
      return false;
    }
  }

  void emit(const Child& child) {
    if (pattern_.size() < s_.minlen) return;
    if (child.accepted < s_.fmin) return;
    const ConstraintSet& cs = *s_.cs;
    Pattern p(pattern_);
    if (!cs.must_have.empty() && !item_constraint(p, cs.must_have, {}, cs.must_have_all).accepted) return;
    if (!superpattern_constraint(p, cs.super_patterns, cs.super_patterns_all)) return;
    if (cs.aggregate && !aggregate_constraint(p, *cs.aggregate)) return;
    if (cs.regex && !cs.regex->accepting(child.dfa_state)) return;
    ++stats.pattern_count;
    if (!s_.collect) return;
    ResultEntry r;
    r.pattern = std::move(p);
    r.support = child.accepted;
    r.support_ids.reserve(child.accepted);
    const Frame& f = child.frame;
    for (std::size_t e = 0; e < f.size(); ++e) {
      if (entry_accepted(f, e)) r.support_ids.push_back(s_.db->sid(f.seq[e]));
    }
    out.push_back(std::move(r));
  }

  const SearchSetup& s_;
  std::vector<std::uint32_t> count_[2];
  std::vector<std::uint64_t> stamp_[2];
  std::vector<std::int32_t> slot_[2];
  std::vector<ItemId> touched_[2];
  std::uint64_t entry_stamp_ = 0;
  std::vector<std::pair<int, ItemId>> candidates_;
  std::vector<std::uint32_t> touched_children_;
  std::deque<std::vector<Child>> levels_;
  std::vector<std::size_t> used_;
  std::vector<std::pair<Pos, Pos>> chain_buffer_;
  std::vector<Itemset> pattern_;
  std::uint64_t ticks_ = 0;
};

template <Representation R>
void run_search(const SearchSetup& setup, unsigned threads, std::vector<ResultEntry>& out, MiningStats& stats) {
  Worker<R> root(setup);
  const std::vector<Child>& first = root.expand_root();
  const std::size_t n_first = root.used(0);
  stats.nodes_expanded += root.stats.nodes_expanded;
  stats.peak_frame_words = std::max(stats.peak_frame_words, root.stats.peak_frame_words);

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_first)));
  std::vector<Worker<R>> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(setup);
  std::atomic<std::size_t> next{0};
  auto drive = [&](Worker<R>& w) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_first) break;
      w.visit(first[i], 0);
      if (setup.stop->load()) break;
    }
  };
  if (workers == 1) {
    drive(pool[0]);
  } else {
    std::vector<std::thread> ts;
    for (unsigned w = 0; w < workers; ++w) ts.emplace_back(drive, std::ref(pool[w]));
    for (auto& t : ts) t.join();
  }
  for (auto& w : pool) {
    stats.nodes_expanded += w.stats.nodes_expanded;
    stats.pattern_count += w.stats.pattern_count;
    stats.peak_frame_words = std::max(stats.peak_frame_words, w.stats.peak_frame_words);
    out.insert(out.end(), std::make_move_iterator(w.out.begin()), std::make_move_iterator(w.out.end()));
  }
}

}  // namespace detail

/// Validates parameters and constraints against `db`; returns resolved fmin.
inline std::size_t check_mining_inputs(const SequenceDatabase& db, const MiningParams& params,
                                       const ConstraintSet& cs) {
  if (params.maxlen < 1) throw UsageError("maxlen must be at least 1");
  if (params.minlen < 1) throw UsageError("minlen must be at least 1");
  if (params.minlen > params.maxlen) throw UsageError("minlen exceeds maxlen");
  if (params.fmin.is_fraction() && db.empty()) {
    throw UsageError("fractional minimum support cannot be resolved on an empty database");
  }
  cs.validate();
  if (cs.regex && params.itemset_mode) throw UsageError("regular expression constraints require simple patterns");
  if (cs.regex && cs.regex->alphabet_size() != db.alphabet.size()) {
    throw UsageError("regular expression compiled against a different alphabet");
  }
  const std::size_t k = db.alphabet.size();
  for (ItemId i : cs.must_have)
    if (i >= k) throw UsageError("must-have item outside the alphabet");
  for (ItemId i : cs.cannot_have)
    if (i >= k) throw UsageError("cannot-have item outside the alphabet");
  return db.empty() ? std::max<std::size_t>(1, params.fmin.resolve(1)) : params.fmin.resolve(db.size());
}

/// Frequent (and optionally condensed) patterns satisfying `cs`.
inline MiningResult mine(const SequenceDatabase& db, const MiningParams& params, const ConstraintSet& cs = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t fmin = check_mining_inputs(db, params, cs);
  if (!params.itemset_mode && !db.simple_mode) {
    for (const auto& s : db.sequences)
      for (const auto& e : s.elements)
        if (e.size() != 1) throw UsageError("database has multi-item itemsets; enable itemset mode");
  }
  const auto kind = condensed_kind(params.mode);

  MiningResult result;
  result.params = params;

  detail::FlatDatabase flat(db);
  std::atomic<bool> stop{false};
  detail::SearchSetup setup;
  setup.source = &db;
  setup.db = &flat;
  setup.cs = &cs;
  setup.k = db.alphabet.size();
  setup.fmin = fmin;
  setup.minlen = params.minlen;
  setup.maxlen = params.maxlen;
  setup.itemset_mode = params.itemset_mode;
  setup.local_pruning = params.local_pruning;
  setup.collect = params.collect || kind.has_value();
  setup.bounds = cs.embedding;
  setup.stop = &stop;
  if (params.timeout_seconds > 0) {
    setup.has_deadline = true;
    setup.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(params.timeout_seconds));
  }
  setup.allowed.assign(setup.k, 0);
  for (ItemId i : frequent_items(db, fmin)) setup.allowed[i] = 1;
  for (ItemId i : cs.cannot_have) setup.allowed[i] = 0;
  for (ItemId i = 0; i < setup.k; ++i)
    if (setup.allowed[i]) setup.allowed_items.push_back(i);
  if (cs.aggregate) {
    for (ItemId i : setup.allowed_items) (void)cs.aggregate->cost(i);
    setup.agg_prune = cs.aggregate->anti_monotone();
  }

  if (cs.embedding.active()) {
    setup.rep = detail::Representation::chains;
    detail::run_search<detail::Representation::chains>(setup, params.threads, result.entries, result.stats);
  } else if (params.strategy == Strategy::skip_gaps) {
    setup.rep = detail::Representation::positions;
    detail::run_search<detail::Representation::positions>(setup, params.threads, result.entries, result.stats);
  } else {
    setup.rep = detail::Representation::frontier;
    detail::run_search<detail::Representation::frontier>(setup, params.threads, result.entries, result.stats);
  }
  result.stats.completed = !stop.load();
  result.canonicalize();

  if (kind && result.stats.completed) {
    if (params.strict_condensed) {
      result.entries = strict_condensed_filter(result.entries, *kind);
    } else {
      CondensedChecker checker(db, params.strategy, params.itemset_mode);
      const bool recount = cs.embedding.active();
      std::vector<ResultEntry> kept;
      for (auto& e : result.entries) {
        bool keep = false;
        if (recount) {
          const auto plain = support(db, e.pattern);
          keep = checker.holds(e.pattern, plain.ids, fmin, *kind);
        } else {
          keep = checker.holds(e.pattern, e.support_ids, fmin, *kind);
        }
        if (keep) kept.push_back(std::move(e));
      }
      result.entries = std::move(kept);
    }
    result.stats.pattern_count = result.entries.size();
  }
  if (!params.collect && !kind) result.entries.clear();
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

inline MiningResult mine_frequent(const SequenceDatabase& db, const MiningParams& params,
                                  const ConstraintSet& cs = {}) {
  return mine(db, params, cs);
}

inline MiningResult mine_itemset_patterns(const SequenceDatabase& db, MiningParams params,
                                          const ConstraintSet& cs = {}) {
  params.itemset_mode = true;
  return mine(db, params, cs);
}

}  // namespace seqmine
