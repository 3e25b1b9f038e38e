#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seqmine {

/// Dense index into an Alphabet. The total order on items is the order on ids.
using ItemId = std::uint32_t;

/// 1-based position of an itemset inside a sequence or pattern.
using Pos = std::uint32_t;

/// Strictly increasing list of item ids.
using Itemset = std::vector<ItemId>;

/// Malformed input data (parse failures, inconsistent facts, missing files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or constraint definitions supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool parse_integer(std::string_view text, long long& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

/// Natural label order: integer labels compare numerically and sort before
/// any non-integer label; everything else compares bytewise.
inline bool label_less(const std::string& a, const std::string& b) {
  long long ia = 0;
  long long ib = 0;
  const bool a_int = detail::parse_integer(a, ia);
  const bool b_int = detail::parse_integer(b, ib);
  if (a_int && b_int) return ia != ib ? ia < ib : a < b;
  if (a_int != b_int) return a_int;
  return a < b;
}

/// Interned item table. Ids are contiguous from 0 and bijective with labels.
/// Each item also carries the integer code used when writing SPMF text.
class Alphabet {
 public:
  Alphabet() = default;

  /// Builds an alphabet whose id order is the natural order of `labels`.
  /// `codes[i]` is the SPMF code of `labels[i]`; pass an empty vector to
  /// number items 1..k in id order.
  static Alphabet from_labels(std::vector<std::string> labels,
                              std::vector<long long> codes = {}) {
    if (!codes.empty() && codes.size() != labels.size()) {
      throw std::invalid_argument("Alphabet: label/code count mismatch");
    }
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return label_less(labels[x], labels[y]);
    });
    Alphabet a;
    a.labels_.reserve(labels.size());
    a.codes_.reserve(labels.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const std::size_t src = order[rank];
      if (a.index_.count(labels[src]) != 0) {
        throw std::invalid_argument("Alphabet: duplicate label '" + labels[src] + "'");
      }
      a.index_.emplace(labels[src], static_cast<ItemId>(rank));
      a.labels_.push_back(std::move(labels[src]));
      a.codes_.push_back(codes.empty() ? static_cast<long long>(rank) + 1 : codes[src]);
    }
    return a;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(ItemId id) const { return labels_.at(id); }
  long long code(ItemId id) const { return codes_.at(id); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Id of `label`, or -1 when absent.
  long long find(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : static_cast<long long>(it->second);
  }

  ItemId at(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::out_of_range("unknown item label '" + label + "'");
    return it->second;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.labels_ == b.labels_ && a.codes_ == b.codes_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<long long> codes_;
  std::unordered_map<std::string, ItemId> index_;
};

/// A database sequence. `elements[p - 1]` is the itemset at position p.
struct Sequence {
  std::uint32_t sid = 0;
  std::vector<Itemset> elements;

  std::size_t size() const noexcept { return elements.size(); }
  const Itemset& at(Pos p) const { return elements[p - 1]; }

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

struct SequenceDatabase {
  Alphabet alphabet;
  std::vector<Sequence> sequences;
  /// True iff every stored itemset is a singleton.
  bool simple_mode = true;

  std::size_t size() const noexcept { return sequences.size(); }
  bool empty() const noexcept { return sequences.empty(); }

  /// Σ over sequences and positions of the itemset sizes.
  std::size_t total_items() const noexcept {
    std::size_t total = 0;
    for (const auto& s : sequences)
      for (const auto& e : s.elements) total += e.size();
    return total;
  }

  std::size_t max_length() const noexcept {
    std::size_t m = 0;
    for (const auto& s : sequences) m = std::max(m, s.size());
    return m;
  }

  /// Recomputes `simple_mode` and checks invariants (dense sids, sorted
  /// non-empty itemsets, known item ids). Throws DataError on violation.
  void validate() {
    simple_mode = true;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      const Sequence& s = sequences[i];
      if (s.sid != i + 1) throw DataError("sequence ids must be dense and 1-based");
      for (const auto& e : s.elements) {
        if (e.empty()) throw DataError("empty itemset in sequence " + std::to_string(s.sid));
        for (std::size_t k = 0; k < e.size(); ++k) {
          if (e[k] >= alphabet.size()) throw DataError("item id outside alphabet");
          if (k > 0 && e[k - 1] >= e[k]) throw DataError("itemset not strictly increasing");
        }
        if (e.size() != 1) simple_mode = false;
      }
    }
  }
};

/// An ordered list of itemsets. In simple mode every element is a singleton.
/// Ordering is canonical: by number of elements, then lexicographic by ids.
struct Pattern {
  std::vector<Itemset> elements;

  Pattern() = default;
  explicit Pattern(std::vector<Itemset> e) : elements(std::move(e)) {}

  /// Pattern of singleton elements, one per item.
  static Pattern of_items(const std::vector<ItemId>& items) {
    Pattern p;
    p.elements.reserve(items.size());
    for (ItemId i : items) p.elements.push_back({i});
    return p;
  }

  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
  const Itemset& at(Pos p) const { return elements[p - 1]; }

  std::size_t item_count() const noexcept {
    std::size_t n = 0;
    for (const auto& e : elements) n += e.size();
    return n;
  }

  bool is_simple() const noexcept {
    return std::all_of(elements.begin(), elements.end(),
                       [](const Itemset& e) { return e.size() == 1; });
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.elements <=> b.elements;
  }
};

/// Views a database sequence as a pattern (used for pattern-vs-pattern tests).
inline Sequence as_sequence(const Pattern& p) {
  Sequence s;
  s.elements = p.elements;
  return s;
}

/// Human-readable ⟨...⟩ rendering using alphabet labels, e.g. "<a(bc)c>".
inline std::string to_string(const Pattern& p, const Alphabet& alphabet) {
  auto simple_label = [&](ItemId i) { return alphabet.label(i); };
  bool single_chars = true;
  for (const auto& e : p.elements)
    for (ItemId i : e) single_chars = single_chars && alphabet.label(i).size() == 1;
  std::string out = "<";
  for (std::size_t k = 0; k < p.elements.size(); ++k) {
    const auto& e = p.elements[k];
    if (!single_chars && k > 0) out += ' ';
    if (e.size() > 1) out += '(';
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!single_chars && j > 0) out += ' ';
      out += simple_label(e[j]);
    }
    if (e.size() > 1) out += ')';
  }
  out += '>';
  return out;
}

}  // namespace seqmine
