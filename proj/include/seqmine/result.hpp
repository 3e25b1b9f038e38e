#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "seqmine/types.hpp"

namespace seqmine {

/// Embedding representation used during search and for condensed checks.
enum class Strategy { skip_gaps, fill_gaps };

enum class Mode { frequent, closed, maximal, backward_closed, backward_maximal };

inline const char* to_string(Strategy s) {
  return s == Strategy::skip_gaps ? "skip" : "fill";
}

inline Strategy parse_strategy(const std::string& text) {
  if (text == "skip" || text == "skip-gaps") return Strategy::skip_gaps;
  if (text == "fill" || text == "fill-gaps") return Strategy::fill_gaps;
  throw UsageError("unknown strategy '" + text + "' (expected skip|fill)");
}

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::frequent: return "frequent";
    case Mode::closed: return "closed";
    case Mode::maximal: return "maximal";
    case Mode::backward_closed: return "backward-closed";
    case Mode::backward_maximal: return "backward-maximal";
  }
  return "?";
}

inline Mode parse_mode(const std::string& text) {
  for (Mode m : {Mode::frequent, Mode::closed, Mode::maximal, Mode::backward_closed,
                 Mode::backward_maximal}) {
    if (text == to_string(m)) return m;
  }
  throw UsageError("unknown mode '" + text + "'");
}

/// Minimum support, either an absolute sequence count or a fraction of |D|.
class Threshold {
 public:
  Threshold() = default;

  static Threshold absolute(std::size_t count) {
    Threshold t;
    t.count_ = count;
    return t;
  }

  static Threshold fraction(double f) {
    if (!(f > 0.0) || f > 1.0) throw UsageError("support fraction must lie in (0, 1]");
    Threshold t;
    t.fraction_ = f;
    return t;
  }

  /// Accepts "3" (absolute), "10%" (percent) or "0.1" (fraction).
  static Threshold parse(const std::string& text) {
    if (text.empty()) throw UsageError("empty support threshold");
    try {
      std::size_t used = 0;
      if (text.back() == '%') {
        const double pct = std::stod(text.substr(0, text.size() - 1), &used);
        if (used != text.size() - 1) throw UsageError("bad percentage '" + text + "'");
        return fraction(pct / 100.0);
      }
      if (text.find_first_of(".eE") != std::string::npos) {
        const double f = std::stod(text, &used);
        if (used != text.size()) throw UsageError("bad fraction '" + text + "'");
        return fraction(f);
      }
      long long v = 0;
      if (!detail::parse_integer(text, v)) throw UsageError("bad threshold '" + text + "'");
      if (v < 1) throw UsageError("minimum support must be at least 1");
      return absolute(static_cast<std::size_t>(v));
    } catch (const UsageError&) {
      throw;
    } catch (const std::logic_error&) {
      throw UsageError("bad threshold '" + text + "'");
    }
  }

  bool is_fraction() const noexcept { return fraction_.has_value(); }

  /// ceil(fraction × N) for fractions; the count itself otherwise.
  std::size_t resolve(std::size_t database_size) const {
    if (!fraction_) {
      if (count_ < 1) throw UsageError("minimum support must be at least 1");
      return count_;
    }
    const double scaled = *fraction_ * static_cast<double>(database_size);
    const auto resolved = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    if (resolved < 1) throw UsageError("fractional minimum support resolves to 0 on this database");
    return resolved;
  }

  std::string describe() const {
    if (!fraction_) return std::to_string(count_);
    return std::to_string(*fraction_ * 100.0) + "%";
  }

 private:
  std::size_t count_ = 1;
  std::optional<double> fraction_;
};

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

struct MiningParams {
  Threshold fmin = Threshold::absolute(1);
  std::size_t maxlen = 0;
  std::size_t minlen = 1;
  Strategy strategy = Strategy::fill_gaps;
  Mode mode = Mode::frequent;
  bool itemset_mode = false;
  unsigned threads = 1;
  /// Restrict extensions to items frequent in the projected suffixes.
  bool local_pruning = true;
  /// Evaluate closure/maximality inside the constrained output instead of
  /// against unrestricted single-item insertions.
  bool strict_condensed = false;
  /// Wall-clock budget in seconds; 0 disables the deadline.
  double timeout_seconds = 0.0;
  /// When false only counts are kept (frequent mode only).
  bool collect = true;
};

struct ResultEntry {
  Pattern pattern;
  std::size_t support = 0;
  std::vector<std::uint32_t> support_ids;

  friend bool operator==(const ResultEntry&, const ResultEntry&) = default;
};

struct MiningStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t pattern_count = 0;
  std::uint64_t peak_frame_words = 0;
  bool completed = true;
  double wall_seconds = 0.0;
};

struct MiningResult {
  std::vector<ResultEntry> entries;
  MiningParams params;
  MiningStats stats;

  std::size_t size() const noexcept { return entries.size(); }

  /// Sorts entries canonically (pattern length, then lexicographic by ids).
  void canonicalize() {
    std::sort(entries.begin(), entries.end(),
              [](const ResultEntry& a, const ResultEntry& b) { return a.pattern < b.pattern; });
  }

  const ResultEntry* find(const Pattern& p) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), p,
                               [](const ResultEntry& e, const Pattern& q) { return e.pattern < q; });
    if (it != entries.end() && it->pattern == p) return &*it;
    return nullptr;
  }

  std::vector<Pattern> patterns() const {
    std::vector<Pattern> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.pattern);
    return out;
  }
};

}  // namespace seqmine
