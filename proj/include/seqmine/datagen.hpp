#pragma once

// Synthetic databases built by planting random patterns into random
// sequences and filling the remaining positions from an item-popularity law.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqmine/types.hpp"

namespace seqmine {

struct GenParams {
  std::size_t num_sequences = 500;   // D
  double mean_length = 20;           // l
  std::size_t num_patterns = 20;     // n
  double mean_pattern_length = 5;    // lp
  double min_fraction = 0.10;        // th_D
  std::size_t alphabet_size = 50;    // k
  double item_mu = 0.5;
  double item_sigma = 0.05;
  std::uint64_t seed = 1;
  /// Upper bound on generated sequence length; planting fails beyond it.
  std::optional<std::size_t> max_sequence_length;

  void validate() const {
    if (alphabet_size < 1) throw UsageError("alphabet size must be at least 1");
    if (!(mean_length >= 1)) throw UsageError("mean sequence length must be at least 1");
    if (!(mean_pattern_length >= 1) || mean_pattern_length > mean_length) {
      throw UsageError("mean pattern length must lie in [1, mean sequence length]");
    }
    if (!(min_fraction >= 0) || min_fraction > 1) throw UsageError("minimum fraction must lie in [0, 1]");
    if (!(item_sigma > 0)) throw UsageError("item sigma must be positive");
  }
};

/// Draws x ~ Normal(mu, sigma) truncated to (0, 1) and returns floor(x · k).
class ItemPopularity {
 public:
  ItemPopularity(std::size_t k, double mu, double sigma, std::uint64_t seed)
      : k_(k), law_(mu, sigma), rng_(seed) {
    if (k < 1) throw UsageError("alphabet size must be at least 1");
  }

  ItemId operator()() { return draw(rng_); }

  template <class Rng>
  ItemId draw(Rng& rng) {
    double x = 0;
    do {
      x = law_(rng);
    } while (!(x > 0.0 && x < 1.0));
    const auto id = static_cast<std::size_t>(std::floor(x * static_cast<double>(k_)));
    return static_cast<ItemId>(std::min(id, k_ - 1));
  }

 private:
  std::size_t k_;
  std::normal_distribution<double> law_;
  std::mt19937_64 rng_;
};

inline ItemPopularity item_popularity_law(std::size_t k, double mu = 0.5, double sigma = 0.05,
                                          std::uint64_t seed = 1) {
  return ItemPopularity(k, mu, sigma, seed);
}

struct PlantedPattern {
  Pattern pattern;
  std::vector<std::uint32_t> sids;
};

struct GeneratedData {
  SequenceDatabase db;
  std::vector<PlantedPattern> planted;
};

/// Items are labelled "1".."k"; alphabet ids follow label order, so id i is
/// label i+1 and item code i+1.
inline GeneratedData generate(const GenParams& gp) {
  gp.validate();
  std::mt19937_64 rng(gp.seed);
  ItemPopularity popularity(gp.alphabet_size, gp.item_mu, gp.item_sigma, gp.seed);
  std::uniform_int_distribution<ItemId> uniform_item(0, static_cast<ItemId>(gp.alphabet_size - 1));

  const double l = gp.mean_length;
  const double lp = gp.mean_pattern_length;
  const auto l_cap = static_cast<long long>(std::max(1.0, std::floor(l)));
  auto draw_length = [&](double mean, long long lo, long long hi) {
    std::normal_distribution<double> law(mean, mean / 5.0);
    const long long v = std::llround(law(rng));
    return static_cast<std::size_t>(std::clamp(v, lo, hi));
  };

  GeneratedData out;
  std::vector<std::vector<std::size_t>> plants_of(gp.num_sequences);
  const std::size_t occurrences =
      std::min(gp.num_sequences,
               static_cast<std::size_t>(std::ceil(gp.min_fraction * static_cast<double>(gp.num_sequences) - 1e-9)));
  std::vector<std::uint32_t> all(gp.num_sequences);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
  for (std::size_t p = 0; p < gp.num_patterns; ++p) {
    PlantedPattern pp;
    const std::size_t len = draw_length(lp, 1, l_cap);
    std::vector<ItemId> items(len);
    for (auto& x : items) x = uniform_item(rng);
    pp.pattern = Pattern::of_items(items);
    std::shuffle(all.begin(), all.end(), rng);
    pp.sids.assign(all.begin(), all.begin() + static_cast<long>(occurrences));
    std::sort(pp.sids.begin(), pp.sids.end());
    for (auto& s : pp.sids) {
      plants_of[s].push_back(p);
      s += 1;
    }
    out.planted.push_back(std::move(pp));
  }

  std::vector<std::vector<ItemId>> raw(gp.num_sequences);
  for (std::size_t s = 0; s < gp.num_sequences; ++s) {
    std::size_t planted_len = 0;
    for (std::size_t p : plants_of[s]) planted_len += out.planted[p].pattern.size();
    if (gp.max_sequence_length && planted_len > *gp.max_sequence_length) {
      throw UsageError("infeasible generation: sequence " + std::to_string(s + 1) + " needs " +
                       std::to_string(planted_len) + " planted positions but the length cap is " +
                       std::to_string(*gp.max_sequence_length));
    }
    const long long lo = static_cast<long long>(std::max<std::size_t>(1, planted_len));
    long long hi = gp.max_sequence_length ? static_cast<long long>(*gp.max_sequence_length)
                                          : std::numeric_limits<long long>::max();
    hi = std::max(hi, lo);
    const std::size_t n = draw_length(l, lo, hi);

    std::vector<std::size_t> slots(n);
    for (std::size_t i = 0; i < n; ++i) slots[i] = i;
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<ItemId> seq(n);
    std::vector<char> used(n, 0);
    std::size_t cursor = 0;
    for (std::size_t p : plants_of[s]) {
      const auto& pat = out.planted[p].pattern;
      std::vector<std::size_t> at(slots.begin() + static_cast<long>(cursor),
                                  slots.begin() + static_cast<long>(cursor + pat.size()));
      cursor += pat.size();
      std::sort(at.begin(), at.end());
      for (std::size_t i = 0; i < at.size(); ++i) {
        seq[at[i]] = pat.elements[i].front();
        used[at[i]] = 1;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i]) seq[i] = popularity.draw(rng);
    raw[s] = std::move(seq);
  }

  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= gp.alphabet_size; ++i) labels.push_back(std::to_string(i));
  out.db.alphabet = Alphabet::from_labels(labels);
  for (std::size_t s = 0; s < raw.size(); ++s) {
    Sequence seq;
    seq.sid = static_cast<std::uint32_t>(s + 1);
    for (ItemId x : raw[s]) seq.elements.push_back({x});
    out.db.sequences.push_back(std::move(seq));
  }
  out.db.validate();
  return out;
}

/// One JSON object per line: {"pattern":[labels...],"sids":[...]}.
inline void write_manifest(const GeneratedData& data, std::ostream& out) {
  for (const auto& pp : data.planted) {
    nlohmann::ordered_json j;
    std::vector<std::string> items;
    for (const auto& e : pp.pattern.elements) items.push_back(data.db.alphabet.label(e.front()));
    j["pattern"] = items;
    j["sids"] = pp.sids;
    out << j.dump() << '\n';
  }
}

}  // namespace seqmine
