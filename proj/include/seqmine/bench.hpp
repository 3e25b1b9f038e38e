#pragma once

// Benchmark sweeps: datasets × thresholds × strategies × modes, one JSON
// record per cell, cells run sequentially with a per-cell timeout.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqmine/constraints.hpp"
#include "seqmine/datagen.hpp"
#include "seqmine/io.hpp"
#include "seqmine/miner.hpp"
#include "seqmine/result.hpp"

namespace seqmine {

struct BenchDataset {
  std::string id;
  std::optional<std::string> path;
  InputFormat format = InputFormat::spmf;
  std::optional<GenParams> generate;
};

struct BenchConstraints {
  std::vector<std::string> must_have;
  std::vector<std::string> cannot_have;
  std::optional<std::string> regex;
  EmbeddingBounds embedding;

  bool empty() const { return must_have.empty() && cannot_have.empty() && !regex && !embedding.active(); }

  std::string describe() const {
    if (empty()) return "none";
    std::ostringstream s;
    const char* sep = "";
    auto list = [&](const char* name, const std::vector<std::string>& v) {
      if (v.empty()) return;
      s << sep << name << "=";
      for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
      sep = ";";
    };
    list("must_have", must_have);
    list("cannot_have", cannot_have);
    if (regex) {
      s << sep << "regex=" << *regex;
      sep = ";";
    }
    auto bound = [&](const char* name, std::size_t v, std::size_t neutral) {
      if (v == neutral) return;
      s << sep << name << "=" << v;
      sep = ";";
    };
    bound("min_gap", embedding.mingap, 0);
    bound("max_gap", embedding.maxgap, unbounded);
    bound("min_span", embedding.minspan, 0);
    bound("max_span", embedding.maxspan, unbounded);
    return s.str();
  }

  ConstraintSet resolve(const Alphabet& alphabet) const {
    ConstraintSet cs;
    auto ids = [&](const std::vector<std::string>& labels) {
      std::vector<ItemId> out;
      for (const auto& l : labels) {
        const long long id = alphabet.find(l);
        if (id < 0) throw UsageError("constraint item '" + l + "' is not in the alphabet");
        out.push_back(static_cast<ItemId>(id));
      }
      return out;
    };
    cs.must_have = ids(must_have);
    cs.cannot_have = ids(cannot_have);
    if (regex) cs.regex = regex_compile(*regex, alphabet);
    cs.embedding = embedding;
    return cs;
  }
};

struct BenchSuite {
  std::vector<BenchDataset> datasets;
  std::vector<std::string> thresholds;
  std::vector<Strategy> strategies{Strategy::fill_gaps};
  std::vector<Mode> modes{Mode::frequent};
  std::optional<std::size_t> maxlen;
  std::size_t minlen = 1;
  double timeout_seconds = 0;
  unsigned threads = 1;
  BenchConstraints constraints;
};

struct BenchRecord {
  std::string dataset;
  std::string threshold;
  std::size_t resolved_threshold = 0;
  std::size_t maxlen = 0;
  std::size_t minlen = 1;
  double timeout_seconds = 0;
  unsigned threads = 1;
  Strategy strategy = Strategy::fill_gaps;
  Mode mode = Mode::frequent;
  std::string constraints = "none";
  double load_seconds = 0;
  double mine_seconds = 0;
  double wall_time = 0;
  long peak_rss_kb = 0;
  std::optional<std::uint64_t> pattern_count;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t peak_frame_words = 0;
  bool completed = true;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["dataset"] = dataset;
    j["params"] = {{"min_support", threshold},
                   {"resolved_min_support", resolved_threshold},
                   {"maxlen", maxlen},
                   {"minlen", minlen},
                   {"timeout", timeout_seconds},
                   {"threads", threads}};
    j["strategy"] = to_string(strategy);
    j["mode"] = to_string(mode);
    j["constraints"] = constraints;
    j["wall_time"] = wall_time;
    j["load_time"] = load_seconds;
    j["mine_time"] = mine_seconds;
    j["peak_rss_kb"] = peak_rss_kb;
    if (pattern_count) j["pattern_count"] = *pattern_count;
    j["search_nodes_expanded"] = nodes_expanded;
    j["peak_frame_words"] = peak_frame_words;
    j["completed"] = completed;
    return j;
  }
};

/// Process high-water resident set size in KiB.
inline long peak_rss_kb() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return usage.ru_maxrss;
}

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline GenParams gen_params_from_json(const nlohmann::json& j) {
  GenParams g;
  g.num_sequences = json_get(j, "num_sequences", g.num_sequences);
  g.mean_length = json_get(j, "mean_length", g.mean_length);
  g.num_patterns = json_get(j, "num_patterns", g.num_patterns);
  g.mean_pattern_length = json_get(j, "mean_pattern_length", g.mean_pattern_length);
  g.min_fraction = json_get(j, "min_fraction", g.min_fraction);
  g.alphabet_size = json_get(j, "alphabet_size", g.alphabet_size);
  g.item_mu = json_get(j, "item_mu", g.item_mu);
  g.item_sigma = json_get(j, "item_sigma", g.item_sigma);
  g.seed = json_get(j, "seed", g.seed);
  return g;
}

inline std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

}  // namespace detail

/// Parses a suite document. Relative dataset paths resolve against `base_dir`.
inline BenchSuite parse_bench_suite(const std::string& text, const std::filesystem::path& base_dir = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bench suite: ") + e.what());
  }
  if (!j.is_object()) throw DataError("bench suite: expected a JSON object");
  BenchSuite suite;
  try {
    if (j.contains("datasets")) {
      std::size_t index = 0;
      for (const auto& d : j.at("datasets")) {
        BenchDataset ds;
        ++index;
        ds.id = detail::json_get<std::string>(d, "id", "dataset" + std::to_string(index));
        if (d.contains("path")) {
          std::filesystem::path p = d.at("path").get<std::string>();
          if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
          ds.path = p.string();
        }
        if (d.contains("format")) ds.format = parse_input_format(d.at("format").get<std::string>());
        if (d.contains("generate")) ds.generate = detail::gen_params_from_json(d.at("generate"));
        if (!ds.path && !ds.generate) throw DataError("bench suite: dataset '" + ds.id + "' has no path or generate");
        suite.datasets.push_back(std::move(ds));
      }
    }
    suite.thresholds = detail::string_list(j, "thresholds");
    if (j.contains("strategies")) {
      suite.strategies.clear();
      for (const auto& s : j.at("strategies")) suite.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (j.contains("modes")) {
      suite.modes.clear();
      for (const auto& m : j.at("modes")) suite.modes.push_back(parse_mode(m.get<std::string>()));
    }
    if (j.contains("maxlen")) suite.maxlen = j.at("maxlen").get<std::size_t>();
    suite.minlen = detail::json_get(j, "minlen", suite.minlen);
    suite.timeout_seconds = detail::json_get(j, "timeout", suite.timeout_seconds);
    suite.threads = detail::json_get(j, "threads", suite.threads);
    if (j.contains("constraints")) {
      const auto& c = j.at("constraints");
      suite.constraints.must_have = detail::string_list(c, "must_have");
      suite.constraints.cannot_have = detail::string_list(c, "cannot_have");
      if (c.contains("regex")) suite.constraints.regex = c.at("regex").get<std::string>();
      auto& e = suite.constraints.embedding;
      e.mingap = detail::json_get(c, "min_gap", e.mingap);
      e.maxgap = detail::json_get(c, "max_gap", e.maxgap);
      e.minspan = detail::json_get(c, "min_span", e.minspan);
      e.maxspan = detail::json_get(c, "max_span", e.maxspan);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bench suite: ") + e.what());
  }
  return suite;
}

using BenchSink = std::function<void(const BenchRecord&)>;

/// Runs every cell; missing datasets raise DataError before any cell runs.
inline std::vector<BenchRecord> run_bench(const BenchSuite& suite, const BenchSink& sink = {}) {
  for (const auto& ds : suite.datasets) {
    if (ds.path && !ds.generate && !std::filesystem::exists(*ds.path)) {
      throw DataError("bench: dataset '" + ds.id + "' not found at " + *ds.path);
    }
  }
  std::vector<BenchRecord> records;
  for (const auto& ds : suite.datasets) {
    const auto t0 = std::chrono::steady_clock::now();
    SequenceDatabase db = ds.generate ? generate(*ds.generate).db : load_database(*ds.path, ds.format);
    const double load = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const ConstraintSet cs = suite.constraints.resolve(db.alphabet);
    const std::size_t maxlen = suite.maxlen.value_or(std::max<std::size_t>(1, db.max_length()));
    for (const auto& th : suite.thresholds) {
      const Threshold threshold = Threshold::parse(th);
      for (Strategy strategy : suite.strategies) {
        for (Mode mode : suite.modes) {
          MiningParams p;
          p.fmin = threshold;
          p.maxlen = maxlen;
          p.minlen = suite.minlen;
          p.strategy = strategy;
          p.mode = mode;
          p.itemset_mode = !db.simple_mode;
          p.threads = suite.threads;
          p.timeout_seconds = suite.timeout_seconds;
          p.collect = mode != Mode::frequent;
          const MiningResult r = mine(db, p, cs);

          BenchRecord rec;
          rec.dataset = ds.id;
          rec.threshold = th;
          rec.resolved_threshold = db.empty() ? threshold.resolve(1) : threshold.resolve(db.size());
          rec.maxlen = maxlen;
          rec.minlen = suite.minlen;
          rec.timeout_seconds = suite.timeout_seconds;
          rec.threads = suite.threads;
          rec.strategy = strategy;
          rec.mode = mode;
          rec.constraints = suite.constraints.describe();
          rec.load_seconds = load;
          rec.mine_seconds = r.stats.wall_seconds;
          rec.wall_time = load + r.stats.wall_seconds;
          rec.peak_rss_kb = peak_rss_kb();
          rec.completed = r.stats.completed;
          if (rec.completed) rec.pattern_count = r.stats.pattern_count;
          rec.nodes_expanded = r.stats.nodes_expanded;
          rec.peak_frame_words = r.stats.peak_frame_words;
          if (sink) sink(rec);
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

inline void write_bench_summary(const std::vector<BenchRecord>& records, std::ostream& out) {
  if (records.empty()) return;
  out << std::left << std::setw(16) << "dataset" << std::setw(10) << "fmin" << std::setw(7) << "strat"
      << std::setw(18) << "mode" << std::right << std::setw(12) << "patterns" << std::setw(12) << "nodes"
      << std::setw(11) << "time[s]" << std::setw(12) << "rss[MiB]" << '\n';
  for (const auto& r : records) {
    out << std::left << std::setw(16) << r.dataset << std::setw(10) << r.threshold << std::setw(7)
        << to_string(r.strategy) << std::setw(18) << to_string(r.mode) << std::right << std::setw(12)
        << (r.pattern_count ? std::to_string(*r.pattern_count) : std::string("timeout")) << std::setw(12)
        << r.nodes_expanded << std::setw(11) << std::fixed << std::setprecision(3) << r.wall_time << std::setw(12)
        << std::setprecision(1) << static_cast<double>(r.peak_rss_kb) / 1024.0 << '\n';
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace seqmine
