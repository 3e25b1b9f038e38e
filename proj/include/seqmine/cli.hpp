#pragma once

// Command-line front end: mine, gen, bench and the hidden oracle command.
// Exit codes: 0 success, 1 usage error, 2 timeout, 3 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqmine/bench.hpp"
#include "seqmine/constraints.hpp"
#include "seqmine/datagen.hpp"
#include "seqmine/io.hpp"
#include "seqmine/miner.hpp"
#include "seqmine/oracle.hpp"
#include "seqmine/regex.hpp"

namespace seqmine {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_timeout = 2, exit_data = 3 };

namespace detail {

inline unsigned default_threads() {
  const char* env = std::getenv("SEQMINE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  long long v = 0;
  if (!parse_integer(env, v) || v < 1) throw UsageError("SEQMINE_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

inline std::vector<ItemId> resolve_labels(const std::vector<std::string>& labels, const Alphabet& alphabet,
                                          const char* what) {
  std::vector<ItemId> out;
  for (const auto& l : labels) {
    const long long id = alphabet.find(l);
    if (id < 0) throw UsageError(std::string(what) + ": label '" + l + "' is not in the alphabet");
    out.push_back(static_cast<ItemId>(id));
  }
  return out;
}

/// Writes to `path`, or to `fallback` when the path is empty.
template <class F>
void with_output(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw DataError("failed to write '" + path + "'");
}

struct MineOptions {
  std::string input;
  std::string format = "spmf";
  std::string min_support;
  std::optional<std::size_t> maxlen;
  std::size_t minlen = 1;
  std::string strategy = "fill";
  std::string mode = "frequent";
  std::optional<std::size_t> max_gap, min_gap, max_span, min_span;
  std::vector<std::string> must_have, cannot_have, super_patterns;
  bool must_have_any = false;
  bool super_pattern_all = false;
  std::string regex;
  std::string cost_file;
  std::string agg;
  std::string agg_cmp = ">=";
  std::optional<long long> agg_threshold;
  bool itemset_mode = false;
  unsigned threads = 1;
  double timeout = 0;
  std::string output;
  std::string emit_asp_facts;
  bool strict_condensed = false;
  bool no_local_pruning = false;
  bool stats = false;
};

inline int run_mine(const MineOptions& o, std::ostream& out, std::ostream& err) {
  const SequenceDatabase db = load_database(o.input, parse_input_format(o.format));
  if (!o.emit_asp_facts.empty()) {
    with_output(o.emit_asp_facts, out, [&](std::ostream& s) { write_asp_facts(db, s); });
  }

  MiningParams p;
  p.fmin = Threshold::parse(o.min_support);
  p.maxlen = o.maxlen.value_or(std::max<std::size_t>(1, db.max_length()));
  p.minlen = o.minlen;
  p.strategy = parse_strategy(o.strategy);
  p.mode = parse_mode(o.mode);
  p.itemset_mode = o.itemset_mode;
  p.threads = o.threads;
  p.timeout_seconds = o.timeout;
  p.strict_condensed = o.strict_condensed;
  p.local_pruning = !o.no_local_pruning;
  if (o.maxlen && *o.maxlen < 1) throw UsageError("--maxlen must be at least 1");

  ConstraintSet cs;
  cs.must_have = resolve_labels(o.must_have, db.alphabet, "--must-have");
  cs.must_have_all = !o.must_have_any;
  cs.cannot_have = resolve_labels(o.cannot_have, db.alphabet, "--cannot-have");
  for (const auto& sp : o.super_patterns) cs.super_patterns.push_back(parse_pattern(sp, db.alphabet));
  cs.super_patterns_all = o.super_pattern_all;
  if (!o.regex.empty()) cs.regex = regex_compile(o.regex, db.alphabet);
  if (!o.agg.empty() || !o.cost_file.empty() || o.agg_threshold) {
    if (o.agg.empty() || o.cost_file.empty() || !o.agg_threshold) {
      throw UsageError("aggregate constraints need --agg, --cost-file and --agg-threshold");
    }
    std::ifstream costs(o.cost_file);
    if (!costs) throw DataError("cannot open cost file '" + o.cost_file + "'");
    AggregateConstraint agg;
    agg.costs = read_cost_table(costs, db.alphabet);
    agg.op = parse_aggregate_op(o.agg);
    agg.cmp = parse_comparator(o.agg_cmp);
    agg.threshold = *o.agg_threshold;
    cs.aggregate = std::move(agg);
  }
  if (o.min_gap) cs.embedding.mingap = *o.min_gap;
  if (o.max_gap) cs.embedding.maxgap = *o.max_gap;
  if (o.min_span) cs.embedding.minspan = *o.min_span;
  if (o.max_span) cs.embedding.maxspan = *o.max_span;

  const MiningResult r = mine(db, p, cs);
  if (o.stats) {
    err << "patterns=" << r.stats.pattern_count << " nodes=" << r.stats.nodes_expanded
        << " time=" << r.stats.wall_seconds << "s\n";
  }
  if (!r.stats.completed) {
    err << "seqmine: timeout after " << o.timeout << " s; search incomplete, no results written\n";
    return exit_timeout;
  }
  with_output(o.output, out, [&](std::ostream& s) { write_results(r, db.alphabet, s); });
  return exit_ok;
}

struct GenOptions {
  GenParams params;
  std::optional<std::size_t> max_length;
  std::string output;
  std::string manifest;
};

inline int run_gen(GenOptions o, std::ostream& out) {
  o.params.max_sequence_length = o.max_length;
  const GeneratedData data = generate(o.params);
  with_output(o.output, out, [&](std::ostream& s) { write_spmf(data.db, s); });
  if (!o.manifest.empty()) {
    with_output(o.manifest, out, [&](std::ostream& s) { write_manifest(data, s); });
  }
  return exit_ok;
}

struct BenchOptions {
  std::string suite;
  std::vector<std::string> inputs;
  std::string format = "spmf";
  bool synthetic = false;
  std::uint64_t seed = 1;
  std::vector<std::string> thresholds;
  std::vector<std::string> strategies{"fill"};
  std::vector<std::string> modes{"frequent"};
  std::optional<std::size_t> maxlen;
  std::size_t minlen = 1;
  double timeout = 0;
  unsigned threads = 1;
  std::string output;
  bool quiet = false;
};

inline int run_bench_command(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  BenchSuite suite;
  if (!o.suite.empty()) {
    std::ifstream in(o.suite);
    if (!in) throw DataError("cannot open bench suite '" + o.suite + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    suite = parse_bench_suite(text, std::filesystem::path(o.suite).parent_path());
  } else {
    for (const auto& path : o.inputs) {
      BenchDataset ds;
      ds.id = std::filesystem::path(path).stem().string();
      ds.path = path;
      ds.format = parse_input_format(o.format);
      suite.datasets.push_back(ds);
    }
    if (o.synthetic) {
      BenchDataset ds;
      ds.id = "synthetic";
      GenParams g;
      g.seed = o.seed;
      ds.generate = g;
      suite.datasets.push_back(ds);
    }
    suite.thresholds = o.thresholds;
    suite.strategies.clear();
    for (const auto& s : o.strategies) suite.strategies.push_back(parse_strategy(s));
    suite.modes.clear();
    for (const auto& m : o.modes) suite.modes.push_back(parse_mode(m));
    suite.maxlen = o.maxlen;
    suite.minlen = o.minlen;
    suite.timeout_seconds = o.timeout;
    suite.threads = o.threads;
  }
  std::vector<BenchRecord> records;
  with_output(o.output, out, [&](std::ostream& s) {
    records = run_bench(suite, [&](const BenchRecord& r) { s << r.to_json().dump() << '\n' << std::flush; });
  });
  if (!o.quiet) write_bench_summary(records, err);
  return exit_ok;
}

struct OracleOptions {
  std::string input;
  std::string format = "spmf";
  std::string min_support;
  std::optional<std::size_t> maxlen;
  std::string mode = "frequent";
  bool itemset_mode = false;
  std::string output;
};

inline int run_oracle(const OracleOptions& o, std::ostream& out) {
  const SequenceDatabase db = load_database(o.input, parse_input_format(o.format));
  MiningParams p;
  p.fmin = Threshold::parse(o.min_support);
  p.maxlen = o.maxlen.value_or(std::max<std::size_t>(1, db.max_length()));
  p.mode = parse_mode(o.mode);
  p.itemset_mode = o.itemset_mode || !db.simple_mode;
  const MiningResult r = oracle::oracle_condensed(db, p);
  with_output(o.output, out, [&](std::ostream& s) { write_results(r, db.alphabet, s); });
  return exit_ok;
}

}  // namespace detail

/// Runs the CLI on `args` (program name excluded).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"seqmine: sequential pattern mining"};
  app.name("seqmine");
  app.require_subcommand(1);

  detail::MineOptions mo;
  detail::GenOptions go;
  detail::BenchOptions bo;
  detail::OracleOptions oo;

  unsigned env_threads = 1;
  try {
    env_threads = detail::default_threads();
  } catch (const UsageError& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_usage;
  }
  mo.threads = env_threads;
  bo.threads = env_threads;

  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent, constrained or condensed patterns");
  mine_cmd->add_option("--input", mo.input, "Database file")->required();
  mine_cmd->add_option("--format", mo.format, "Input format: spmf|aspfacts")->capture_default_str();
  mine_cmd->add_option("--min-support", mo.min_support, "Minimum support: count, percent (10%) or fraction")
      ->required();
  mine_cmd->add_option("--maxlen", mo.maxlen, "Maximum pattern length (default: longest sequence)");
  mine_cmd->add_option("--minlen", mo.minlen, "Minimum pattern length")->capture_default_str();
  mine_cmd->add_option("--strategy", mo.strategy, "Embedding strategy: skip|fill")->capture_default_str();
  mine_cmd->add_option("--mode", mo.mode,
                       "frequent|closed|maximal|backward-closed|backward-maximal")
      ->capture_default_str();
  mine_cmd->add_option("--max-gap", mo.max_gap, "Maximum gap between consecutive elements");
  mine_cmd->add_option("--min-gap", mo.min_gap, "Minimum gap between consecutive elements");
  mine_cmd->add_option("--max-span", mo.max_span, "Maximum embedding span");
  mine_cmd->add_option("--min-span", mo.min_span, "Minimum embedding span");
  mine_cmd->add_option("--must-have", mo.must_have, "Required items (comma separated)")->delimiter(',');
  mine_cmd->add_flag("--must-have-any", mo.must_have_any, "Require at least one --must-have item");
  mine_cmd->add_option("--cannot-have", mo.cannot_have, "Forbidden items (comma separated)")->delimiter(',');
  mine_cmd->add_option("--super-pattern", mo.super_patterns, "Required sub-pattern, e.g. \"a c\" (repeatable)");
  mine_cmd->add_flag("--super-pattern-all", mo.super_pattern_all, "Require every --super-pattern");
  mine_cmd->add_option("--regex", mo.regex, "Regular expression over item labels");
  mine_cmd->add_option("--cost-file", mo.cost_file, "Item costs, label<TAB>integer per line");
  mine_cmd->add_option("--agg", mo.agg, "Aggregate: sum|min|max|avg");
  mine_cmd->add_option("--agg-cmp", mo.agg_cmp, "Comparator: < <= > >= == !=")->capture_default_str();
  mine_cmd->add_option("--agg-threshold", mo.agg_threshold, "Aggregate threshold");
  mine_cmd->add_flag("--itemset-mode", mo.itemset_mode, "Mine patterns made of itemsets");
  mine_cmd->add_option("--threads", mo.threads, "Worker threads (default: SEQMINE_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_option("--timeout", mo.timeout, "Timeout in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  mine_cmd->add_option("--output", mo.output, "Result file (default: stdout)");
  mine_cmd->add_option("--emit-asp-facts", mo.emit_asp_facts, "Also write the database as seq/3 facts");
  mine_cmd->add_flag("--strict-condensed", mo.strict_condensed,
                     "Evaluate closure/maximality within the constrained output");
  mine_cmd->add_flag("--no-local-pruning", mo.no_local_pruning, "Extend with every frequent item");
  mine_cmd->add_flag("--stats", mo.stats, "Print search statistics to stderr");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database with planted patterns");
  GenParams& g = go.params;
  gen_cmd->add_option("-D,--num-sequences", g.num_sequences, "Number of sequences")->capture_default_str();
  gen_cmd->add_option("-l,--mean-length", g.mean_length, "Mean sequence length")->capture_default_str();
  gen_cmd->add_option("-n,--num-patterns", g.num_patterns, "Number of planted patterns")->capture_default_str();
  gen_cmd->add_option("--pattern-length", g.mean_pattern_length, "Mean planted pattern length")
      ->capture_default_str();
  gen_cmd->add_option("--min-fraction", g.min_fraction, "Fraction of sequences receiving each pattern")
      ->capture_default_str();
  gen_cmd->add_option("-k,--alphabet", g.alphabet_size, "Alphabet size")->capture_default_str();
  gen_cmd->add_option("--item-mu", g.item_mu, "Item popularity mean")->capture_default_str();
  gen_cmd->add_option("--item-sigma", g.item_sigma, "Item popularity deviation")->capture_default_str();
  gen_cmd->add_option("--seed", g.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--max-length", go.max_length, "Cap on sequence length");
  gen_cmd->add_option("--output", go.output, "SPMF output file (default: stdout)");
  gen_cmd->add_option("--manifest", go.manifest, "Planted pattern manifest (JSON lines)");

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("--suite", bo.suite, "Suite definition (JSON)");
  bench_cmd->add_option("--input", bo.inputs, "Dataset file (repeatable)");
  bench_cmd->add_option("--format", bo.format, "Input format: spmf|aspfacts")->capture_default_str();
  bench_cmd->add_flag("--synthetic", bo.synthetic, "Add a generated dataset with default parameters");
  bench_cmd->add_option("--seed", bo.seed, "Seed for --synthetic")->capture_default_str();
  bench_cmd->add_option("--min-support", bo.thresholds, "Thresholds (comma separated)")->delimiter(',');
  bench_cmd->add_option("--strategy", bo.strategies, "Strategies (comma separated)")->delimiter(',');
  bench_cmd->add_option("--mode", bo.modes, "Modes (comma separated)")->delimiter(',');
  bench_cmd->add_option("--maxlen", bo.maxlen, "Maximum pattern length");
  bench_cmd->add_option("--minlen", bo.minlen, "Minimum pattern length")->capture_default_str();
  bench_cmd->add_option("--timeout", bo.timeout, "Per-cell timeout in seconds")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--threads", bo.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output", bo.output, "Record file (default: stdout)");
  bench_cmd->add_flag("--quiet", bo.quiet, "Suppress the summary table");

  auto* oracle_cmd = app.add_subcommand("oracle", "");
  oracle_cmd->group("");
  oracle_cmd->add_option("--input", oo.input)->required();
  oracle_cmd->add_option("--format", oo.format);
  oracle_cmd->add_option("--min-support", oo.min_support)->required();
  oracle_cmd->add_option("--maxlen", oo.maxlen);
  oracle_cmd->add_option("--mode", oo.mode);
  oracle_cmd->add_flag("--itemset-mode", oo.itemset_mode);
  oracle_cmd->add_option("--output", oo.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*mine_cmd) return detail::run_mine(mo, out, err);
    if (*gen_cmd) return detail::run_gen(go, out);
    if (*bench_cmd) return detail::run_bench_command(bo, out, err);
    if (*oracle_cmd) return detail::run_oracle(oo, out);
  } catch (const UsageError& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_usage;
  } catch (const DataError& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_data;
  } catch (const std::invalid_argument& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "seqmine: " << e.what() << '\n';
    return exit_data;
  }
  return exit_usage;
}

}  // namespace seqmine
