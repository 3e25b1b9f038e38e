#pragma once

// External formats: SPMF sequence text, ASP `seq/3` facts and JSON-lines
// mining results.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "seqmine/result.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

namespace detail {

struct RawSequence {
  std::vector<std::vector<long long>> elements;  // raw codes per itemset
};

inline void remap_into(SequenceDatabase& db, const std::vector<RawSequence>& raw,
                       const std::unordered_map<long long, ItemId>& code_to_id) {
  db.sequences.clear();
  db.sequences.reserve(raw.size());
  for (std::size_t s = 0; s < raw.size(); ++s) {
    Sequence seq;
    seq.sid = static_cast<std::uint32_t>(s + 1);
    seq.elements.reserve(raw[s].elements.size());
    for (const auto& codes : raw[s].elements) {
      Itemset e;
      e.reserve(codes.size());
      for (long long c : codes) e.push_back(code_to_id.at(c));
      std::sort(e.begin(), e.end());
      seq.elements.push_back(std::move(e));
    }
    db.sequences.push_back(std::move(seq));
  }
  db.validate();
}

}  // namespace detail

/// Parses SPMF sequence text. `-1` ends an itemset, `-2` ends a sequence
/// (and any pending itemset). `@ITEM=<code>=<label>` lines name items; other
/// `@`, `#` and `%` lines are ignored.
inline SequenceDatabase read_spmf(std::istream& in) {
  std::vector<detail::RawSequence> raw;
  std::map<long long, std::string> declared;
  std::vector<long long> first_seen;
  std::unordered_map<long long, bool> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const char lead = line[start];
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (lead == '#' || lead == '%') continue;
    if (lead == '@') {
      const std::string_view body = std::string_view(line).substr(start);
      if (body.rfind("@ITEM=", 0) == 0) {
        const auto rest = body.substr(6);
        const auto eq = rest.find('=');
        long long code = 0;
        if (eq == std::string_view::npos || !detail::parse_integer(rest.substr(0, eq), code)) {
          throw DataError(where + "malformed @ITEM declaration");
        }
        declared[code] = std::string(rest.substr(eq + 1));
      }
      continue;
    }

    std::istringstream tokens(line);
    std::string tok;
    detail::RawSequence seq;
    std::vector<long long> pending;
    bool closed = false;
    while (tokens >> tok) {
      if (closed) throw DataError(where + "tokens after sequence terminator -2");
      long long v = 0;
      if (!detail::parse_integer(tok, v)) throw DataError(where + "non-integer token '" + tok + "'");
      if (v == -1) {
        if (pending.empty()) throw DataError(where + "empty itemset before -1");
        seq.elements.push_back(std::move(pending));
        pending.clear();
      } else if (v == -2) {
        if (!pending.empty()) {
          seq.elements.push_back(std::move(pending));
          pending.clear();
        }
        if (seq.elements.empty()) throw DataError(where + "empty sequence");
        closed = true;
      } else if (v < 0) {
        throw DataError(where + "invalid item code " + tok);
      } else {
        if (std::find(pending.begin(), pending.end(), v) != pending.end()) {
          throw DataError(where + "duplicate item " + tok + " in itemset");
        }
        pending.push_back(v);
        if (!seen[v]) {
          seen[v] = true;
          first_seen.push_back(v);
        }
      }
    }
    if (!closed) throw DataError(where + "missing -2 at end of line");
    raw.push_back(std::move(seq));
  }

  std::vector<std::string> labels;
  labels.reserve(first_seen.size());
  for (long long c : first_seen) {
    auto it = declared.find(c);
    labels.push_back(it != declared.end() ? it->second : std::to_string(c));
  }
  SequenceDatabase db;
  try {
    db.alphabet = Alphabet::from_labels(labels, first_seen);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  std::unordered_map<long long, ItemId> code_to_id;
  for (ItemId id = 0; id < db.alphabet.size(); ++id) code_to_id[db.alphabet.code(id)] = id;
  detail::remap_into(db, raw, code_to_id);
  return db;
}

inline SequenceDatabase read_spmf(const std::string& text) {
  std::istringstream in(text);
  return read_spmf(in);
}

/// Canonical SPMF: items in id order, every itemset closed by -1, sequences by
/// -2. Item names are declared with @ITEM lines when any label differs from
/// its code.
inline void write_spmf(const SequenceDatabase& db, std::ostream& out) {
  bool named = false;
  for (ItemId i = 0; i < db.alphabet.size(); ++i) {
    named = named || db.alphabet.label(i) != std::to_string(db.alphabet.code(i));
  }
  if (named) {
    out << "@CONVERTED_FROM_TEXT\n";
    for (ItemId i = 0; i < db.alphabet.size(); ++i) {
      out << "@ITEM=" << db.alphabet.code(i) << '=' << db.alphabet.label(i) << '\n';
    }
  }
  for (const auto& s : db.sequences) {
    bool first = true;
    for (const auto& e : s.elements) {
      for (ItemId i : e) {
        if (!first) out << ' ';
        out << db.alphabet.code(i);
        first = false;
      }
      out << " -1";
    }
    out << " -2\n";
  }
}

inline std::string write_spmf(const SequenceDatabase& db) {
  std::ostringstream out;
  write_spmf(db, out);
  return out.str();
}

namespace detail {

inline bool is_bare_asp_constant(const std::string& label) {
  if (label.empty() || !(label[0] >= 'a' && label[0] <= 'z')) return false;
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

inline std::string asp_term(const std::string& label) {
  if (is_bare_asp_constant(label)) return label;
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

class AspLexer {
 public:
  explicit AspLexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void expect(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) {
      fail("expected '" + std::string(word) + "'");
    }
    pos_ += word.size();
  }

  long long integer() {
    skip_space();
    const std::size_t begin = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    long long v = 0;
    if (!parse_integer(text_.substr(begin, pos_ - begin), v)) fail("expected integer");
    return v;
  }

  std::string term() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected item term");
    const char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      std::string out;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char ch = text_[pos_++];
        if (ch == '\\' && pos_ < text_.size()) {
          ch = text_[pos_++];
          if (ch == 'n') ch = '\n';
        }
        out += ch;
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      return out;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)) != 0) {
      return std::to_string(integer());
    }
    if (c >= 'a' && c <= 'z') {
      const std::size_t begin = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      return std::string(text_.substr(begin, pos_ - begin));
    }
    fail("expected item term");
    return {};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("ASP facts line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

/// Parses `seq(T,P,I).` facts. Sequence ids are renumbered densely in
/// increasing T order; positions must be dense and start at 1.
inline SequenceDatabase read_asp_facts(std::string_view text) {
  detail::AspLexer lex(text);
  std::map<long long, std::map<long long, std::set<std::string>>> facts;
  while (!lex.at_end()) {
    lex.expect("seq");
    lex.expect("(");
    const long long t = lex.integer();
    lex.expect(",");
    const long long p = lex.integer();
    lex.expect(",");
    std::string label = lex.term();
    lex.expect(")");
    lex.expect(".");
    facts[t][p].insert(std::move(label));
  }

  std::vector<std::string> labels;
  std::set<std::string> distinct;
  for (const auto& [t, positions] : facts)
    for (const auto& [p, items] : positions)
      for (const auto& l : items)
        if (distinct.insert(l).second) labels.push_back(l);

  bool integer_labels = true;
  std::vector<long long> codes;
  for (const auto& l : labels) {
    long long v = 0;
    integer_labels = integer_labels && detail::parse_integer(l, v) && v >= 0;
    codes.push_back(v);
  }
  SequenceDatabase db;
  db.alphabet = Alphabet::from_labels(labels, integer_labels ? codes : std::vector<long long>{});

  std::uint32_t sid = 0;
  for (const auto& [t, positions] : facts) {
    Sequence s;
    s.sid = ++sid;
    long long expected = 1;
    for (const auto& [p, items] : positions) {
      if (p != expected) {
        throw DataError("ASP facts: sequence " + std::to_string(t) +
                        " has non-dense positions (missing " + std::to_string(expected) + ")");
      }
      ++expected;
      Itemset e;
      for (const auto& l : items) e.push_back(db.alphabet.at(l));
      std::sort(e.begin(), e.end());
      s.elements.push_back(std::move(e));
    }
    db.sequences.push_back(std::move(s));
  }
  db.validate();
  return db;
}

/// One `seq(T,P,I).` fact per line, ordered by (T, P, item id).
inline void write_asp_facts(const SequenceDatabase& db, std::ostream& out) {
  for (const auto& s : db.sequences) {
    for (Pos p = 1; p <= s.size(); ++p) {
      for (ItemId i : s.at(p)) {
        out << "seq(" << s.sid << ',' << p << ',' << detail::asp_term(db.alphabet.label(i)) << ").\n";
      }
    }
  }
}

inline std::string write_asp_facts(const SequenceDatabase& db) {
  std::ostringstream out;
  write_asp_facts(db, out);
  return out.str();
}

enum class InputFormat { spmf, asp_facts };

inline InputFormat parse_input_format(const std::string& text) {
  if (text == "spmf") return InputFormat::spmf;
  if (text == "aspfacts" || text == "asp") return InputFormat::asp_facts;
  throw UsageError("unknown input format '" + text + "' (expected spmf|aspfacts)");
}

inline SequenceDatabase load_database(const std::string& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  if (format == InputFormat::spmf) return read_spmf(in);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_asp_facts(text);
}

/// JSON record for one result entry, e.g.
/// {"pattern":[["a"],["c"]],"support":5,"support_ids":[1,2,4,6,7]}
inline nlohmann::ordered_json result_record(const ResultEntry& entry, const Alphabet& alphabet) {
  nlohmann::ordered_json pattern = nlohmann::ordered_json::array();
  for (const auto& e : entry.pattern.elements) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (ItemId i : e) labels.push_back(alphabet.label(i));
    pattern.push_back(std::move(labels));
  }
  nlohmann::ordered_json rec;
  rec["pattern"] = std::move(pattern);
  rec["support"] = entry.support;
  rec["support_ids"] = entry.support_ids;
  return rec;
}

/// Writes one record per line in the result's (canonical) order.
inline void write_results(const MiningResult& result, const Alphabet& alphabet, std::ostream& out) {
  for (const auto& entry : result.entries) {
    out << result_record(entry, alphabet).dump() << '\n';
  }
  out.flush();
  if (!out) throw DataError("failed to write results");
}

inline std::string write_results(const MiningResult& result, const Alphabet& alphabet) {
  std::ostringstream out;
  write_results(result, alphabet, out);
  return out.str();
}

/// Parses JSON-lines records back into result entries against `alphabet`.
inline MiningResult read_results(std::istream& in, const Alphabet& alphabet) {
  MiningResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      ResultEntry entry;
      for (const auto& element : rec.at("pattern")) {
        Itemset e;
        for (const auto& label : element) e.push_back(alphabet.at(label.get<std::string>()));
        std::sort(e.begin(), e.end());
        entry.pattern.elements.push_back(std::move(e));
      }
      entry.support = rec.at("support").get<std::size_t>();
      entry.support_ids = rec.at("support_ids").get<std::vector<std::uint32_t>>();
      result.entries.push_back(std::move(entry));
    } catch (const std::exception& e) {
      throw DataError("result line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return result;
}

inline MiningResult read_results(const std::string& text, const Alphabet& alphabet) {
  std::istringstream in(text);
  return read_results(in, alphabet);
}

/// Parses pattern text such as "a c", "ac", "(ab) c" or "12 7" against an
/// alphabet. Elements are separated by whitespace or commas; parentheses
/// group an itemset. A token that is not a label but whose characters are all
/// single-character labels is read character by character.
inline Pattern parse_pattern(const std::string& text, const Alphabet& alphabet) {
  auto resolve = [&](const std::string& token) {
    std::vector<ItemId> ids;
    const long long id = alphabet.find(token);
    if (id >= 0) {
      ids.push_back(static_cast<ItemId>(id));
      return ids;
    }
    for (char c : token) {
      const long long cid = alphabet.find(std::string(1, c));
      if (cid < 0) throw UsageError("pattern '" + text + "': unknown label '" + token + "'");
      ids.push_back(static_cast<ItemId>(cid));
    }
    return ids;
  };
  Pattern p;
  bool in_group = false;
  Itemset group;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == ',') {
      ++i;
    } else if (c == '(') {
      if (in_group) throw UsageError("pattern '" + text + "': nested '('");
      in_group = true;
      group.clear();
      ++i;
    } else if (c == ')') {
      if (!in_group || group.empty()) throw UsageError("pattern '" + text + "': unexpected ')'");
      std::sort(group.begin(), group.end());
      group.erase(std::unique(group.begin(), group.end()), group.end());
      p.elements.push_back(group);
      in_group = false;
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])) == 0 && text[j] != ',' &&
             text[j] != '(' && text[j] != ')')
        ++j;
      for (ItemId id : resolve(text.substr(i, j - i))) {
        if (in_group) {
          group.push_back(id);
        } else {
          p.elements.push_back({id});
        }
      }
      i = j;
    }
  }
  if (in_group) throw UsageError("pattern '" + text + "': missing ')'");
  if (p.empty()) throw UsageError("empty pattern");
  return p;
}

}  // namespace seqmine
