#pragma once

// Regular expressions over item labels, compiled to a DFA over item ids.
//
// Syntax: labels (maximal runs of [A-Za-z0-9_], or "quoted"), `.` for any
// item, postfix `*` `+` `?`, alternation `|`, grouping `( )`, and implicit
// concatenation. A run that is not a label but whose characters are all
// single-character labels is read as their concatenation, so `abc` means
// `a b c` over the alphabet {a, b, c}.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "seqmine/types.hpp"

namespace seqmine {

class RegexDfa {
 public:
  static constexpr int dead = -1;

  int start() const noexcept { return 0; }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }

  int next(int state, ItemId item) const {
    if (state < 0 || item >= alphabet_size_) return dead;
    return table_[static_cast<std::size_t>(state) * alphabet_size_ + item];
  }

  bool accepting(int state) const { return state >= 0 && accepting_[static_cast<std::size_t>(state)]; }
  /// An accepting state is reachable from `state`.
  bool live(int state) const { return state >= 0 && live_[static_cast<std::size_t>(state)]; }

  /// Runs the DFA over a simple (singleton-element) pattern.
  int run(const Pattern& p) const {
    int state = start();
    for (const auto& e : p.elements) {
      if (e.size() != 1) throw UsageError("regular expressions apply to simple patterns only");
      state = next(state, e.front());
      if (state == dead) break;
    }
    return state;
  }

 private:
  friend class RegexCompiler;
  std::size_t alphabet_size_ = 0;
  std::vector<int> table_;
  std::vector<bool> accepting_;
  std::vector<bool> live_;
};

struct RegexVerdict {
  bool viable = false;    ///< some extension of the pattern can be accepted
  bool accepted = false;  ///< the pattern itself is accepted
};

inline RegexVerdict regex_check(const Pattern& p, const RegexDfa& dfa) {
  const int state = dfa.run(p);
  return {dfa.live(state), dfa.accepting(state)};
}

class RegexCompiler {
 public:
  RegexCompiler(std::string expr, const Alphabet& alphabet)
      : expr_(std::move(expr)), alphabet_(alphabet) {}

  RegexDfa compile() {
    tokenize();
    pos_ = 0;
    if (tokens_.empty()) throw UsageError("regex: empty expression");
    const Fragment whole = parse_alternation();
    if (pos_ != tokens_.size()) throw UsageError("regex: unexpected '" + describe(tokens_[pos_]) + "'");
    accept_state_ = whole.out;
    return determinize(whole.in);
  }

 private:
  enum class Tok { label, any, star, plus, question, bar, lparen, rparen };
  struct Token {
    Tok kind;
    ItemId item = 0;
  };
  static constexpr int epsilon = -1;
  static constexpr int any_item = -2;
  struct Edge {
    int symbol;  // item id, epsilon or any_item
    int to;
  };
  struct Fragment {
    int in;
    int out;
  };

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::label: return alphabet_.label(t.item);
      case Tok::any: return ".";
      case Tok::star: return "*";
      case Tok::plus: return "+";
      case Tok::question: return "?";
      case Tok::bar: return "|";
      case Tok::lparen: return "(";
      case Tok::rparen: return ")";
    }
    return "?";
  }

  static bool label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

  void push_label(const std::string& text) {
    const long long id = alphabet_.find(text);
    if (id >= 0) {
      tokens_.push_back({Tok::label, static_cast<ItemId>(id)});
      return;
    }
    std::vector<ItemId> split;
    for (char c : text) {
      const long long cid = alphabet_.find(std::string(1, c));
      if (cid < 0) throw UsageError("regex: label '" + text + "' is not in the alphabet");
      split.push_back(static_cast<ItemId>(cid));
    }
    for (ItemId i : split) tokens_.push_back({Tok::label, i});
  }

  void tokenize() {
    tokens_.clear();
    std::size_t i = 0;
    while (i < expr_.size()) {
      const char c = expr_[i];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++i;
      } else if (label_char(c)) {
        std::size_t j = i;
        while (j < expr_.size() && label_char(expr_[j])) ++j;
        push_label(expr_.substr(i, j - i));
        i = j;
      } else if (c == '"') {
        const auto close = expr_.find('"', i + 1);
        if (close == std::string::npos) throw UsageError("regex: unterminated quoted label");
        const std::string text = expr_.substr(i + 1, close - i - 1);
        const long long id = alphabet_.find(text);
        if (id < 0) throw UsageError("regex: label '" + text + "' is not in the alphabet");
        tokens_.push_back({Tok::label, static_cast<ItemId>(id)});
        i = close + 1;
      } else {
        Tok kind;
        switch (c) {
          case '.': kind = Tok::any; break;
          case '*': kind = Tok::star; break;
          case '+': kind = Tok::plus; break;
          case '?': kind = Tok::question; break;
          case '|': kind = Tok::bar; break;
          case '(': kind = Tok::lparen; break;
          case ')': kind = Tok::rparen; break;
          default: throw UsageError(std::string("regex: unexpected character '") + c + "'");
        }
        tokens_.push_back({kind});
        ++i;
      }
    }
  }

  int new_state() {
    edges_.emplace_back();
    return static_cast<int>(edges_.size()) - 1;
  }
  void link(int from, int symbol, int to) { edges_[static_cast<std::size_t>(from)].push_back({symbol, to}); }

  bool peek(Tok kind) const { return pos_ < tokens_.size() && tokens_[pos_].kind == kind; }

  Fragment parse_alternation() {
    Fragment left = parse_concatenation();
    while (peek(Tok::bar)) {
      ++pos_;
      const Fragment right = parse_concatenation();
      const int in = new_state();
      const int out = new_state();
      link(in, epsilon, left.in);
      link(in, epsilon, right.in);
      link(left.out, epsilon, out);
      link(right.out, epsilon, out);
      left = {in, out};
    }
    return left;
  }

  bool starts_atom() const {
    return peek(Tok::label) || peek(Tok::any) || peek(Tok::lparen);
  }

  Fragment parse_concatenation() {
    if (!starts_atom()) {
      if (pos_ < tokens_.size()) throw UsageError("regex: unexpected '" + describe(tokens_[pos_]) + "'");
      throw UsageError("regex: missing operand");
    }
    Fragment left = parse_postfix();
    while (starts_atom()) {
      const Fragment right = parse_postfix();
      link(left.out, epsilon, right.in);
      left = {left.in, right.out};
    }
    return left;
  }

  Fragment parse_postfix() {
    Fragment f = parse_atom();
    while (peek(Tok::star) || peek(Tok::plus) || peek(Tok::question)) {
      const Tok op = tokens_[pos_++].kind;
      const int in = new_state();
      const int out = new_state();
      link(in, epsilon, f.in);
      link(f.out, epsilon, out);
      if (op != Tok::plus) link(in, epsilon, out);
      if (op != Tok::question) link(f.out, epsilon, f.in);
      f = {in, out};
    }
    return f;
  }

  Fragment parse_atom() {
    const Token t = tokens_[pos_++];
    if (t.kind == Tok::lparen) {
      const Fragment inner = parse_alternation();
      if (!peek(Tok::rparen)) throw UsageError("regex: missing ')'");
      ++pos_;
      return inner;
    }
    const int in = new_state();
    const int out = new_state();
    link(in, t.kind == Tok::any ? any_item : static_cast<int>(t.item), out);
    return {in, out};
  }

  std::set<int> closure(std::set<int> states) const {
    std::vector<int> stack(states.begin(), states.end());
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (const Edge& e : edges_[static_cast<std::size_t>(s)]) {
        if (e.symbol == epsilon && states.insert(e.to).second) stack.push_back(e.to);
      }
    }
    return states;
  }

  RegexDfa determinize(int nfa_start) const {
    const std::size_t k = alphabet_.size();
    RegexDfa dfa;
    dfa.alphabet_size_ = k;
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> subsets;
    auto intern = [&](std::set<int> subset) {
      auto [it, inserted] = ids.emplace(subset, static_cast<int>(subsets.size()));
      if (inserted) subsets.push_back(std::move(subset));
      return it->second;
    };
    intern(closure({nfa_start}));
    for (std::size_t d = 0; d < subsets.size(); ++d) {
      dfa.table_.resize((d + 1) * k, RegexDfa::dead);
      for (ItemId item = 0; item < k; ++item) {
        std::set<int> moved;
        for (int s : subsets[d]) {
          for (const Edge& e : edges_[static_cast<std::size_t>(s)]) {
            if (e.symbol == static_cast<int>(item) || e.symbol == any_item) moved.insert(e.to);
          }
        }
        if (moved.empty()) continue;
        const int target = intern(closure(std::move(moved)));
        dfa.table_[d * k + item] = target;
      }
    }
    const std::size_t n = subsets.size();
    dfa.table_.resize(n * k, RegexDfa::dead);
    dfa.accepting_.assign(n, false);
    for (std::size_t d = 0; d < n; ++d) dfa.accepting_[d] = subsets[d].count(accept_state_) != 0;

    // Live states: reverse reachability from accepting states.
    std::vector<std::vector<int>> reverse(n);
    for (std::size_t d = 0; d < n; ++d) {
      for (ItemId item = 0; item < k; ++item) {
        const int t = dfa.table_[d * k + item];
        if (t >= 0) reverse[static_cast<std::size_t>(t)].push_back(static_cast<int>(d));
      }
    }
    dfa.live_ = dfa.accepting_;
    std::vector<int> stack;
    for (std::size_t d = 0; d < n; ++d)
      if (dfa.live_[d]) stack.push_back(static_cast<int>(d));
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int p : reverse[static_cast<std::size_t>(s)]) {
        if (!dfa.live_[static_cast<std::size_t>(p)]) {
          dfa.live_[static_cast<std::size_t>(p)] = true;
          stack.push_back(p);
        }
      }
    }
    return dfa;
  }

  std::string expr_;
  const Alphabet& alphabet_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::vector<Edge>> edges_;
  int accept_state_ = 0;
};

inline RegexDfa regex_compile(const std::string& expr, const Alphabet& alphabet) {
  return RegexCompiler(expr, alphabet).compile();
}

}  // namespace seqmine
