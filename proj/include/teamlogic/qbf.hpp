#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamlogic/errors.hpp"
#include "teamlogic/evaluate.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/team.hpp"

namespace teamlogic {

// Closed prenex QBF: 'E x1 A x2 : (x1 | -x2)'. Each quantifier letter may
// bind several variables; '-' negates a variable of the matrix; the matrix
// is built from literals, & and | with the usual precedence. Every matrix
// variable must be quantified and quantified variables are distinct.

struct Quantifier {
  bool existential;
  PropSymbol variable;
};

struct QbfInstance {
  std::vector<Quantifier> prefix;
  Formula matrix;  // literals, &, |

  SymbolList bound_variables() const {
    SymbolList out;
    out.reserve(prefix.size());
    for (const auto& q : prefix) out.push_back(q.variable);
    return out;
  }
};

inline constexpr std::size_t kMaxQbfEvalVars = 16;
inline constexpr std::size_t kDefaultTqbfVars = 12;

namespace detail {

class QbfParser {
 public:
  explicit QbfParser(std::string_view text) : text_(text) {}

  QbfInstance run() {
    std::vector<Quantifier> prefix;
    while (true) {
      skip_space();
      std::string word = peek_word();
      if (word != "E" && word != "A") break;
      take_word();
      bool existential = word == "E";
      bool any = false;
      while (true) {
        skip_space();
        std::string var = peek_word();
        if (var.empty() || var == "E" || var == "A") break;
        take_word();
        prefix.push_back({existential, PropSymbol(var)});
        any = true;
      }
      if (!any) fail("quantifier '" + word + "' binds no variable");
    }
    if (prefix.empty()) fail("expected a quantifier prefix 'E x ...' or 'A x ...'");
    skip_space();
    if (!accept(':')) fail("expected ':' between prefix and matrix");
    Formula matrix = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after the matrix");

    QbfInstance out{std::move(prefix), matrix};
    validate(out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  static bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
            text_[pos_] == '\n'))
      ++pos_;
  }

  std::string peek_word() const {
    std::size_t i = pos_;
    std::string out;
    while (i < text_.size() && is_word_char(text_[i])) out += text_[i++];
    return out;
  }

  void take_word() {
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = atom();
    while (accept('&')) f = Formula::conj(f, atom());
    return f;
  }

  Formula atom() {
    skip_space();
    if (accept('(')) {
      Formula f = disjunction();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (accept('-')) {
      skip_space();
      std::string word = peek_word();
      if (word.empty() || word == "E" || word == "A")
        fail("expected a variable after '-'");
      take_word();
      return Formula::neg_prop(PropSymbol(word));
    }
    std::string word = peek_word();
    if (word.empty() || word == "E" || word == "A") fail("expected a matrix literal");
    take_word();
    return Formula::prop(PropSymbol(word));
  }

  void validate(const QbfInstance& q) const {
    for (std::size_t i = 0; i < q.prefix.size(); ++i)
      for (std::size_t j = i + 1; j < q.prefix.size(); ++j)
        if (q.prefix[i].variable == q.prefix[j].variable)
          throw ParseError("variable '" + q.prefix[i].variable.name() +
                           "' is quantified twice");
    SymbolList bound = q.bound_variables();
    for (const auto& v : q.matrix.variables()) {
      bool found = false;
      for (const auto& b : bound)
        if (b == v) { found = true; break; }
      if (!found)
        throw ParseError("matrix variable '" + v.name() + "' is not quantified");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QbfInstance parse_qbf(std::string_view text) {
  return detail::QbfParser(text).run();
}

// Truth of a closed prenex QBF by direct recursion on the prefix.
inline bool qbf_eval(const QbfInstance& q,
                     std::size_t max_vars = kMaxQbfEvalVars) {
  std::size_t n = q.prefix.size();
  if (n > std::min<std::size_t>(max_vars, kMaxQbfEvalVars))
    throw LimitError("QBF evaluation limited to " +
                     std::to_string(std::min<std::size_t>(max_vars,
                                                          kMaxQbfEvalVars)) +
                     " variables");
  SymbolList domain = q.bound_variables();
  auto rec = [&](auto&& self, std::size_t index, std::uint64_t code) -> bool {
    if (index == n) return detail::eval_classical(q.matrix, domain, code);
    std::uint64_t bit = std::uint64_t{1} << (n - 1 - index);
    bool v0 = self(self, index + 1, code);
    bool v1 = self(self, index + 1, code | bit);
    return q.prefix[index].existential ? (v0 || v1) : (v0 && v1);
  };
  return rec(rec, 0, 0);
}

namespace detail {

inline void check_index_range(const SymbolList& index_vars, std::uint64_t i) {
  if (index_vars.empty())
    throw std::invalid_argument("index tuple must be nonempty");
  if (index_vars.size() < 64 && (i >> index_vars.size()) != 0)
    throw std::invalid_argument("index " + std::to_string(i) +
                                " does not fit in " +
                                std::to_string(index_vars.size()) + " bits");
}

}  // namespace detail

// r̄ = i, as a conjunction of index literals, most significant bit first.
inline Formula index_eq(const SymbolList& index_vars, std::uint64_t i) {
  detail::check_index_range(index_vars, i);
  Formula out = [&] {
    bool bit = (i >> (index_vars.size() - 1)) & 1u;
    return bit ? Formula::prop(index_vars[0]) : Formula::neg_prop(index_vars[0]);
  }();
  for (std::size_t j = 1; j < index_vars.size(); ++j) {
    bool bit = (i >> (index_vars.size() - 1 - j)) & 1u;
    Formula lit =
        bit ? Formula::prop(index_vars[j]) : Formula::neg_prop(index_vars[j]);
    out = Formula::conj(out, lit);
  }
  return out;
}

// r̄ ≠ i: the dual disjunction of flipped literals. A disjunction of
// literals is flat, so a team satisfies this exactly when none of its
// members encodes i.
inline Formula index_neq(const SymbolList& index_vars, std::uint64_t i) {
  detail::check_index_range(index_vars, i);
  Formula out = [&] {
    bool bit = (i >> (index_vars.size() - 1)) & 1u;
    return bit ? Formula::neg_prop(index_vars[0]) : Formula::prop(index_vars[0]);
  }();
  for (std::size_t j = 1; j < index_vars.size(); ++j) {
    bool bit = (i >> (index_vars.size() - 1 - j)) & 1u;
    Formula lit =
        bit ? Formula::neg_prop(index_vars[j]) : Formula::prop(index_vars[j]);
    out = Formula::disj(out, lit);
  }
  return out;
}

// Quantifier gadgets from the hardness arguments. Dependence-atom guards
// use the doubled shape (the guard both selects and constrains a part);
// index guards pick out a single team member, where the plain shape
// suffices:
//   ∃, dep guard: g | (g & inner)          ∃, index guard: g | inner
//   ∀, dep guard: ~g otimes (~g ovee inner) ∀, index guard: ~g otimes inner
inline Formula quantifier_gadget(bool existential, const Formula& guard,
                                 const Formula& inner) {
  bool dep_guard = guard.kind() == Kind::Dep;
  if (existential) {
    if (dep_guard) return Formula::disj(guard, Formula::conj(guard, inner));
    return Formula::disj(guard, inner);
  }
  Formula not_guard = Formula::class_neg(guard);
  if (dep_guard)
    return Formula::tensor(not_guard, Formula::int_disj(not_guard, inner));
  return Formula::tensor(not_guard, inner);
}

// A model checking instance: decide team ⊨ formula.
struct McInstance {
  Team team;
  Formula formula;
};

struct TqbfOptions {
  // The matrix's | must act Boolean on the index team. ovee is Boolean by
  // definition; the split | variant exists for inspection only and carries
  // no equivalence claim.
  bool split_matrix_or = false;
  std::size_t max_vars = kDefaultTqbfVars;
};

// Reduce a closed prenex QBF with n variables to model checking: the team
// holds the index codes 1..n over ⌊log2 n⌋ + 1 index variables r0, r1, ...
// (r0 most significant); quantifier i either drops index i from the team
// (existential split) or demands the remainder satisfies the rest both ways
// (universal tensor); matrix literal x_i becomes "index i present" (~ of
// index_neq), its negation "index i absent". The QBF is true iff the team
// satisfies the formula.
inline McInstance tqbf_to_mc(const QbfInstance& q, const TqbfOptions& opt = {}) {
  std::size_t n = q.prefix.size();
  if (n > opt.max_vars)
    throw LimitError("TQBF reduction limited to " +
                     std::to_string(opt.max_vars) + " quantified variables");

  std::size_t bits = 1;
  while ((std::uint64_t{1} << bits) <= n) ++bits;  // bits = ⌊log2 n⌋ + 1
  SymbolList index_vars;
  index_vars.reserve(bits);
  for (std::size_t j = 0; j < bits; ++j)
    index_vars.emplace_back("r" + std::to_string(j));

  std::vector<std::uint64_t> codes;
  codes.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) codes.push_back(i);
  Team team(index_vars, std::move(codes));

  // Matrix translation: variable positions are 1-based prefix indices.
  auto var_index = [&](const PropSymbol& v) -> std::uint64_t {
    for (std::size_t i = 0; i < q.prefix.size(); ++i)
      if (q.prefix[i].variable == v) return i + 1;
    throw std::invalid_argument("matrix variable '" + v.name() +
                                "' is not quantified");
  };
  auto translate = [&](auto&& self, const Formula& f) -> Formula {
    switch (f.kind()) {
      case Kind::Prop:
        return Formula::class_neg(index_neq(index_vars, var_index(f.symbol())));
      case Kind::NegProp:
        return index_neq(index_vars, var_index(f.symbol()));
      case Kind::And:
        return Formula::conj(self(self, f.left()), self(self, f.right()));
      case Kind::Or: {
        Formula l = self(self, f.left());
        Formula r = self(self, f.right());
        return opt.split_matrix_or ? Formula::disj(l, r)
                                   : Formula::int_disj(l, r);
      }
      default:
        throw std::invalid_argument("QBF matrix must use literals, & and |");
    }
  };

  Formula body = translate(translate, q.matrix);
  for (std::size_t i = n; i >= 1; --i)
    body = quantifier_gadget(q.prefix[i - 1].existential,
                             index_eq(index_vars, i), body);
  return {std::move(team), std::move(body)};
}

}  // namespace teamlogic
