#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace teamlogic {

// ---------------------------------------------------------------------------
// PropSymbol: a propositional variable name.
//
// Valid names match [A-Za-z_][A-Za-z0-9_]* and must not collide with the
// keywords of the concrete syntax. Names of the form __f<N> are reserved for
// generated fresh variables; they are legal symbols (translations produce
// them) but the parser rejects them in user input only insofar as they are
// ordinary identifiers, i.e. it does not. Uniqueness against them is the
// fresh pool's job.
// ---------------------------------------------------------------------------

class PropSymbol {
 public:
  PropSymbol() = delete;

  explicit PropSymbol(std::string name) : name_(std::move(name)) {
    if (!valid_name(name_))
      throw std::invalid_argument("invalid variable name: '" + name_ + "'");
  }

  const std::string& name() const noexcept { return name_; }

  static bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    if (!is_alpha(s[0])) return false;
    for (char c : s)
      if (!is_alpha(c) && !(c >= '0' && c <= '9')) return false;
    return !is_keyword(s);
  }

  static bool is_keyword(std::string_view s) {
    return s == "dep" || s == "ind" || s == "inc" || s == "max" ||
           s == "ovee" || s == "otimes";
  }

  friend bool operator==(const PropSymbol& a, const PropSymbol& b) {
    return a.name_ == b.name_;
  }
  friend auto operator<=>(const PropSymbol& a, const PropSymbol& b) {
    return a.name_ <=> b.name_;
  }

 private:
  static bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  std::string name_;
};

using SymbolList = std::vector<PropSymbol>;

enum class Kind : std::uint8_t {
  Prop,      // p
  NegProp,   // !p          (dual negation, atoms only)
  And,       // f & g
  Or,        // f | g       (splitting disjunction)
  Dep,       // dep(xs; y)
  Indep,     // ind(ps; qs; rs)
  Incl,      // inc(ps; qs)
  ClassNeg,  // ~f          (contradictory negation)
  IntDisj,   // f ovee g    (Boolean disjunction on teams)
  Tensor,    // f otimes g  (dual of |)
  IntImpl,   // f --> g     (intuitionistic implication, all subteams)
  Max,       // max(xs)     (projection onto xs is the full cube)
};

// ---------------------------------------------------------------------------
// Formula: immutable tree with shared structure.
//
// A Formula is a cheap-to-copy handle on an immutable node. Factories
// validate arities:
//   dep    needs a target variable; the control tuple may be empty
//   ind    needs nonempty second and third tuples; the condition may be empty
//   inc    needs |ps| == |qs| >= 1
//   max    needs a nonempty tuple of distinct variables
// Structural equality ignores sharing. size() counts nodes plus one per
// symbol occurrence in atom tuples, so wide atoms are not free.
// ---------------------------------------------------------------------------

class Formula {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    SymbolList tup0, tup1, tup2;  // atom tuples; tup0 also holds p for literals
    NodePtr lhs, rhs;
  };

 public:
  Formula() = delete;

  // -- factories ------------------------------------------------------------

  static Formula prop(PropSymbol p) {
    return make(Kind::Prop, {std::move(p)}, {}, {}, nullptr, nullptr);
  }
  static Formula neg_prop(PropSymbol p) {
    return make(Kind::NegProp, {std::move(p)}, {}, {}, nullptr, nullptr);
  }
  static Formula conj(Formula l, Formula r) {
    return make(Kind::And, {}, {}, {}, l.node_, r.node_);
  }
  static Formula disj(Formula l, Formula r) {
    return make(Kind::Or, {}, {}, {}, l.node_, r.node_);
  }
  static Formula dep(SymbolList controls, PropSymbol target) {
    return make(Kind::Dep, std::move(controls), {std::move(target)}, {},
                nullptr, nullptr);
  }
  static Formula indep(SymbolList cond, SymbolList left, SymbolList right) {
    if (left.empty() || right.empty())
      throw std::invalid_argument("ind: second and third tuples must be nonempty");
    return make(Kind::Indep, std::move(cond), std::move(left),
                std::move(right), nullptr, nullptr);
  }
  static Formula incl(SymbolList left, SymbolList right) {
    if (left.empty() || left.size() != right.size())
      throw std::invalid_argument("inc: tuples must be nonempty and of equal width");
    return make(Kind::Incl, std::move(left), std::move(right), {}, nullptr,
                nullptr);
  }
  static Formula class_neg(Formula f) {
    return make(Kind::ClassNeg, {}, {}, {}, f.node_, nullptr);
  }
  static Formula int_disj(Formula l, Formula r) {
    return make(Kind::IntDisj, {}, {}, {}, l.node_, r.node_);
  }
  static Formula tensor(Formula l, Formula r) {
    return make(Kind::Tensor, {}, {}, {}, l.node_, r.node_);
  }
  static Formula int_impl(Formula l, Formula r) {
    return make(Kind::IntImpl, {}, {}, {}, l.node_, r.node_);
  }
  static Formula maximal(SymbolList symbols) {
    if (symbols.empty())
      throw std::invalid_argument("max: tuple must be nonempty");
    for (std::size_t i = 0; i < symbols.size(); ++i)
      for (std::size_t j = i + 1; j < symbols.size(); ++j)
        if (symbols[i] == symbols[j])
          throw std::invalid_argument("max: tuple variables must be distinct");
    return make(Kind::Max, std::move(symbols), {}, {}, nullptr, nullptr);
  }

  // -- structure ------------------------------------------------------------

  Kind kind() const noexcept { return node_->kind; }

  bool is_binary() const noexcept {
    switch (kind()) {
      case Kind::And:
      case Kind::Or:
      case Kind::IntDisj:
      case Kind::Tensor:
      case Kind::IntImpl:
        return true;
      default:
        return false;
    }
  }
  bool is_atom() const noexcept {
    switch (kind()) {
      case Kind::Prop:
      case Kind::NegProp:
      case Kind::Dep:
      case Kind::Indep:
      case Kind::Incl:
      case Kind::Max:
        return true;
      default:
        return false;
    }
  }

  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }
  Formula child() const { return Formula(node_->lhs); }  // ClassNeg

  // Literal symbol (Prop / NegProp).
  const PropSymbol& symbol() const { return node_->tup0.at(0); }

  // Dep accessors.
  const SymbolList& controls() const { return node_->tup0; }
  const PropSymbol& target() const { return node_->tup1.at(0); }

  // Indep accessors: condition; left/right shared with Incl and Max.
  const SymbolList& condition() const { return node_->tup0; }
  const SymbolList& left_tuple() const {
    return kind() == Kind::Indep ? node_->tup1 : node_->tup0;
  }
  const SymbolList& right_tuple() const {
    return kind() == Kind::Indep ? node_->tup2 : node_->tup1;
  }

  // Max tuple.
  const SymbolList& tuple() const { return node_->tup0; }

  // -- measures -------------------------------------------------------------

  // Nodes plus symbol occurrences inside atom tuples.
  std::size_t size() const {
    std::size_t total = 0;
    walk([&](const Node& n) {
      total += 1 + n.tup0.size() + n.tup1.size() + n.tup2.size();
      if (n.kind == Kind::Prop || n.kind == Kind::NegProp) total -= 1;
    });
    return total;
  }

  std::size_t node_count() const {
    std::size_t total = 0;
    walk([&](const Node&) { ++total; });
    return total;
  }

  // Variables in first-occurrence order (left-to-right, outside-in).
  SymbolList variables() const {
    SymbolList out;
    std::unordered_set<std::string> seen;
    auto push = [&](const PropSymbol& s) {
      if (seen.insert(s.name()).second) out.push_back(s);
    };
    walk([&](const Node& n) {
      for (const auto& s : n.tup0) push(s);
      for (const auto& s : n.tup1) push(s);
      for (const auto& s : n.tup2) push(s);
    });
    return out;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

  // Stable identity of the underlying node, for memo tables.
  const void* id() const noexcept { return node_.get(); }

 private:
  explicit Formula(NodePtr node) : node_(std::move(node)) {
    if (!node_) throw std::logic_error("formula handle without node");
  }

  static Formula make(Kind kind, SymbolList t0, SymbolList t1, SymbolList t2,
                      NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->tup0 = std::move(t0);
    node->tup1 = std::move(t1);
    node->tup2 = std::move(t2);
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return Formula(std::move(node));
  }

  // Preorder walk; iterative to keep deep formulas off the call stack.
  template <typename F>
  void walk(F&& visit) const {
    std::vector<const Node*> stack = {node_.get()};
    while (!stack.empty()) {
      const Node* n = stack.back();
      stack.pop_back();
      visit(*n);
      if (n->rhs) stack.push_back(n->rhs.get());
      if (n->lhs) stack.push_back(n->lhs.get());
    }
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->tup0 != b->tup0 || a->tup1 != b->tup1 || a->tup2 != b->tup2)
      return false;
    if (!!a->lhs != !!b->lhs || !!a->rhs != !!b->rhs) return false;
    if (a->lhs && !equal(a->lhs.get(), b->lhs.get())) return false;
    if (a->rhs && !equal(a->rhs.get(), b->rhs.get())) return false;
    return true;
  }

  NodePtr node_;
};

// ---------------------------------------------------------------------------
// Printing. Output is fully parenthesized at binary connectives, so
// parse(print(f)) == f without precedence games.
// ---------------------------------------------------------------------------

namespace detail {

inline void print_tuple(std::string& out, const SymbolList& symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ',';
    out += symbols[i].name();
  }
}

inline void print_into(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      out += f.symbol().name();
      return;
    case Kind::NegProp:
      out += '!';
      out += f.symbol().name();
      return;
    case Kind::ClassNeg:
      out += '~';
      print_into(out, f.child());
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::IntDisj:
    case Kind::Tensor:
    case Kind::IntImpl: {
      const char* op = f.kind() == Kind::And       ? " & "
                       : f.kind() == Kind::Or      ? " | "
                       : f.kind() == Kind::IntDisj ? " ovee "
                       : f.kind() == Kind::Tensor  ? " otimes "
                                                   : " --> ";
      out += '(';
      print_into(out, f.left());
      out += op;
      print_into(out, f.right());
      out += ')';
      return;
    }
    case Kind::Dep:
      // Constancy atoms print without the empty control tuple.
      out += "dep(";
      if (!f.controls().empty()) {
        print_tuple(out, f.controls());
        out += "; ";
      }
      out += f.target().name();
      out += ')';
      return;
    case Kind::Indep:
      out += "ind(";
      print_tuple(out, f.condition());
      out += "; ";
      print_tuple(out, f.left_tuple());
      out += "; ";
      print_tuple(out, f.right_tuple());
      out += ')';
      return;
    case Kind::Incl:
      out += "inc(";
      print_tuple(out, f.left_tuple());
      out += "; ";
      print_tuple(out, f.right_tuple());
      out += ')';
      return;
    case Kind::Max:
      out += "max(";
      print_tuple(out, f.tuple());
      out += ')';
      return;
  }
  throw std::logic_error("print: unknown formula kind");
}

}  // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_into(out, f);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << print(f);
}

}  // namespace teamlogic
