#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>

#include "teamlogic/formula.hpp"

namespace teamlogic {

// Names __f0, __f1, ... that avoid every reserved symbol. Seed a pool with
// the variables of all formulas in play before drawing from it.
class FreshPool {
 public:
  FreshPool() = default;
  explicit FreshPool(const Formula& f) { reserve(f); }

  void reserve(const PropSymbol& s) { taken_.insert(s.name()); }
  void reserve(const SymbolList& symbols) {
    for (const auto& s : symbols) taken_.insert(s.name());
  }
  void reserve(const Formula& f) { reserve(f.variables()); }

  PropSymbol fresh() {
    while (true) {
      std::string name = "__f" + std::to_string(counter_++);
      if (taken_.insert(name).second) return PropSymbol(std::move(name));
    }
  }

 private:
  std::size_t counter_ = 0;
  std::unordered_set<std::string> taken_;
};

namespace detail {

// The translation rules compose literally; no simplification of ∼∼ stacks,
// so outputs match the stated rewrites node for node.

// f ovee g  ==  ∼(∼f & ∼g)
inline Formula core_int_disj(const Formula& f, const Formula& g) {
  return Formula::class_neg(
      Formula::conj(Formula::class_neg(f), Formula::class_neg(g)));
}

// f otimes g  ==  ∼(∼f | ∼g)
inline Formula core_tensor(const Formula& f, const Formula& g) {
  return Formula::class_neg(
      Formula::disj(Formula::class_neg(f), Formula::class_neg(g)));
}

// f --> g  ==  (∼f ovee g) otimes ∼(p | !p)
//
// The right tensor operand is unsatisfiable, so the tensor quantifies over
// every subteam and the left operand does the work. The guard variable p
// only occurs inside p | !p, which every team satisfies; any symbol is
// sound there, fresh or not, and the pivot parameter exploits that.
inline Formula core_int_impl(const Formula& f, const Formula& g,
                             const PropSymbol& guard) {
  Formula never = Formula::class_neg(
      Formula::disj(Formula::prop(guard), Formula::neg_prop(guard)));
  return core_tensor(core_int_disj(Formula::class_neg(f), g), never);
}

// dep(y)  ==  y ovee !y
inline Formula core_constancy(const PropSymbol& y) {
  return core_int_disj(Formula::prop(y), Formula::neg_prop(y));
}

struct EliminateOptions {
  std::optional<PropSymbol> pivot;  // guard for -->; fresh when absent
};

inline Formula eliminate_rec(const Formula& f, FreshPool& pool,
                             const EliminateOptions& opt) {
  auto guard = [&]() -> PropSymbol {
    return opt.pivot ? *opt.pivot : pool.fresh();
  };
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::Indep:
    case Kind::Incl:
      return f;
    case Kind::And:
      return Formula::conj(eliminate_rec(f.left(), pool, opt),
                           eliminate_rec(f.right(), pool, opt));
    case Kind::Or:
      return Formula::disj(eliminate_rec(f.left(), pool, opt),
                           eliminate_rec(f.right(), pool, opt));
    case Kind::ClassNeg:
      return Formula::class_neg(eliminate_rec(f.child(), pool, opt));
    case Kind::IntDisj:
      return core_int_disj(eliminate_rec(f.left(), pool, opt),
                           eliminate_rec(f.right(), pool, opt));
    case Kind::Tensor:
      return core_tensor(eliminate_rec(f.left(), pool, opt),
                         eliminate_rec(f.right(), pool, opt));
    case Kind::IntImpl:
      return core_int_impl(eliminate_rec(f.left(), pool, opt),
                           eliminate_rec(f.right(), pool, opt), guard());
    case Kind::Dep: {
      if (f.controls().empty()) return core_constancy(f.target());
      // dep(x1..xk; y)  ==  (dep(x1) & ... & dep(xk)) --> dep(y)
      // with the conjunction as one antecedent. Distributing the implication
      // over the conjuncts is wrong: the xor team 000 011 101 110 over
      // x1 x2 y separates the two readings.
      Formula antecedent = core_constancy(f.controls()[0]);
      for (std::size_t i = 1; i < f.controls().size(); ++i)
        antecedent = Formula::conj(antecedent, core_constancy(f.controls()[i]));
      return core_int_impl(antecedent, core_constancy(f.target()), guard());
    }
    case Kind::Max: {
      // max(xs)  ==  ∼(dep(x1) | ... | dep(xk))
      Formula body = core_constancy(f.tuple()[0]);
      for (std::size_t i = 1; i < f.tuple().size(); ++i)
        body = Formula::disj(body, core_constancy(f.tuple()[i]));
      return Formula::class_neg(body);
    }
  }
  throw std::logic_error("eliminate: unknown formula kind");
}

}  // namespace detail

// Rewrite ovee, otimes, -->, max and dependence atoms into the contradictory
// negation core {p, !p, &, |, ~, ind, inc}. Fresh guard variables come from
// the pool (or from a pool seeded with var(f)). Output size stays within a
// constant factor of the input size.
inline Formula eliminate_derived(const Formula& f, FreshPool& pool) {
  return detail::eliminate_rec(f, pool, {});
}

inline Formula eliminate_derived(const Formula& f) {
  FreshPool pool(f);
  return detail::eliminate_rec(f, pool, {});
}

// Same rewrite, but implication guards reuse `pivot` instead of drawing
// fresh names. Sound because guards only appear in always-satisfied
// subformulas; useful when the result must stay over var(f).
inline Formula eliminate_derived_pivot(const Formula& f, PropSymbol pivot) {
  FreshPool pool(f);
  detail::EliminateOptions opt;
  opt.pivot = std::move(pivot);
  return detail::eliminate_rec(f, pool, opt);
}

// dep(xs; y) -> ind(xs; y; y), recursively. Semantics preserved team-by-team.
inline Formula dep_to_indep(const Formula& f) {
  switch (f.kind()) {
    case Kind::Dep: {
      SymbolList target = {f.target()};
      return Formula::indep(f.controls(), target, target);
    }
    case Kind::And:
      return Formula::conj(dep_to_indep(f.left()), dep_to_indep(f.right()));
    case Kind::Or:
      return Formula::disj(dep_to_indep(f.left()), dep_to_indep(f.right()));
    case Kind::IntDisj:
      return Formula::int_disj(dep_to_indep(f.left()), dep_to_indep(f.right()));
    case Kind::Tensor:
      return Formula::tensor(dep_to_indep(f.left()), dep_to_indep(f.right()));
    case Kind::IntImpl:
      return Formula::int_impl(dep_to_indep(f.left()), dep_to_indep(f.right()));
    case Kind::ClassNeg:
      return Formula::class_neg(dep_to_indep(f.child()));
    default:
      return f;
  }
}

// Replace every independence atom by a team-valid dummy (a | !a), a taken
// from the atom's own tuples. Defined on PL[⊥c] only: there satisfaction by
// singletons is unchanged (singletons satisfy every ind atom), which is all
// the satisfiability theorem needs.
inline Formula erase_indep(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
      return f;
    case Kind::Indep: {
      const PropSymbol& a =
          f.condition().empty() ? f.left_tuple()[0] : f.condition()[0];
      return Formula::disj(Formula::prop(a), Formula::neg_prop(a));
    }
    case Kind::And:
      return Formula::conj(erase_indep(f.left()), erase_indep(f.right()));
    case Kind::Or:
      return Formula::disj(erase_indep(f.left()), erase_indep(f.right()));
    default:
      throw std::invalid_argument(
          "erase_indep is defined on literals, &, | and ind atoms only");
  }
}

// inc(p1..pk; q1..qk) -> &_i ((pi & qi) | (!pi & !qi)). Defined on PL[⊆]
// only. Not equivalent team by team; singletons agree on both sides, and
// union closure lifts that to validity, which is what the validity solver
// needs.
inline Formula incl_to_biconditional(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
      return f;
    case Kind::Incl: {
      std::optional<Formula> out;
      for (std::size_t i = 0; i < f.left_tuple().size(); ++i) {
        const PropSymbol& p = f.left_tuple()[i];
        const PropSymbol& q = f.right_tuple()[i];
        Formula both = Formula::conj(Formula::prop(p), Formula::prop(q));
        Formula neither =
            Formula::conj(Formula::neg_prop(p), Formula::neg_prop(q));
        Formula agree = Formula::disj(both, neither);
        out = out ? Formula::conj(*out, agree) : agree;
      }
      return *out;
    }
    case Kind::And:
      return Formula::conj(incl_to_biconditional(f.left()),
                           incl_to_biconditional(f.right()));
    case Kind::Or:
      return Formula::disj(incl_to_biconditional(f.left()),
                           incl_to_biconditional(f.right()));
    default:
      throw std::invalid_argument(
          "incl_to_biconditional is defined on literals, &, | and inc atoms "
          "only");
  }
}

// f is satisfiable by a nonempty team  iff  sat_to_val(f) is valid.
//
//   max(xs) --> ((p | !p) | (f & ~(p & !p)))     xs = var(f), p fresh
//
// A team satisfies ~(p & !p) exactly when it is nonempty, so the right
// disjunct carves a nonempty f-satisfying subteam out of any team whose
// xs-projection is the full cube.
inline Formula sat_to_val(const Formula& f, FreshPool& pool) {
  SymbolList xs = f.variables();
  PropSymbol p = pool.fresh();
  Formula always = Formula::disj(Formula::prop(p), Formula::neg_prop(p));
  Formula nonempty =
      Formula::class_neg(Formula::conj(Formula::prop(p), Formula::neg_prop(p)));
  Formula rhs = Formula::disj(always, Formula::conj(f, nonempty));
  return Formula::int_impl(Formula::maximal(std::move(xs)), rhs);
}

inline Formula sat_to_val(const Formula& f) {
  FreshPool pool(f);
  return sat_to_val(f, pool);
}

// f is valid  iff  val_to_sat(f) is satisfiable by a nonempty team.
//
//   max(xs) & (~(p & !p) --> f)                  xs = var(f), p fresh
inline Formula val_to_sat(const Formula& f, FreshPool& pool) {
  SymbolList xs = f.variables();
  PropSymbol p = pool.fresh();
  Formula nonempty =
      Formula::class_neg(Formula::conj(Formula::prop(p), Formula::neg_prop(p)));
  return Formula::conj(Formula::maximal(std::move(xs)),
                       Formula::int_impl(nonempty, f));
}

inline Formula val_to_sat(const Formula& f) {
  FreshPool pool(f);
  return val_to_sat(f, pool);
}

}  // namespace teamlogic
