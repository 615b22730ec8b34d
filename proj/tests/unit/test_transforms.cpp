#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "support/generators.hpp"
#include "support/reference_eval.hpp"
#include "teamlogic/evaluate.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/solvers.hpp"
#include "teamlogic/transforms.hpp"

using namespace teamlogic;

namespace {

const SymbolList kPQ = gen::syms({"p", "q"});

std::set<std::string> name_set(const SymbolList& vars) {
  std::set<std::string> out;
  for (const auto& v : vars) out.insert(v.name());
  return out;
}

// Both formulas satisfied by exactly the same teams over the union of their
// variables (evaluated over every team on that combined domain).
void check_equivalent(const Formula& a, const Formula& b) {
  SymbolList domain = a.variables();
  for (const auto& v : b.variables())
    if (std::find(domain.begin(), domain.end(), v) == domain.end())
      domain.push_back(v);
  REQUIRE(domain.size() <= 3);
  for (const Team& x : all_teams(domain))
    REQUIRE(evaluate(x, a) == evaluate(x, b));
}

// Largest tuple the transform might expand: atom tuple groups and, for the
// satisfiability/validity bridges, the variable tuple itself.
std::size_t tuple_budget(const Formula& f) {
  std::size_t best = f.variables().size();
  auto walk = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Kind::Dep:
        best = std::max(best, g.controls().size());
        break;
      case Kind::Indep:
        best = std::max({best, g.condition().size(), g.left_tuple().size(),
                         g.right_tuple().size()});
        break;
      case Kind::Incl:
        best = std::max(best, g.left_tuple().size());
        break;
      case Kind::Max:
        best = std::max(best, g.tuple().size());
        break;
      case Kind::ClassNeg:
        self(self, g.child());
        break;
      default:
        if (g.is_binary()) {
          self(self, g.left());
          self(self, g.right());
        }
    }
  };
  walk(walk, f);
  return best;
}

void check_size_bound(const Formula& in, const Formula& out) {
  REQUIRE(out.size() <= 12 * in.size() * (1 + tuple_budget(in)));
}

}  // namespace

TEST_CASE("fresh symbols avoid everything reserved") {
  FreshPool pool(parse("__f0 & __f2"));
  PropSymbol a = pool.fresh();
  PropSymbol b = pool.fresh();
  CHECK(a.name() == "__f1");
  CHECK(b.name() == "__f3");
  pool.reserve(PropSymbol("__f4"));
  CHECK(pool.fresh().name() == "__f5");
}

TEST_CASE("derived operators eliminate to their stated cores") {
  CHECK(print(eliminate_derived(parse("max(p)"))) == "~~(~p & ~!p)");
  CHECK(print(eliminate_derived(parse("p otimes q"))) == "~(~p | ~q)");
  CHECK(print(eliminate_derived(parse("p ovee q"))) == "~(~p & ~q)");
  CHECK(print(eliminate_derived(parse("p --> q"))) ==
        "~(~~(~~p & ~q) | ~~(__f0 | !__f0))");
  CHECK(print(eliminate_derived(parse("dep(y)"))) == "~(~y & ~!y)");

  // Core formulas pass through untouched.
  Formula core = parse("~(p & !q) | ind(; p; q) | inc(p; q)");
  CHECK(eliminate_derived(core) == core);
}

TEST_CASE("elimination output stays in the core grammar") {
  std::mt19937_64 rng(2024);
  gen::FormulaOptions opt;
  opt.use_dep = opt.use_indep = opt.use_incl = true;
  opt.use_classneg = opt.use_derived = true;
  auto core_only = [](const Formula& f) {
    auto walk = [](auto&& self, const Formula& g) -> bool {
      switch (g.kind()) {
        case Kind::Prop:
        case Kind::NegProp:
        case Kind::Indep:
        case Kind::Incl:
          return true;
        case Kind::ClassNeg:
          return self(self, g.child());
        case Kind::And:
        case Kind::Or:
          return self(self, g.left()) && self(self, g.right());
        default:
          return false;
      }
    };
    return walk(walk, f);
  };
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::random_formula(rng, kPQ, opt);
    Formula out = eliminate_derived(f);
    REQUIRE(core_only(out));
    check_size_bound(f, out);
  }
}

TEST_CASE("elimination preserves satisfaction team by team") {
  Formula f = parse("max(p) & q");
  auto left = satisfying_teams(f);
  auto right = satisfying_teams(eliminate_derived(f));
  REQUIRE(left.size() == right.size());
  for (std::size_t i = 0; i < left.size(); ++i) REQUIRE(left[i] == right[i]);

  std::mt19937_64 rng(31337);
  gen::FormulaOptions opt;
  opt.use_dep = true;
  opt.use_derived = true;
  opt.max_depth = 2;
  int tested = 0;
  while (tested < 120) {
    Formula g = gen::random_formula(rng, kPQ, opt);
    Formula out = eliminate_derived(g);
    SymbolList domain = g.variables();
    for (const auto& v : out.variables())
      if (std::find(domain.begin(), domain.end(), v) == domain.end())
        domain.push_back(v);
    if (domain.size() > 3) continue;  // too many fresh guards to sweep
    check_equivalent(g, out);
    ++tested;
  }
}

TEST_CASE("pivot elimination reuses one existing guard") {
  Formula f = parse("dep(p; q) --> max(q)");
  Formula out = eliminate_derived_pivot(f, PropSymbol("p"));
  CHECK(name_set(out.variables()) == name_set(f.variables()));
  check_equivalent(f, out);

  std::mt19937_64 rng(414);
  gen::FormulaOptions opt;
  opt.use_dep = true;
  opt.use_derived = true;
  SymbolList pqr = gen::syms({"p", "q", "r"});
  for (int i = 0; i < 80; ++i) {
    Formula g = gen::random_formula(rng, pqr, opt);
    Formula out2 = eliminate_derived_pivot(g, g.variables().at(0));
    REQUIRE(name_set(out2.variables()) == name_set(g.variables()));
    check_equivalent(g, out2);
  }
}

TEST_CASE("the dependence translation keys on the joint antecedent") {
  // On the xor team the atom dep(p,q; r) holds: all four (p,q) pairs are
  // distinct. Reading the translation as one implication per control
  // variable would demand r be constant wherever p alone is, which fails.
  SymbolList pqr = gen::syms({"p", "q", "r"});
  Team xorteam(pqr, {0b000, 0b011, 0b101, 0b110});
  Formula atom = parse("dep(p,q; r)");
  REQUIRE(evaluate(xorteam, atom));
  CHECK(evaluate(xorteam, eliminate_derived_pivot(atom, PropSymbol("p"))));

  Formula per_control =
      parse("(dep(p) --> dep(r)) & (dep(q) --> dep(r))");
  CHECK_FALSE(evaluate(xorteam, per_control));
}

TEST_CASE("dependence atoms rewrite to independence atoms") {
  CHECK(dep_to_indep(parse("dep(p; q)")) == parse("ind(p; q; q)"));
  CHECK(dep_to_indep(parse("dep(y)")) == parse("ind(; y; y)"));
  CHECK(dep_to_indep(parse("~(p | inc(p; q))")) ==
        parse("~(p | inc(p; q))"));
  CHECK(dep_to_indep(parse("~dep(;p) otimes q")) ==
        parse("~ind(;p;p) otimes q"));

  Formula f = parse("dep(p; q) | r");
  auto left = satisfying_teams(f);
  auto right = satisfying_teams(dep_to_indep(f));
  REQUIRE(left.size() == right.size());
  for (std::size_t i = 0; i < left.size(); ++i) REQUIRE(left[i] == right[i]);

  std::mt19937_64 rng(9090);
  gen::FormulaOptions opt;
  opt.use_dep = true;
  for (int i = 0; i < 100; ++i) {
    Formula g = gen::random_formula(rng, kPQ, opt);
    check_equivalent(g, dep_to_indep(g));
    check_size_bound(g, dep_to_indep(g));
  }
}

TEST_CASE("independence erasure matches on singletons") {
  CHECK(print(erase_indep(parse("ind(p; q; r) & q"))) == "((p | !p) & q)");
  Formula plain = parse("(p | !q) & p");
  CHECK(erase_indep(plain) == plain);
  CHECK_THROWS_AS(erase_indep(parse("~p")), std::invalid_argument);
  CHECK_THROWS_AS(erase_indep(parse("inc(p; q)")), std::invalid_argument);
  CHECK_THROWS_AS(erase_indep(parse("dep(p; q)")), std::invalid_argument);
  CHECK_THROWS_AS(erase_indep(parse("p --> q")), std::invalid_argument);

  std::mt19937_64 rng(606);
  gen::FormulaOptions opt;
  opt.use_indep = true;
  SymbolList vars = gen::syms({"p", "q", "r", "s"});
  for (int i = 0; i < 200; ++i) {
    Formula f = gen::random_formula(rng, vars, opt);
    Formula erased = erase_indep(f);
    check_size_bound(f, erased);
    SymbolList domain = f.variables();
    for (std::uint64_t code = 0;
         code < (std::uint64_t{1} << domain.size()); ++code) {
      Team singleton(domain, {code});
      REQUIRE(evaluate(singleton, f) == evaluate(singleton, erased));
    }
  }
}

TEST_CASE("inclusion atoms become biconditionals") {
  CHECK(print(incl_to_biconditional(parse("inc(p; q)"))) ==
        "((p & q) | (!p & !q))");
  CHECK(print(incl_to_biconditional(parse("inc(p q; r s)"))) ==
        "(((p & r) | (!p & !r)) & ((q & s) | (!q & !s)))");
  Formula plain = parse("p & (q | !p)");
  CHECK(incl_to_biconditional(plain) == plain);
  CHECK_THROWS_AS(incl_to_biconditional(parse("~p")), std::invalid_argument);
  CHECK_THROWS_AS(incl_to_biconditional(parse("ind(; p; q)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(incl_to_biconditional(parse("dep(y)")),
                  std::invalid_argument);

  std::mt19937_64 rng(707);
  gen::FormulaOptions opt;
  opt.use_incl = true;
  SymbolList vars = gen::syms({"p", "q", "r", "s"});
  for (int i = 0; i < 200; ++i) {
    Formula f = gen::random_formula(rng, vars, opt);
    Formula star = incl_to_biconditional(f);
    check_size_bound(f, star);
    SymbolList domain = f.variables();
    for (std::uint64_t code = 0;
         code < (std::uint64_t{1} << domain.size()); ++code) {
      Team singleton(domain, {code});
      REQUIRE(evaluate(singleton, f) == evaluate(singleton, star));
    }
  }
}

TEST_CASE("satisfiability maps to validity") {
  Formula unsat = parse("q & !q");
  Formula psi1 = sat_to_val(unsat);
  CHECK_FALSE(val_bruteforce(psi1).answer);

  Formula sat = parse("q");
  Formula psi2 = sat_to_val(sat);
  CHECK(val_bruteforce(psi2).answer);
  CHECK(psi2.variables().size() == 2);
  CHECK(psi2.kind() == Kind::IntImpl);
  CHECK(psi2.left().kind() == Kind::Max);

  // The auxiliary symbol is fresh.
  auto names = name_set(psi2.variables());
  CHECK(names.count("q") == 1);
  CHECK(names.count("__f0") == 1);
  check_size_bound(sat, psi2);
}

TEST_CASE("validity maps to satisfiability") {
  Formula valid = parse("p0 | !p0");
  Formula theta1 = val_to_sat(valid);
  CHECK(sat_bruteforce(theta1).answer);
  CHECK(theta1.kind() == Kind::And);
  CHECK(theta1.left().kind() == Kind::Max);

  Formula invalid = parse("p0");
  Formula theta2 = val_to_sat(invalid);
  CHECK_FALSE(sat_bruteforce(theta2).answer);
  check_size_bound(invalid, theta2);
}

TEST_CASE("the problem bridges agree with brute force both ways") {
  std::mt19937_64 rng(11);
  gen::FormulaOptions opt;
  opt.use_dep = opt.use_indep = opt.use_incl = true;
  opt.use_classneg = opt.use_derived = true;
  opt.max_depth = 2;
  for (int i = 0; i < 60; ++i) {
    Formula f = gen::random_formula(rng, kPQ, opt);
    REQUIRE(sat_bruteforce(f).answer == val_bruteforce(sat_to_val(f)).answer);
    REQUIRE(val_bruteforce(f).answer == sat_bruteforce(val_to_sat(f)).answer);
  }
}

TEST_CASE("transforms only add fresh symbols") {
  std::mt19937_64 rng(808);
  gen::FormulaOptions opt;
  opt.use_dep = opt.use_indep = opt.use_incl = true;
  opt.use_classneg = opt.use_derived = true;
  for (int i = 0; i < 150; ++i) {
    Formula f = gen::random_formula(rng, kPQ, opt);
    for (const Formula& out :
         {eliminate_derived(f), dep_to_indep(f), sat_to_val(f),
          val_to_sat(f)}) {
      auto before = name_set(f.variables());
      auto after = name_set(out.variables());
      for (const auto& name : before) REQUIRE(after.count(name) == 1);
      for (const auto& name : after)
        REQUIRE((before.count(name) == 1 ||
                 name.compare(0, 3, "__f") == 0));
    }
  }
}
