// A short tour: build teams and formulas, evaluate, translate between
// fragments, and run the QBF reduction end to end.

#include <iostream>

#include "teamlogic/teamlogic.hpp"

using namespace teamlogic;

int main() {
  // A team is a set of binary assignments over a fixed variable list.
  // Rows: p=1 q=1, p=1 q=0.
  Team team({PropSymbol("p"), PropSymbol("q")}, {0b11, 0b10});

  // dep(p; q): within the team, the value of p determines the value of q.
  // Our team has two rows with p=1 but different q, so this fails.
  Formula f = parse("dep(p; q)");
  std::cout << print(f) << " on {11,10}: " << std::boolalpha
            << evaluate(team, f) << '\n';

  // p is constant across the team, so dep(; p) holds.
  std::cout << "dep(; p) on {11,10}: " << evaluate(team, parse("dep(; p)"))
            << '\n';

  // The | connective splits the team: some subteam satisfies the left side,
  // the rest satisfies the right side. Downward closure makes this lax.
  std::cout << "q | !q on {11,10}: " << evaluate(team, parse("q | !q"))
            << '\n';

  // Derived operators rewrite into the ~ core without changing models.
  Formula arrow = parse("dep(p; q) --> dep(; q)");
  std::cout << "core form: " << print(eliminate_derived(arrow)) << '\n';

  // Dependence is a special case of independence.
  std::cout << "dep as ind: " << print(dep_to_indep(parse("dep(p; q)")))
            << '\n';

  // Solvers pick the cheapest sound method for the formula's fragment.
  Verdict sat = decide(parse("(p | q) & !p"), Problem::Sat);
  std::cout << "sat((p | q) & !p): " << sat.answer << " via " << sat.method
            << '\n';
  if (sat.witness) std::cout << team_to_string(*sat.witness);

  Verdict val = decide(parse("inc(p; q)"), Problem::Val);
  std::cout << "val(inc(p; q)): " << val.answer << " via " << val.method
            << '\n';

  // Fragments carry their complexity story.
  std::cout << describe(classify(parse("inc(p; q)"))) << '\n';

  // Reduce a true QBF to model checking and check the instance.
  QbfInstance q = parse_qbf("E x1 A x2 : x1 & (x2 | -x2)");
  McInstance inst = tqbf_to_mc(q);
  std::cout << "qbf true: " << qbf_eval(q)
            << ", instance true: " << evaluate(inst.team, inst.formula)
            << '\n';
  return 0;
}
