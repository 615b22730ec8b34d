#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/errors.hpp"
#include "teamlogic/evaluate.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"
#include "teamlogic/team.hpp"
#include "teamlogic/transforms.hpp"

namespace teamlogic {

// Satisfiability asks for a nonempty team over var(f); validity quantifies
// over all nonempty teams over var(f). The empty team is excluded on both
// sides: it satisfies every ~-free formula and would make both problems
// degenerate.

enum class Problem { Sat, Val, Mc };

struct Verdict {
  bool answer = false;
  std::optional<Team> witness;  // sat: model; val: countermodel; over var(f)
  std::string method;
};

inline constexpr std::size_t kDefaultAssignmentVars = 24;
inline constexpr std::size_t kDefaultBruteWidth = 4;  // 2^16 teams
inline constexpr std::size_t kMaxBruteWidth = 5;      // 2^32 teams, slow but finite

namespace detail {

inline bool only_kinds(const Formula& f, std::initializer_list<Kind> allowed) {
  for (Kind k : allowed)
    if (f.kind() == k) {
      if (f.is_binary())
        return only_kinds(f.left(), allowed) && only_kinds(f.right(), allowed);
      if (f.kind() == Kind::ClassNeg) return only_kinds(f.child(), allowed);
      return true;
    }
  return false;
}

inline void check_assignment_budget(std::size_t vars, std::size_t max_vars) {
  if (vars > max_vars)
    throw LimitError("assignment search over " + std::to_string(vars) +
                     " variables exceeds the limit of " +
                     std::to_string(max_vars));
}

}  // namespace detail

namespace detail {

inline Team brute_universe(const SymbolList& domain, std::size_t max_width) {
  if (domain.size() > std::min(max_width, kMaxBruteWidth))
    throw LimitError("brute-force search sweeps 2^(2^n) teams; n is limited to " +
                     std::to_string(std::min(max_width, kMaxBruteWidth)));
  return full_team(domain);
}

}  // namespace detail

// Exhaustive search over every nonempty team on var(f), ascending
// universe-mask order, one shared engine. The first hit is the witness.
// The width cap keeps the universe at ≤ 32 members, so the 2^|universe|
// mask count always fits a 64-bit counter.
inline Verdict sat_bruteforce(const Formula& f, const EvalConfig& cfg = {},
                              std::size_t max_width = kDefaultBruteWidth) {
  SymbolList domain = f.variables();
  Team universe = detail::brute_universe(domain, max_width);
  Formula g = detail::prepared(f, cfg);
  detail::MaskEngine engine(universe, cfg);
  std::uint64_t masks = std::uint64_t{1} << universe.size();
  for (std::uint64_t mask = 1; mask < masks; ++mask)
    if (engine.eval(g, mask))
      return {true, team_from_universe_mask(domain, mask), "brute-force"};
  return {false, std::nullopt, "brute-force"};
}

inline Verdict val_bruteforce(const Formula& f, const EvalConfig& cfg = {},
                              std::size_t max_width = kDefaultBruteWidth) {
  SymbolList domain = f.variables();
  Team universe = detail::brute_universe(domain, max_width);
  Formula g = detail::prepared(f, cfg);
  detail::MaskEngine engine(universe, cfg);
  std::uint64_t masks = std::uint64_t{1} << universe.size();
  for (std::uint64_t mask = 1; mask < masks; ++mask)
    if (!engine.eval(g, mask))
      return {false, team_from_universe_mask(domain, mask), "brute-force"};
  return {true, std::nullopt, "brute-force"};
}

// Flat fragment (literals, &, |): a nonempty satisfying team exists iff some
// single assignment satisfies the formula classically.
inline Verdict sat_flat(const Formula& f,
                        std::size_t max_vars = kDefaultAssignmentVars) {
  if (!detail::only_kinds(f, {Kind::Prop, Kind::NegProp, Kind::And, Kind::Or}))
    throw std::invalid_argument("sat_flat expects literals, & and | only");
  SymbolList domain = f.variables();
  detail::check_assignment_budget(domain.size(), max_vars);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << domain.size());
       ++code)
    if (detail::eval_classical(f, domain, code))
      return {true, Team(domain, {code}), "flat-singleton"};
  return {false, std::nullopt, "flat-singleton"};
}

// Independence atoms are downward closed away: f with ind atoms is
// satisfiable iff some singleton satisfies it, and singletons satisfy every
// ind atom, so erasing them and searching assignments decides sat.
inline Verdict sat_indep_singleton(const Formula& f,
                                   std::size_t max_vars = kDefaultAssignmentVars) {
  if (!detail::only_kinds(
          f, {Kind::Prop, Kind::NegProp, Kind::And, Kind::Or, Kind::Indep}))
    throw std::invalid_argument(
        "sat_indep_singleton expects literals, &, | and ind atoms only");
  Formula g = erase_indep(f);
  SymbolList domain = f.variables();  // witness stays over var(f)
  detail::check_assignment_budget(domain.size(), max_vars);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << domain.size());
       ++code)
    if (detail::eval_classical(g, domain, code))
      return {true, Team(domain, {code}), "indep-singleton"};
  return {false, std::nullopt, "indep-singleton"};
}

// Inclusion logic is union closed, so validity reduces to the singletons,
// where inc atoms mean componentwise agreement; the biconditional rewrite
// makes that classical. Countermodels are genuine singleton countermodels
// of the input formula.
inline Verdict val_incl_singleton(const Formula& f,
                                  std::size_t max_vars = kDefaultAssignmentVars) {
  if (!detail::only_kinds(
          f, {Kind::Prop, Kind::NegProp, Kind::And, Kind::Or, Kind::Incl}))
    throw std::invalid_argument(
        "val_incl_singleton expects literals, &, | and inc atoms only");
  Formula g = incl_to_biconditional(f);
  SymbolList domain = f.variables();
  detail::check_assignment_budget(domain.size(), max_vars);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << domain.size());
       ++code)
    if (!detail::eval_classical(g, domain, code))
      return {false, Team(domain, {code}), "singleton-biconditional"};
  return {true, std::nullopt, "singleton-biconditional"};
}

struct DecideLimits {
  std::size_t max_brute_width = kDefaultBruteWidth;
  std::size_t max_assignment_vars = kDefaultAssignmentVars;
};

// Route a problem to the cheapest sound solver for the formula's fragment:
//   sat   PL -> flat singletons; PL[⊥c] -> erased singletons; else brute
//   val   PL[⊆] -> singleton biconditional; else brute
//   mc    direct evaluation on the given team
inline Verdict decide(const Formula& f, Problem problem,
                      const std::optional<Team>& team = std::nullopt,
                      const EvalConfig& cfg = {},
                      const DecideLimits& limits = {}) {
  switch (problem) {
    case Problem::Mc: {
      if (!team)
        throw std::invalid_argument("model checking needs a team");
      Verdict v;
      v.answer = evaluate(*team, f, cfg);
      v.method = "direct";
      return v;
    }
    case Problem::Sat: {
      Fragment fr = classify(f);
      if (fr.label == "PL") return sat_flat(f, limits.max_assignment_vars);
      if (fr.uses_indep && !fr.uses_dep && !fr.uses_incl &&
          !fr.has_classneg_feature())
        return sat_indep_singleton(f, limits.max_assignment_vars);
      return sat_bruteforce(f, cfg, limits.max_brute_width);
    }
    case Problem::Val: {
      Fragment fr = classify(f);
      if (fr.uses_incl && !fr.uses_dep && !fr.uses_indep &&
          !fr.has_classneg_feature())
        return val_incl_singleton(f, limits.max_assignment_vars);
      return val_bruteforce(f, cfg, limits.max_brute_width);
    }
  }
  throw std::logic_error("decide: unknown problem");
}

}  // namespace teamlogic
