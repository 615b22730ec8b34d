#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "teamlogic/errors.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/team.hpp"
#include "teamlogic/transforms.hpp"

namespace teamlogic {

struct EvalConfig {
  enum class DerivedMode {
    Direct,          // ovee/otimes/-->/max/dep evaluated by their own clauses
    EliminateFirst,  // rewrite into the ~ core first, then evaluate
  };

  DerivedMode derived_mode = DerivedMode::Direct;
  std::size_t max_split_size = kDefaultSplitSize;    // covers of | and otimes
  std::size_t max_subset_size = kDefaultSubsetSize;  // subteams of -->
};

namespace detail {

// Semantic checks for the team atoms, shared by both evaluation paths.
// Tuple positions are positions in the team domain; dependence and
// independence tuples are deduplicated by the callers (repeats carry no
// information there), inclusion tuples are not (they pair up positionally).

inline std::uint64_t project_code(std::uint64_t code, std::size_t width,
                                  std::span<const std::size_t> positions) {
  std::uint64_t out = 0;
  for (std::size_t pos : positions)
    out = (out << 1) | (code_bit(code, width, pos) ? 1u : 0u);
  return out;
}

inline bool check_dep(std::span<const std::uint64_t> codes, std::size_t width,
                      std::span<const std::size_t> controls,
                      std::size_t target) {
  std::unordered_map<std::uint64_t, bool> seen;
  for (std::uint64_t code : codes) {
    std::uint64_t key = project_code(code, width, controls);
    bool value = code_bit(code, width, target);
    auto [it, inserted] = seen.emplace(key, value);
    if (!inserted && it->second != value) return false;
  }
  return true;
}

// ind(ps; qs; rs) holds iff within every group of members that agree on ps,
// the set of realized (qs, rs) value pairs is the full rectangle
// {realized qs} x {realized rs}. The witness u required by the definition
// exists exactly when the pair (s(qs), t(rs)) is realized inside s's group.
inline bool check_indep(std::span<const std::uint64_t> codes,
                        std::size_t width,
                        std::span<const std::size_t> condition,
                        std::span<const std::size_t> left,
                        std::span<const std::size_t> right) {
  struct Group {
    std::unordered_set<std::uint64_t> qs, rs;
    std::unordered_map<std::uint64_t, std::unordered_set<std::uint64_t>> pairs;
  };
  std::unordered_map<std::uint64_t, Group> groups;
  for (std::uint64_t code : codes) {
    Group& g = groups[project_code(code, width, condition)];
    std::uint64_t q = project_code(code, width, left);
    std::uint64_t r = project_code(code, width, right);
    g.qs.insert(q);
    g.rs.insert(r);
    g.pairs[q].insert(r);
  }
  for (const auto& [key, g] : groups) {
    std::uint64_t realized = 0;
    for (const auto& [q, rs] : g.pairs) realized += rs.size();
    if (realized != std::uint64_t{g.qs.size()} * g.rs.size()) return false;
  }
  return true;
}

inline bool check_incl(std::span<const std::uint64_t> codes, std::size_t width,
                       std::span<const std::size_t> left,
                       std::span<const std::size_t> right) {
  std::unordered_set<std::uint64_t> targets;
  for (std::uint64_t code : codes)
    targets.insert(project_code(code, width, right));
  for (std::uint64_t code : codes)
    if (!targets.contains(project_code(code, width, left))) return false;
  return true;
}

inline bool check_max(std::span<const std::uint64_t> codes, std::size_t width,
                      std::span<const std::size_t> tuple) {
  if (tuple.size() >= 26) return false;  // would need > 2^26 members
  std::uint64_t need = std::uint64_t{1} << tuple.size();
  if (codes.size() < need) return false;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t code : codes) seen.insert(project_code(code, width, tuple));
  return seen.size() == need;
}

// Classical single-assignment evaluation; defined on formulas built from
// literals, & and |. Codes use the same bit layout as team rows over
// `domain`.
inline bool eval_classical(const Formula& f, const SymbolList& domain,
                           std::uint64_t code) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp: {
      for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == f.symbol())
          return code_bit(code, domain.size(), i) == (f.kind() == Kind::Prop);
      throw std::invalid_argument("variable '" + f.symbol().name() +
                                  "' is not in the assignment domain");
    }
    case Kind::And:
      return eval_classical(f.left(), domain, code) &&
             eval_classical(f.right(), domain, code);
    case Kind::Or:
      return eval_classical(f.left(), domain, code) ||
             eval_classical(f.right(), domain, code);
    default:
      throw std::invalid_argument(
          "classical evaluation expects literals, & and | only");
  }
}

// Domain positions of a tuple, optionally deduplicated (first occurrence).
inline std::vector<std::size_t> positions_of(const Team& team,
                                             const SymbolList& tuple,
                                             bool dedup) {
  std::vector<std::size_t> out;
  out.reserve(tuple.size());
  for (const auto& s : tuple) {
    std::size_t pos = team.index_of(s);
    if (dedup) {
      bool repeated = false;
      for (std::size_t p : out)
        if (p == pos) { repeated = true; break; }
      if (repeated) continue;
    }
    out.push_back(pos);
  }
  return out;
}

inline std::size_t effective_budget(std::size_t configured) {
  return std::min<std::size_t>(configured, 64);
}

// -----------------------------------------------------------------------
// Mask engine. Root team has at most 64 members; every subteam appearing
// during evaluation is a bitmask over the root's member array. Results are
// memoized per (node, mask), which turns the exponential cover recursion
// into something usable for the sweep sizes the solvers run.
// -----------------------------------------------------------------------

class MaskEngine {
 public:
  MaskEngine(const Team& root, const EvalConfig& cfg)
      : root_(&root), cfg_(cfg) {
    if (root.size() > 64)
      throw std::logic_error("mask engine root exceeds 64 members");
  }

  bool eval(const Formula& f, std::uint64_t mask) {
    auto& per_node = memo_[f.id()];
    if (auto it = per_node.find(mask); it != per_node.end()) return it->second;
    bool value = compute(f, mask);
    memo_[f.id()][mask] = value;  // recompute lookup: compute() may rehash
    return value;
  }

  std::uint64_t full_mask() const {
    return root_->size() == 64 ? ~std::uint64_t{0}
                               : (std::uint64_t{1} << root_->size()) - 1;
  }

 private:
  std::vector<std::uint64_t> member_codes(std::uint64_t mask) const {
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t(std::popcount(mask)));
    for (std::uint64_t m = mask; m; m &= m - 1)
      out.push_back(root_->codes()[std::size_t(std::countr_zero(m))]);
    return out;
  }

  bool compute(const Formula& f, std::uint64_t mask) {
    std::size_t width = root_->width();
    switch (f.kind()) {
      case Kind::Prop:
      case Kind::NegProp: {
        bool want = f.kind() == Kind::Prop;
        std::size_t pos = root_->index_of(f.symbol());
        for (std::uint64_t m = mask; m; m &= m - 1) {
          std::uint64_t code = root_->codes()[std::size_t(std::countr_zero(m))];
          if (code_bit(code, width, pos) != want) return false;
        }
        return true;
      }
      case Kind::And:
        return eval(f.left(), mask) && eval(f.right(), mask);
      case Kind::ClassNeg:
        return !eval(f.child(), mask);
      case Kind::IntDisj:
        return eval(f.left(), mask) || eval(f.right(), mask);
      case Kind::Or:
      case Kind::Tensor: {
        std::size_t k = std::size_t(std::popcount(mask));
        if (k > effective_budget(cfg_.max_split_size))
          throw LimitError("cover enumeration over " + std::to_string(k) +
                           " members exceeds the split budget of " +
                           std::to_string(effective_budget(cfg_.max_split_size)));
        std::vector<std::size_t> bits;
        bits.reserve(k);
        for (std::uint64_t m = mask; m; m &= m - 1)
          bits.push_back(std::size_t(std::countr_zero(m)));
        std::vector<std::uint8_t> trits(k, 0);
        bool splitting = f.kind() == Kind::Or;
        while (true) {
          std::uint64_t ymask = 0, zmask = 0;
          for (std::size_t i = 0; i < k; ++i) {
            if (trits[i] != 0) ymask |= std::uint64_t{1} << bits[i];
            if (trits[i] != 1) zmask |= std::uint64_t{1} << bits[i];
          }
          if (splitting) {
            if (eval(f.left(), ymask) && eval(f.right(), zmask)) return true;
          } else {
            if (!eval(f.left(), ymask) && !eval(f.right(), zmask)) return false;
          }
          std::size_t i = 0;
          for (; i < k; ++i) {
            if (++trits[i] < 3) break;
            trits[i] = 0;
          }
          if (i == k) break;  // odometer wrapped: all covers seen
        }
        return !splitting;
      }
      case Kind::IntImpl: {
        std::size_t k = std::size_t(std::popcount(mask));
        if (k > effective_budget(cfg_.max_subset_size))
          throw LimitError("subteam enumeration over " + std::to_string(k) +
                           " members exceeds the subset budget of " +
                           std::to_string(effective_budget(cfg_.max_subset_size)));
        std::uint64_t sub = mask;
        while (true) {
          if (eval(f.left(), sub) && !eval(f.right(), sub)) return false;
          if (sub == 0) break;
          sub = (sub - 1) & mask;
        }
        return true;
      }
      case Kind::Dep: {
        auto controls = positions_of(*root_, f.controls(), true);
        std::size_t target = root_->index_of(f.target());
        return check_dep(member_codes(mask), width, controls, target);
      }
      case Kind::Indep: {
        auto cond = positions_of(*root_, f.condition(), true);
        auto left = positions_of(*root_, f.left_tuple(), true);
        auto right = positions_of(*root_, f.right_tuple(), true);
        return check_indep(member_codes(mask), width, cond, left, right);
      }
      case Kind::Incl: {
        auto left = positions_of(*root_, f.left_tuple(), false);
        auto right = positions_of(*root_, f.right_tuple(), false);
        return check_incl(member_codes(mask), width, left, right);
      }
      case Kind::Max: {
        auto tuple = positions_of(*root_, f.tuple(), false);
        return check_max(member_codes(mask), width, tuple);
      }
    }
    throw std::logic_error("evaluate: unknown formula kind");
  }

  const Team* root_;
  EvalConfig cfg_;
  std::unordered_map<const void*, std::unordered_map<std::uint64_t, bool>>
      memo_;
};

// Structural path for teams too large for masks. No splitting connective can
// run there (the split budgets top out at 64 members), so only the pointwise
// and Boolean cases appear.
inline bool eval_large(const Team& team, const Formula& f,
                       const EvalConfig& cfg) {
  std::size_t width = team.width();
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp: {
      bool want = f.kind() == Kind::Prop;
      std::size_t pos = team.index_of(f.symbol());
      for (std::uint64_t code : team.codes())
        if (code_bit(code, width, pos) != want) return false;
      return true;
    }
    case Kind::And:
      return eval_large(team, f.left(), cfg) && eval_large(team, f.right(), cfg);
    case Kind::ClassNeg:
      return !eval_large(team, f.child(), cfg);
    case Kind::IntDisj:
      return eval_large(team, f.left(), cfg) || eval_large(team, f.right(), cfg);
    case Kind::Or:
    case Kind::Tensor:
      throw LimitError("cover enumeration over " + std::to_string(team.size()) +
                       " members exceeds the split budget of " +
                       std::to_string(effective_budget(cfg.max_split_size)));
    case Kind::IntImpl:
      throw LimitError("subteam enumeration over " + std::to_string(team.size()) +
                       " members exceeds the subset budget of " +
                       std::to_string(effective_budget(cfg.max_subset_size)));
    case Kind::Dep: {
      auto controls = positions_of(team, f.controls(), true);
      return check_dep(team.codes(), width, controls,
                       team.index_of(f.target()));
    }
    case Kind::Indep: {
      auto cond = positions_of(team, f.condition(), true);
      auto left = positions_of(team, f.left_tuple(), true);
      auto right = positions_of(team, f.right_tuple(), true);
      return check_indep(team.codes(), width, cond, left, right);
    }
    case Kind::Incl: {
      auto left = positions_of(team, f.left_tuple(), false);
      auto right = positions_of(team, f.right_tuple(), false);
      return check_incl(team.codes(), width, left, right);
    }
    case Kind::Max: {
      auto tuple = positions_of(team, f.tuple(), false);
      return check_max(team.codes(), width, tuple);
    }
  }
  throw std::logic_error("evaluate: unknown formula kind");
}

inline void require_domain_covers(const Team& team, const Formula& f) {
  for (const auto& v : f.variables())
    if (!team.in_domain(v))
      throw std::invalid_argument("variable '" + v.name() +
                                  "' is not in the team domain");
}

inline Formula prepared(const Formula& f, const EvalConfig& cfg) {
  if (cfg.derived_mode != EvalConfig::DerivedMode::EliminateFirst) return f;
  return eliminate_derived_pivot(f, f.variables().at(0));
}

}  // namespace detail

// Does the team satisfy the formula? Every variable of f must be in the
// team's domain. Throws LimitError when a splitting connective meets a team
// beyond the configured budgets.
inline bool evaluate(const Team& team, const Formula& f,
                     const EvalConfig& cfg = {}) {
  detail::require_domain_covers(team, f);
  Formula g = detail::prepared(f, cfg);
  if (team.size() <= 64) {
    detail::MaskEngine engine(team, cfg);
    return engine.eval(g, engine.full_mask());
  }
  return detail::eval_large(team, g, cfg);
}

// Value of the formula on the empty team, computed syntactically over the
// contradictory negation core: atoms map to 1, & and | both multiply, and ~
// adds 1 mod 2. Agrees with evaluate on the empty team. Defined on the core
// only; run eliminate_derived first for anything else.
inline bool empty_team_value(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::Indep:
    case Kind::Incl:
      return true;
    case Kind::And:
    case Kind::Or:
      return empty_team_value(f.left()) && empty_team_value(f.right());
    case Kind::ClassNeg:
      return !empty_team_value(f.child());
    default:
      throw std::invalid_argument(
          "empty_team_value covers the contradictory negation core only; "
          "eliminate derived operators and dependence atoms first");
  }
}

// Flag-based model checking for the contradictory negation core
// {p, !p, &, |, ~, inc, ind}: with flag true it decides T ⊨ f, with flag
// false the complement, descending with the flag inverted under ~. Kept
// deliberately naive (explicit witness loops, no memoization); it is the
// independent cross-check for the engine above.
inline bool evaluate_flagged(const Team& team, const Formula& f, bool flag,
                             const EvalConfig& cfg = {}) {
  detail::require_domain_covers(team, f);
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp: {
      bool want = f.kind() == Kind::Prop;
      bool x = true;
      for (std::uint64_t code : team.codes())
        if (team.value(code, f.symbol()) != want) x = false;
      return x == flag;
    }
    case Kind::And:
      if (flag)
        return evaluate_flagged(team, f.left(), true, cfg) &&
               evaluate_flagged(team, f.right(), true, cfg);
      return evaluate_flagged(team, f.left(), false, cfg) ||
             evaluate_flagged(team, f.right(), false, cfg);
    case Kind::Or: {
      for (CoverEnumerator covers(team,
                                  detail::effective_budget(cfg.max_split_size));
           covers.valid(); covers.next()) {
        auto [y, z] = covers.current();
        if (flag) {
          if (evaluate_flagged(y, f.left(), true, cfg) &&
              evaluate_flagged(z, f.right(), true, cfg))
            return true;
        } else {
          if (!(evaluate_flagged(y, f.left(), false, cfg) ||
                evaluate_flagged(z, f.right(), false, cfg)))
            return false;
        }
      }
      return !flag;
    }
    case Kind::ClassNeg:
      return evaluate_flagged(team, f.child(), !flag, cfg);
    case Kind::Incl: {
      bool x = true;
      for (std::uint64_t s : team.codes()) {
        bool found = false;
        for (std::uint64_t t : team.codes()) {
          bool match = true;
          for (std::size_t i = 0; i < f.left_tuple().size() && match; ++i)
            if (team.value(s, f.left_tuple()[i]) !=
                team.value(t, f.right_tuple()[i]))
              match = false;
          if (match) { found = true; break; }
        }
        if (!found) x = false;
      }
      return x == flag;
    }
    case Kind::Indep: {
      auto agree = [&](std::uint64_t a, std::uint64_t b,
                       const SymbolList& tuple) {
        for (const auto& v : tuple)
          if (team.value(a, v) != team.value(b, v)) return false;
        return true;
      };
      bool x = true;
      for (std::uint64_t s : team.codes()) {
        for (std::uint64_t t : team.codes()) {
          if (!agree(s, t, f.condition())) continue;
          bool found = false;
          for (std::uint64_t u : team.codes()) {
            if (agree(u, s, f.condition()) && agree(u, s, f.left_tuple()) &&
                agree(u, t, f.right_tuple())) {
              found = true;
              break;
            }
          }
          if (!found) x = false;
        }
      }
      return x == flag;
    }
    default:
      throw std::invalid_argument(
          "flagged evaluation covers the contradictory negation core only; "
          "eliminate derived operators and dependence atoms first");
  }
}

// All satisfying teams over var(f), in universe-mask order (so the empty
// team, when it satisfies f, comes first). The sweep shares one engine, so
// subformula results carry across teams.
inline std::vector<Team> satisfying_teams(
    const Formula& f, const EvalConfig& cfg = {},
    std::size_t max_width = kMaxAllTeamsWidth) {
  SymbolList domain = f.variables();
  if (domain.size() > std::min(max_width, kMaxAllTeamsWidth))
    throw LimitError("model listing sweeps 2^(2^n) teams; n is limited to " +
                     std::to_string(std::min(max_width, kMaxAllTeamsWidth)));
  Team universe = full_team(domain);
  Formula g = detail::prepared(f, cfg);
  detail::MaskEngine engine(universe, cfg);
  std::vector<Team> out;
  std::uint64_t masks = std::uint64_t{1} << universe.size();
  for (std::uint64_t mask = 0; mask < masks; ++mask)
    if (engine.eval(g, mask)) out.push_back(team_from_universe_mask(domain, mask));
  return out;
}

}  // namespace teamlogic
