#pragma once

// Reference semantics used as a test oracle. Teams are plain vectors of
// name->bool maps, covers and subteams are enumerated by recursion, and the
// atom clauses run their naive witness loops. Nothing here shares evaluation
// logic with the engine under test; only the Formula AST is common.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/team.hpp"

namespace refsem {

using teamlogic::Formula;
using teamlogic::Kind;
using teamlogic::PropSymbol;
using teamlogic::SymbolList;
using teamlogic::Team;

using Assignment = std::map<std::string, bool>;
using RefTeam = std::vector<Assignment>;  // sorted, duplicate free

inline RefTeam normalized(RefTeam t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

inline Assignment assignment_of(const Team& t, std::uint64_t code) {
  Assignment s;
  for (const auto& v : t.domain()) s[v.name()] = t.value(code, v);
  return s;
}

inline RefTeam from_team(const Team& t) {
  RefTeam out;
  out.reserve(t.size());
  for (std::uint64_t code : t.codes()) out.push_back(assignment_of(t, code));
  return normalized(std::move(out));
}

inline std::vector<bool> tuple_values(const Assignment& s,
                                      const SymbolList& tuple) {
  std::vector<bool> out;
  out.reserve(tuple.size());
  for (const auto& v : tuple) out.push_back(s.at(v.name()));
  return out;
}

// Visits every cover (Y, Z) with Y ∪ Z = X; members are assigned to Y only,
// Z only, or both. Returns true as soon as visit does.
inline bool any_cover(
    const RefTeam& x,
    const std::function<bool(const RefTeam&, const RefTeam&)>& visit) {
  RefTeam y, z;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == x.size()) return visit(y, z);
    y.push_back(x[i]);
    bool hit = go(i + 1);
    y.pop_back();
    if (hit) return true;
    z.push_back(x[i]);
    hit = go(i + 1);
    if (!hit) {
      y.push_back(x[i]);
      hit = go(i + 1);
      y.pop_back();
    }
    z.pop_back();
    return hit;
  };
  return go(0);
}

// Visits every subteam Y ⊆ X, including ∅ and X itself.
inline bool any_subteam(const RefTeam& x,
                        const std::function<bool(const RefTeam&)>& visit) {
  RefTeam y;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == x.size()) return visit(y);
    if (go(i + 1)) return true;
    y.push_back(x[i]);
    bool hit = go(i + 1);
    y.pop_back();
    return hit;
  };
  return go(0);
}

inline bool ref_dep(const RefTeam& x, const SymbolList& controls,
                    const PropSymbol& target) {
  for (const auto& s : x)
    for (const auto& t : x)
      if (tuple_values(s, controls) == tuple_values(t, controls) &&
          s.at(target.name()) != t.at(target.name()))
        return false;
  return true;
}

inline bool ref_indep(const RefTeam& x, const SymbolList& condition,
                      const SymbolList& left, const SymbolList& right) {
  for (const auto& s : x)
    for (const auto& t : x) {
      if (tuple_values(s, condition) != tuple_values(t, condition)) continue;
      bool found = false;
      for (const auto& u : x)
        if (tuple_values(u, condition) == tuple_values(s, condition) &&
            tuple_values(u, left) == tuple_values(s, left) &&
            tuple_values(u, right) == tuple_values(t, right)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

inline bool ref_incl(const RefTeam& x, const SymbolList& left,
                     const SymbolList& right) {
  for (const auto& s : x) {
    bool found = false;
    for (const auto& t : x)
      if (tuple_values(s, left) == tuple_values(t, right)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool ref_max(const RefTeam& x, const SymbolList& tuple) {
  if (tuple.size() > 20) return false;  // more patterns than any test team
  std::set<std::vector<bool>> seen;
  for (const auto& s : x) seen.insert(tuple_values(s, tuple));
  return seen.size() == (std::size_t{1} << tuple.size());
}

inline bool ref_eval(const RefTeam& x, const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return std::all_of(x.begin(), x.end(), [&](const Assignment& s) {
        return s.at(f.symbol().name());
      });
    case Kind::NegProp:
      return std::all_of(x.begin(), x.end(), [&](const Assignment& s) {
        return !s.at(f.symbol().name());
      });
    case Kind::And:
      return ref_eval(x, f.left()) && ref_eval(x, f.right());
    case Kind::Or:
      return any_cover(x, [&](const RefTeam& y, const RefTeam& z) {
        return ref_eval(y, f.left()) && ref_eval(z, f.right());
      });
    case Kind::Dep:
      return ref_dep(x, f.controls(), f.target());
    case Kind::Indep:
      return ref_indep(x, f.condition(), f.left_tuple(), f.right_tuple());
    case Kind::Incl:
      return ref_incl(x, f.left_tuple(), f.right_tuple());
    case Kind::ClassNeg:
      return !ref_eval(x, f.child());
    case Kind::IntDisj:
      return ref_eval(x, f.left()) || ref_eval(x, f.right());
    case Kind::Tensor:
      return !any_cover(x, [&](const RefTeam& y, const RefTeam& z) {
        return !ref_eval(y, f.left()) && !ref_eval(z, f.right());
      });
    case Kind::IntImpl:
      return !any_subteam(x, [&](const RefTeam& y) {
        return ref_eval(y, f.left()) && !ref_eval(y, f.right());
      });
    case Kind::Max:
      return ref_max(x, f.tuple());
  }
  throw std::logic_error("ref_eval: unhandled kind");
}

inline bool ref_eval(const Team& t, const Formula& f) {
  return ref_eval(from_team(t), f);
}

// Single-assignment truth for &, | and literals, | read as Boolean or.
inline bool ref_classical(const Assignment& s, const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return s.at(f.symbol().name());
    case Kind::NegProp:
      return !s.at(f.symbol().name());
    case Kind::And:
      return ref_classical(s, f.left()) && ref_classical(s, f.right());
    case Kind::Or:
      return ref_classical(s, f.left()) || ref_classical(s, f.right());
    default:
      throw std::invalid_argument(
          "ref_classical handles literals, & and | only");
  }
}

}  // namespace refsem
