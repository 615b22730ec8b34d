#pragma once

#include <string>

#include "teamlogic/formula.hpp"

namespace teamlogic {

// Syntactic fragment of a formula plus the known complexity of its three
// decision problems. Derived operators (ovee, otimes, -->, max) are tracked
// separately but force the ∼-bearing label: eliminating them introduces
// contradictory negation.
//
// Complexity entries are filled for the fragments with settled bounds:
//   PL        sat NP-complete       val coNP-complete       mc NC¹-complete
//   PD        sat NP-complete       val NEXPTIME-complete   mc NP-complete
//   PL[⊥c]    sat NP-complete       val NEXPTIME-hard, in coNEXPTIME^NP
//                                                           mc NP-complete
//   PL[⊆]    sat EXPTIME-complete  val coNP-complete       mc P-complete
//   anything with ∼: sat/val AEXPTIME(poly)-complete, mc PSPACE-complete
// Every other combination reports "unknown".

struct Fragment {
  bool uses_dep = false;
  bool uses_indep = false;
  bool uses_incl = false;
  bool uses_classneg = false;
  bool uses_derived = false;

  std::string label;
  std::string sat_class;
  std::string val_class;
  std::string mc_class;

  bool has_classneg_feature() const { return uses_classneg || uses_derived; }

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

namespace detail {

inline void scan_features(const Formula& f, Fragment& out) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
      return;
    case Kind::Dep:
      out.uses_dep = true;
      return;
    case Kind::Indep:
      out.uses_indep = true;
      return;
    case Kind::Incl:
      out.uses_incl = true;
      return;
    case Kind::Max:
      out.uses_derived = true;
      return;
    case Kind::ClassNeg:
      out.uses_classneg = true;
      scan_features(f.child(), out);
      return;
    case Kind::IntDisj:
    case Kind::Tensor:
    case Kind::IntImpl:
      out.uses_derived = true;
      [[fallthrough]];
    case Kind::And:
    case Kind::Or:
      scan_features(f.left(), out);
      scan_features(f.right(), out);
      return;
  }
}

inline std::string fragment_label(const Fragment& fr) {
  bool cneg = fr.has_classneg_feature();
  if (!fr.uses_dep && !fr.uses_indep && !fr.uses_incl && !cneg) return "PL";
  if (fr.uses_dep && !fr.uses_indep && !fr.uses_incl && !cneg) return "PD";
  std::string items;
  auto add = [&](const char* item) {
    if (!items.empty()) items += ",";
    items += item;
  };
  if (fr.uses_dep) add("dep");
  if (fr.uses_indep) add("⊥c");  // ⊥c
  if (fr.uses_incl) add("⊆");    // ⊆
  if (cneg) add("∼");            // ∼
  return "PL[" + items + "]";
}

inline void fill_complexity(Fragment& fr) {
  if (fr.has_classneg_feature()) {
    fr.sat_class = "AEXPTIME(poly)-complete";
    fr.val_class = "AEXPTIME(poly)-complete";
    fr.mc_class = "PSPACE-complete";
    return;
  }
  int atoms =
      (fr.uses_dep ? 1 : 0) + (fr.uses_indep ? 1 : 0) + (fr.uses_incl ? 1 : 0);
  if (atoms == 0) {
    fr.sat_class = "NP-complete";
    fr.val_class = "coNP-complete";
    fr.mc_class = "NC¹-complete";  // NC¹
  } else if (atoms == 1 && fr.uses_dep) {
    fr.sat_class = "NP-complete";
    fr.val_class = "NEXPTIME-complete";
    fr.mc_class = "NP-complete";
  } else if (atoms == 1 && fr.uses_indep) {
    fr.sat_class = "NP-complete";
    fr.val_class = "NEXPTIME-hard, in coNEXPTIME^NP";
    fr.mc_class = "NP-complete";
  } else if (atoms == 1 && fr.uses_incl) {
    fr.sat_class = "EXPTIME-complete";
    fr.val_class = "coNP-complete";
    fr.mc_class = "P-complete";
  } else {
    fr.sat_class = "unknown";
    fr.val_class = "unknown";
    fr.mc_class = "unknown";
  }
}

}  // namespace detail

inline Fragment classify(const Formula& f) {
  Fragment fr;
  detail::scan_features(f, fr);
  fr.label = detail::fragment_label(fr);
  detail::fill_complexity(fr);
  return fr;
}

// "PL[⊆]; SAT EXPTIME-complete; VAL coNP-complete; MC P-complete"
inline std::string describe(const Fragment& fr) {
  return fr.label + "; SAT " + fr.sat_class + "; VAL " + fr.val_class +
         "; MC " + fr.mc_class;
}

}  // namespace teamlogic
