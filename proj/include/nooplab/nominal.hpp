#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nooplab/class_table.hpp"
#include "nooplab/diagnostics.hpp"

namespace nooplab {

struct NominalTypeEnv {
  std::map<VarName, ClassName> vars;
  std::optional<ClassName> thisType;
};

// Declared-ancestry subtyping: true iff t is reachable from s via zero or
// more extends steps. Decided against precomputed ancestor sets.
bool nominalSubtype(const ClassTable& table, const ClassName& s, const ClassName& t);

// Contravariant parameters, covariant return. Returns the NOM004 diagnostic
// on rejection, nullopt on acceptance.
std::optional<Diagnostic> checkOverride(const ClassTable& table, const OverrideSite& site);

// FJ-style expression typing under the nominal discipline.
// Throws DiagnosticError (NOM001/NOM002/NOM003/NOM005).
ClassName typeExpr(const ClassTable& table, const NominalTypeEnv& env, const Expr& e);

// Full nominal well-formedness: override verdicts, method bodies, main.
std::vector<Diagnostic> checkNominal(const ClassTable& table);

// The inheritance <=> subtyping equivalence over every ordered pair of
// declared classes plus Object, as an executable regression: the subtype
// relation (ancestor sets) is compared against extends-chain walking.
struct TheoremPair {
  ClassName sub;
  ClassName sup;
  bool nominalSub;
  bool inheritsChain;
};

struct TheoremReport {
  std::vector<TheoremPair> pairs;
  bool holds = true;
};

TheoremReport verifyInheritanceIsSubtyping(const ClassTable& table);

}  // namespace nooplab
