#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nooplab/class_table.hpp"
#include "nooplab/diagnostics.hpp"

namespace nooplab {

struct StructNode;

// A regular recursive structural type: de Bruijn type variable, mu binder,
// or record. Immutable value handle; record members are kept sorted by label
// so alpha-equivalent types compare equal member-for-member.
class StructType {
 public:
  enum class Kind { Var, Mu, Record };

  StructType() = default;

  static StructType var(int index);
  static StructType mu(StructType body);
  static StructType record(std::vector<std::pair<MemberLabel, StructType>> fields,
                           std::vector<std::pair<MemberLabel, struct StructMethodType>> methods);
  static StructType top();

  Kind kind() const;
  int varIndex() const;
  const StructType& muBody() const;
  const std::vector<std::pair<MemberLabel, StructType>>& fields() const;
  const std::vector<std::pair<MemberLabel, struct StructMethodType>>& methods() const;

  bool isTop() const;
  bool isClosed() const;
  size_t hash() const;
  const StructNode* node() const { return node_.get(); }

  const StructType* findField(const MemberLabel& label) const;
  const struct StructMethodType* findMethod(const MemberLabel& label) const;

  friend bool operator==(const StructType& a, const StructType& b);
  friend bool operator!=(const StructType& a, const StructType& b) { return !(a == b); }

 private:
  explicit StructType(std::shared_ptr<const StructNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const StructNode> node_;
};

struct StructMethodType {
  std::vector<StructType> params;
  StructType ret;

  friend bool operator==(const StructMethodType& a, const StructMethodType& b) {
    return a.params == b.params && a.ret == b.ret;
  }
};

struct StructNode {
  StructType::Kind kind;
  int varIndex = 0;
  StructType body;  // Mu
  std::vector<std::pair<MemberLabel, StructType>> fields;
  std::vector<std::pair<MemberLabel, StructMethodType>> methods;
  size_t hash = 0;
  int maxFreeVar = -1;  // highest free de Bruijn index, -1 when closed
};

struct StructTypeHash {
  size_t operator()(const StructType& t) const { return t.hash(); }
};

// Substitutes the whole mu type for its bound variable in the body.
// Requires kind() == Mu.
StructType unfoldOnce(const StructType& t);

// Translation of a class to its recursive record type. Occurrences of the
// member's declaring class rebind to the self variable of the class under
// translation; other names expand in place, with a translation stack folding
// mutually recursive groups onto in-scope binders. The result is closed,
// contractive and regular; a binder nothing refers to is stripped.
StructType structuralTypeOf(const ClassTable& table, const ClassName& name);

// Reusable one-step-unfolding memo for batches of subtype queries. Confine
// an instance to one thread; queries against a shared cache return the same
// verdicts as cache-free ones.
class SubtypeCache {
 public:
  const StructType& unfold(const StructType& t);

 private:
  std::unordered_map<const StructNode*, StructType> unfolds_;
};

// Coinductive subtyping with assumption sets: assumed pairs hold, everything
// is a subtype of the empty record, mu unfolds once after the pair is
// assumed, records go width+depth on fields and contra/co on methods.
bool structSubtype(const StructType& s, const StructType& t);
bool structSubtype(const StructType& s, const StructType& t, SubtypeCache& cache);

// Mutual structural subtyping.
bool typeEquivalent(const StructType& s, const StructType& t);

// Canonical text form: "μX.{f: T, ...; m(T1,...,Tn): T, ...}", fields before
// methods, labels sorted, binder names assigned by depth; top prints as "{}".
std::string toString(const StructType& t);

struct StructuralTypeEnv {
  std::map<VarName, StructType> vars;
  std::optional<StructType> thisType;
};

// Structural expression typing. Casts and instanceof are type errors here:
// no nominal information exists at runtime under this discipline (STR004).
// Throws DiagnosticError (STR001..STR004).
StructType structTypeExpr(const ClassTable& table, const StructuralTypeEnv& env, const Expr& e);

// Structural well-formedness of every declared method body and the main
// expression. Override variance is deliberately not checked: legality under
// this discipline surfaces only through subtyping queries.
std::vector<Diagnostic> checkStructural(const ClassTable& table);

}  // namespace nooplab
