#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nooplab/ast.hpp"

namespace nooplab {

struct FieldSig {
  ClassName type;
  ClassName declaredIn;
};

struct MethodSig {
  std::vector<ClassName> params;
  ClassName ret;
  ClassName declaredIn;
  const MethodDecl* decl = nullptr;

  bool sameShape(const MethodSig& other) const {
    return params == other.params && ret == other.ret;
  }
};

// A class's full flattened interface: every ancestor member plus its own,
// in flattening order (ancestors first), inherited signatures verbatim.
struct ClassSignature {
  ClassName name;
  std::vector<ClassName> superNames;  // single inheritance: length 1, empty for Object
  std::vector<std::pair<MemberLabel, FieldSig>> fields;
  std::vector<std::pair<MemberLabel, MethodSig>> methods;

  const FieldSig* findField(const MemberLabel& label) const {
    for (const auto& [l, sig] : fields) {
      if (l == label) return &sig;
    }
    return nullptr;
  }
  const MethodSig* findMethod(const MemberLabel& label) const {
    for (const auto& [l, sig] : methods) {
      if (l == label) return &sig;
    }
    return nullptr;
  }
};

// All signatures reachable from `root` through member signatures and the
// parent chain; closed under reachability.
struct SignatureClosure {
  ClassName root;
  std::map<ClassName, ClassSignature> table;
};

bool signatureEquals(const SignatureClosure& a, const SignatureClosure& b);

// The `extends` parent function with Object as unique root.
// Throws DiagnosticError(NOM006) on inheritance cycles.
std::map<ClassName, ClassName> classGraph(const Program& p);

// A method override recorded during flattening; the nominal checker issues
// the variance verdict, the structural discipline accepts replacement as-is.
struct OverrideSite {
  ClassName className;
  MemberLabel method;
  MethodSig parentSig;
  MethodSig childSig;
};

// Resolved program plus everything computed eagerly at load time: the parent
// map, flattened signatures, signature closures, and override sites.
// Immutable after build(); shareable across threads.
class ClassTable {
 public:
  static ClassTable build(Program p);

  const Program& program() const { return *program_; }
  std::shared_ptr<const Program> programPtr() const { return program_; }

  // Declared class names in declaration order (excludes builtins).
  const std::vector<ClassName>& declaredNames() const { return declaredNames_; }
  // Declared names plus Object, sorted; the audit/theorem pair universe.
  const std::vector<ClassName>& auditNames() const { return auditNames_; }

  bool isClassName(const ClassName& name) const;
  const ClassDecl* decl(const ClassName& name) const { return program_->findClass(name); }

  // Parent of a class; Object has no parent (returns empty string).
  const ClassName& parentOf(const ClassName& name) const;

  const ClassSignature& signatureOf(const ClassName& name) const;
  std::shared_ptr<const SignatureClosure> closureOf(const ClassName& name) const;

  // True iff `sup` appears on `sub`'s extends chain (reflexive, transitive).
  // Computed by chain walking; the nominal subtype relation is derived
  // separately from precomputed ancestor sets so the two can be compared.
  bool inherits(const ClassName& sub, const ClassName& sup) const;

  // Reflexive-transitive extends closure, precomputed at build time.
  const std::set<ClassName>& ancestorsOf(const ClassName& name) const;

  // Number of extends steps from sub up to sup; -1 when sup is not an ancestor.
  int chainDistance(const ClassName& sub, const ClassName& sup) const;

  const std::vector<OverrideSite>& overrideSites() const { return overrideSites_; }

 private:
  std::shared_ptr<const Program> program_;
  std::map<ClassName, ClassName> parents_;
  std::map<ClassName, ClassSignature> signatures_;
  std::map<ClassName, std::shared_ptr<const SignatureClosure>> closures_;
  std::map<ClassName, std::set<ClassName>> ancestorSets_;
  std::vector<ClassName> declaredNames_;
  std::vector<ClassName> auditNames_;
  std::vector<OverrideSite> overrideSites_;
};

// Deterministic JSON rendering of all declared classes plus Object:
// classes sorted by name, members sorted by label.
std::string dumpSignaturesJson(const ClassTable& table);

}  // namespace nooplab
