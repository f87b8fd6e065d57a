#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nooplab/class_table.hpp"
#include "nooplab/diagnostics.hpp"

namespace nooplab {

struct ObjectValue;
using ObjectPtr = std::shared_ptr<const ObjectValue>;

struct MethodClosure {
  ClassName declaringClass;
  const MethodDecl* decl;  // self is bound at invocation
};

// A runtime object is literally a triple: signature closure, fields record,
// methods record. Fields and methods are separate finite maps whose label
// sets match the object's class signature exactly. Immutable once built.
struct ObjectValue {
  std::shared_ptr<const SignatureClosure> sig;
  std::vector<std::pair<MemberLabel, ObjectPtr>> fields;
  std::vector<std::pair<MemberLabel, MethodClosure>> methods;

  const ObjectPtr* findField(const MemberLabel& label) const {
    for (const auto& [l, v] : fields) {
      if (l == label) return &v;
    }
    return nullptr;
  }
  const MethodClosure* findMethod(const MemberLabel& label) const {
    for (const auto& [l, m] : methods) {
      if (l == label) return &m;
    }
    return nullptr;
  }
};

// The record view of an object: nominal information dropped entirely,
// method entries reduced to their labels.
struct ErasedObject {
  std::vector<std::pair<MemberLabel, ErasedObject>> fields;
  std::vector<MemberLabel> methodLabels;

  friend bool operator==(const ErasedObject& a, const ErasedObject& b) {
    return a.fields == b.fields && a.methodLabels == b.methodLabels;
  }
};

struct EvalSuccess {
  ObjectPtr value;
};
struct EvalCastError {
  ClassName target;
  ClassName actual;
};
struct EvalTimeout {};
struct EvalFault {  // member/arity faults, reachable only from unchecked input
  Diagnostic diag;
};

using EvalOutcome = std::variant<EvalSuccess, EvalCastError, EvalTimeout, EvalFault>;

struct EvalOptions {
  long stepBudget = 1'000'000;   // method invocations before Timeout
  bool poisonSignatures = false; // attach a sentinel closure to every object
};

using ValueEnv = std::map<VarName, ObjectPtr>;

// Call-by-value big-step evaluation: receiver first, then arguments left to
// right; `this` and parameters bound for the body. Mode-independent; the
// checkers gate what reaches it.
EvalOutcome evalExpr(const ClassTable& table, const ValueEnv& env, ObjectPtr self, const Expr& e,
                     const EvalOptions& options = {});

// Evaluates the program's main expression.
EvalOutcome evalProgram(const ClassTable& table, const EvalOptions& options = {});

// True iff c is on the extends chain recorded in the value's closure.
bool runtimeInstanceOf(const ObjectValue& v, const ClassName& c);

ErasedObject erase(const ObjectValue& v);

// Canonical printings: "ClassName{field=..., ...}" and erased "{field=...}".
std::string printValue(const ObjectValue& v);
std::string printErased(const ErasedObject& v);

// One line per outcome; erased=true prints result values via the erased view.
std::string printOutcome(const EvalOutcome& outcome, bool erased = false);

}  // namespace nooplab
