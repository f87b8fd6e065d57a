#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nooplab {

using ClassName = std::string;
using MemberLabel = std::string;
using VarName = std::string;

// Built-in classes present in every program. `Object` is the empty root of
// the hierarchy; `True` and `False` are the empty singleton classes produced
// by `instanceof`.
inline constexpr const char* kObjectClass = "Object";
inline constexpr const char* kTrueClass = "True";
inline constexpr const char* kFalseClass = "False";

inline bool isBuiltinClass(const ClassName& name) {
  return name == kObjectClass || name == kTrueClass || name == kFalseClass;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarExpr {
  VarName name;
};
struct ThisExpr {};
struct FieldGetExpr {
  ExprPtr object;
  MemberLabel label;
};
struct InvokeExpr {
  ExprPtr receiver;
  MemberLabel method;
  std::vector<ExprPtr> args;
};
struct NewExpr {
  ClassName className;
  std::vector<ExprPtr> args;
};
struct CastExpr {
  ClassName target;
  ExprPtr operand;
};
struct InstanceOfExpr {
  ExprPtr operand;
  ClassName className;
};

struct Expr {
  std::variant<VarExpr, ThisExpr, FieldGetExpr, InvokeExpr, NewExpr, CastExpr, InstanceOfExpr> node;
  int line = 0;
  int col = 0;
};

template <class T, class... Args>
ExprPtr makeExpr(int line, int col, Args&&... args) {
  return std::make_shared<Expr>(Expr{T{std::forward<Args>(args)...}, line, col});
}

struct FieldDecl {
  MemberLabel name;
  ClassName type;
  int line = 0;
  int col = 0;
};

struct Param {
  VarName name;
  ClassName type;
};

struct MethodDecl {
  MemberLabel name;
  std::vector<Param> params;
  ClassName returnType;
  ExprPtr body;
  int line = 0;
  int col = 0;
};

struct ClassDecl {
  ClassName name;
  ClassName superName;  // defaults to Object
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::string contractDoc;  // joined //@ lines preceding the declaration, never checked
  int line = 0;
  int col = 0;

  const MethodDecl* findMethod(const MemberLabel& label) const {
    for (const auto& m : methods) {
      if (m.name == label) return &m;
    }
    return nullptr;
  }
};

// A resolved MiniOO program: class table plus an optional main expression.
// Instances are immutable once built by the parser and safe to share.
struct Program {
  std::vector<ClassDecl> classes;
  ExprPtr main;  // may be null

  const ClassDecl* findClass(const ClassName& name) const {
    for (const auto& c : classes) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

// Canonical source form; parse(prettyPrint(p)) reproduces p.
std::string prettyPrint(const Program& p);
std::string prettyPrint(const Expr& e);

}  // namespace nooplab
