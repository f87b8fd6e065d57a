#include "nooplab/evaluator.hpp"

#include <algorithm>

namespace nooplab {

namespace {

struct CastSignal {
  ClassName target;
  ClassName actual;
};
struct TimeoutSignal {};

const std::shared_ptr<const SignatureClosure>& poisonedClosure() {
  static const auto sentinel = std::make_shared<const SignatureClosure>(
      SignatureClosure{"__poisoned__", {}});
  return sentinel;
}

class Evaluator {
 public:
  Evaluator(const ClassTable& table, const EvalOptions& options)
      : table_(table), options_(options), stepsLeft_(options.stepBudget) {}

  ObjectPtr eval(const ValueEnv& env, const ObjectPtr& self, const Expr& e) {
    DepthGuard guard(*this);
    return std::visit(
        [&](const auto& node) -> ObjectPtr {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VarExpr>) {
            auto it = env.find(node.name);
            if (it == env.end()) {
              throw DiagnosticError({codes::UnknownName, "unbound variable '" + node.name + "'",
                                     e.line, e.col});
            }
            return it->second;
          } else if constexpr (std::is_same_v<T, ThisExpr>) {
            if (!self) {
              throw DiagnosticError({codes::UnknownName, "'this' used outside a method body",
                                     e.line, e.col});
            }
            return self;
          } else if constexpr (std::is_same_v<T, FieldGetExpr>) {
            ObjectPtr receiver = eval(env, self, *node.object);
            const ObjectPtr* v = receiver->findField(node.label);
            if (v == nullptr) {
              throw DiagnosticError({codes::MemberNotFound,
                                     "object has no field '" + node.label + "'", e.line, e.col});
            }
            return *v;
          } else if constexpr (std::is_same_v<T, InvokeExpr>) {
            ObjectPtr receiver = eval(env, self, *node.receiver);
            std::vector<ObjectPtr> args;
            for (const auto& a : node.args) args.push_back(eval(env, self, *a));
            const MethodClosure* closure = receiver->findMethod(node.method);
            if (closure == nullptr) {
              throw DiagnosticError({codes::MemberNotFound,
                                     "object has no method '" + node.method + "'", e.line, e.col});
            }
            const MethodDecl& decl = *closure->decl;
            if (decl.params.size() != args.size()) {
              throw DiagnosticError({codes::ArityError,
                                     "method " + node.method + " expects " +
                                         std::to_string(decl.params.size()) + " argument(s), got " +
                                         std::to_string(args.size()),
                                     e.line, e.col});
            }
            if (--stepsLeft_ < 0) throw TimeoutSignal{};
            ValueEnv callEnv;
            for (size_t i = 0; i < args.size(); ++i) callEnv[decl.params[i].name] = args[i];
            return eval(callEnv, receiver, *decl.body);
          } else if constexpr (std::is_same_v<T, NewExpr>) {
            std::vector<ObjectPtr> args;
            for (const auto& a : node.args) args.push_back(eval(env, self, *a));
            return construct(node.className, args, e);
          } else if constexpr (std::is_same_v<T, CastExpr>) {
            ObjectPtr v = eval(env, self, *node.operand);
            if (!runtimeInstanceOf(*v, node.target)) {
              throw CastSignal{node.target, v->sig->root};
            }
            return v;
          } else {
            static_assert(std::is_same_v<T, InstanceOfExpr>);
            ObjectPtr v = eval(env, self, *node.operand);
            return runtimeInstanceOf(*v, node.className) ? singleton(kTrueClass)
                                                         : singleton(kFalseClass);
          }
        },
        e.node);
  }

 private:
  class DepthGuard {
   public:
    explicit DepthGuard(Evaluator& ev) : ev_(ev) {
      // Native-stack stand-in for the step budget: both divergences surface
      // as the same Timeout outcome.
      if (++ev_.depth_ > kMaxDepth) throw TimeoutSignal{};
    }
    ~DepthGuard() { --ev_.depth_; }

   private:
    static constexpr int kMaxDepth = 10'000;
    Evaluator& ev_;
  };

  ObjectPtr construct(const ClassName& className, const std::vector<ObjectPtr>& args,
                      const Expr& site) {
    const ClassSignature& sig = table_.signatureOf(className);
    if (sig.fields.size() != args.size()) {
      throw DiagnosticError({codes::ArityError,
                             "new " + className + " expects " + std::to_string(sig.fields.size()) +
                                 " argument(s), got " + std::to_string(args.size()),
                             site.line, site.col});
    }
    auto obj = std::make_shared<ObjectValue>();
    obj->sig = options_.poisonSignatures ? poisonedClosure() : table_.closureOf(className);
    for (size_t i = 0; i < args.size(); ++i) {
      obj->fields.emplace_back(sig.fields[i].first, args[i]);
    }
    for (const auto& [label, msig] : sig.methods) {
      obj->methods.emplace_back(label, MethodClosure{msig.declaredIn, msig.decl});
    }
    return obj;
  }

  ObjectPtr singleton(const ClassName& name) {
    auto& slot = name == kTrueClass ? trueSingleton_ : falseSingleton_;
    if (!slot) {
      auto obj = std::make_shared<ObjectValue>();
      obj->sig = options_.poisonSignatures ? poisonedClosure() : table_.closureOf(name);
      slot = obj;
    }
    return slot;
  }

  const ClassTable& table_;
  const EvalOptions& options_;
  long stepsLeft_;
  int depth_ = 0;
  ObjectPtr trueSingleton_;
  ObjectPtr falseSingleton_;
};

EvalOutcome runEvaluator(const ClassTable& table, const ValueEnv& env, ObjectPtr self,
                         const Expr& e, const EvalOptions& options) {
  try {
    Evaluator ev(table, options);
    return EvalSuccess{ev.eval(env, self, e)};
  } catch (const CastSignal& sig) {
    return EvalCastError{sig.target, sig.actual};
  } catch (const TimeoutSignal&) {
    return EvalTimeout{};
  } catch (const DiagnosticError& err) {
    return EvalFault{err.diagnostic()};
  }
}

}  // namespace

EvalOutcome evalExpr(const ClassTable& table, const ValueEnv& env, ObjectPtr self, const Expr& e,
                     const EvalOptions& options) {
  return runEvaluator(table, env, std::move(self), e, options);
}

EvalOutcome evalProgram(const ClassTable& table, const EvalOptions& options) {
  if (!table.program().main) {
    return EvalFault{{codes::SyntaxError, "program has no main expression", 0, 0}};
  }
  return runEvaluator(table, {}, nullptr, *table.program().main, options);
}

bool runtimeInstanceOf(const ObjectValue& v, const ClassName& c) {
  ClassName cur = v.sig->root;
  for (;;) {
    if (cur == c) return true;
    auto it = v.sig->table.find(cur);
    if (it == v.sig->table.end() || it->second.superNames.empty()) return false;
    cur = it->second.superNames.front();
  }
}

ErasedObject erase(const ObjectValue& v) {
  ErasedObject out;
  for (const auto& [label, value] : v.fields) {
    out.fields.emplace_back(label, erase(*value));
  }
  for (const auto& [label, closure] : v.methods) {
    out.methodLabels.push_back(label);
  }
  return out;
}

std::string printValue(const ObjectValue& v) {
  std::string out = v.sig->root + "{";
  bool first = true;
  for (const auto& [label, value] : v.fields) {
    if (!first) out += ", ";
    first = false;
    out += label + "=" + printValue(*value);
  }
  return out + "}";
}

std::string printErased(const ErasedObject& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [label, value] : v.fields) {
    if (!first) out += ", ";
    first = false;
    out += label + "=" + printErased(value);
  }
  return out + "}";
}

std::string printOutcome(const EvalOutcome& outcome, bool erased) {
  if (const auto* ok = std::get_if<EvalSuccess>(&outcome)) {
    return erased ? printErased(erase(*ok->value)) : printValue(*ok->value);
  }
  if (const auto* cast = std::get_if<EvalCastError>(&outcome)) {
    return "CastError: cannot cast " + cast->actual + " to " + cast->target;
  }
  if (std::holds_alternative<EvalTimeout>(outcome)) {
    return "Timeout: step budget exhausted";
  }
  return std::get<EvalFault>(outcome).diag.str();
}

}  // namespace nooplab
