#include "nooplab/nominal.hpp"

#include <algorithm>

namespace nooplab {

bool nominalSubtype(const ClassTable& table, const ClassName& s, const ClassName& t) {
  return table.ancestorsOf(s).count(t) > 0;
}

std::optional<Diagnostic> checkOverride(const ClassTable& table, const OverrideSite& site) {
  const MethodSig& parent = site.parentSig;
  const MethodSig& child = site.childSig;
  int line = child.decl ? child.decl->line : 0;
  int col = child.decl ? child.decl->col : 0;
  auto reject = [&](const std::string& why) {
    return Diagnostic{codes::IllegalOverride,
                      "illegal override of " + parent.declaredIn + "." + site.method + " in class " +
                          site.className + ": " + why,
                      line, col};
  };
  if (parent.params.size() != child.params.size()) {
    return reject("arity " + std::to_string(child.params.size()) + " does not match inherited arity " +
                  std::to_string(parent.params.size()));
  }
  for (size_t i = 0; i < parent.params.size(); ++i) {
    // Contravariance: the overriding parameter may only widen.
    if (!nominalSubtype(table, parent.params[i], child.params[i])) {
      return reject("parameter " + std::to_string(i + 1) + " type " + child.params[i] +
                    " must be a supertype of " + parent.params[i]);
    }
  }
  if (!nominalSubtype(table, child.ret, parent.ret)) {
    return reject("return type " + child.ret + " must be a subtype of " + parent.ret);
  }
  return std::nullopt;
}

ClassName typeExpr(const ClassTable& table, const NominalTypeEnv& env, const Expr& e) {
  return std::visit(
      [&](const auto& node) -> ClassName {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          auto it = env.vars.find(node.name);
          if (it == env.vars.end()) {
            throw DiagnosticError({codes::UnknownName, "unbound variable '" + node.name + "'",
                                   e.line, e.col});
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, ThisExpr>) {
          if (!env.thisType) {
            throw DiagnosticError({codes::UnknownName, "'this' used outside a method body",
                                   e.line, e.col});
          }
          return *env.thisType;
        } else if constexpr (std::is_same_v<T, FieldGetExpr>) {
          ClassName rt = typeExpr(table, env, *node.object);
          const FieldSig* f = table.signatureOf(rt).findField(node.label);
          if (f == nullptr) {
            throw DiagnosticError({codes::UnknownMember,
                                   "class " + rt + " has no field '" + node.label + "'",
                                   e.line, e.col});
          }
          return f->type;
        } else if constexpr (std::is_same_v<T, InvokeExpr>) {
          ClassName rt = typeExpr(table, env, *node.receiver);
          const MethodSig* m = table.signatureOf(rt).findMethod(node.method);
          if (m == nullptr) {
            throw DiagnosticError({codes::UnknownMember,
                                   "class " + rt + " has no method '" + node.method + "'",
                                   e.line, e.col});
          }
          if (m->params.size() != node.args.size()) {
            throw DiagnosticError({codes::ArityMismatch,
                                   rt + "." + node.method + " expects " +
                                       std::to_string(m->params.size()) + " argument(s), got " +
                                       std::to_string(node.args.size()),
                                   e.line, e.col});
          }
          for (size_t i = 0; i < node.args.size(); ++i) {
            ClassName at = typeExpr(table, env, *node.args[i]);
            if (!nominalSubtype(table, at, m->params[i])) {
              throw DiagnosticError({codes::ArgumentTypeMismatch,
                                     "argument " + std::to_string(i + 1) + " of " + rt + "." +
                                         node.method + " has type " + at + ", expected a subtype of " +
                                         m->params[i],
                                     node.args[i]->line, node.args[i]->col});
            }
          }
          return m->ret;
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          const ClassSignature& sig = table.signatureOf(node.className);
          if (sig.fields.size() != node.args.size()) {
            throw DiagnosticError({codes::ArityMismatch,
                                   "new " + node.className + " expects " +
                                       std::to_string(sig.fields.size()) + " argument(s), got " +
                                       std::to_string(node.args.size()),
                                   e.line, e.col});
          }
          for (size_t i = 0; i < node.args.size(); ++i) {
            ClassName at = typeExpr(table, env, *node.args[i]);
            const auto& [label, fsig] = sig.fields[i];
            if (!nominalSubtype(table, at, fsig.type)) {
              throw DiagnosticError({codes::ArgumentTypeMismatch,
                                     "argument " + std::to_string(i + 1) + " of new " +
                                         node.className + " (field '" + label + "') has type " + at +
                                         ", expected a subtype of " + fsig.type,
                                     node.args[i]->line, node.args[i]->col});
            }
          }
          return node.className;
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          ClassName ot = typeExpr(table, env, *node.operand);
          if (!nominalSubtype(table, node.target, ot) && !nominalSubtype(table, ot, node.target)) {
            throw DiagnosticError({codes::StupidCast,
                                   "cast between unrelated classes " + ot + " and " + node.target,
                                   e.line, e.col});
          }
          return node.target;
        } else {
          static_assert(std::is_same_v<T, InstanceOfExpr>);
          typeExpr(table, env, *node.operand);
          return kObjectClass;
        }
      },
      e.node);
}

std::vector<Diagnostic> checkNominal(const ClassTable& table) {
  std::vector<Diagnostic> diags;
  for (const auto& site : table.overrideSites()) {
    if (auto d = checkOverride(table, site)) diags.push_back(*d);
  }
  for (const auto& c : table.program().classes) {
    for (const auto& m : c.methods) {
      NominalTypeEnv env;
      env.thisType = c.name;
      for (const auto& prm : m.params) env.vars[prm.name] = prm.type;
      try {
        ClassName bodyType = typeExpr(table, env, *m.body);
        if (!nominalSubtype(table, bodyType, m.returnType)) {
          diags.push_back({codes::ArgumentTypeMismatch,
                           "body of " + c.name + "." + m.name + " has type " + bodyType +
                               ", expected a subtype of declared return type " + m.returnType,
                           m.line, m.col});
        }
      } catch (const DiagnosticError& err) {
        diags.push_back(err.diagnostic());
      }
    }
  }
  if (table.program().main) {
    try {
      typeExpr(table, NominalTypeEnv{}, *table.program().main);
    } catch (const DiagnosticError& err) {
      diags.push_back(err.diagnostic());
    }
  }
  return diags;
}

TheoremReport verifyInheritanceIsSubtyping(const ClassTable& table) {
  TheoremReport report;
  for (const auto& sub : table.auditNames()) {
    for (const auto& sup : table.auditNames()) {
      TheoremPair pair{sub, sup, nominalSubtype(table, sub, sup), table.inherits(sub, sup)};
      report.holds = report.holds && pair.nominalSub == pair.inheritsChain;
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace nooplab
