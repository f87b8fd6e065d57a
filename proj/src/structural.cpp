#include "nooplab/structural.hpp"

#include <algorithm>

namespace nooplab {

namespace {

size_t hashCombine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t hashString(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

StructType StructType::var(int index) {
  auto n = std::make_shared<StructNode>();
  n->kind = Kind::Var;
  n->varIndex = index;
  n->hash = hashCombine(0x56, static_cast<size_t>(index));
  n->maxFreeVar = index;
  return StructType(std::move(n));
}

StructType StructType::mu(StructType body) {
  auto n = std::make_shared<StructNode>();
  n->kind = Kind::Mu;
  n->hash = hashCombine(0x4d, body.hash());
  n->maxFreeVar = body.node()->maxFreeVar < 0 ? -1 : body.node()->maxFreeVar - 1;
  n->body = std::move(body);
  return StructType(std::move(n));
}

StructType StructType::record(std::vector<std::pair<MemberLabel, StructType>> fields,
                              std::vector<std::pair<MemberLabel, StructMethodType>> methods) {
  auto byLabel = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(fields.begin(), fields.end(), byLabel);
  std::sort(methods.begin(), methods.end(), byLabel);
  size_t h = 0x52;
  int maxFree = -1;
  for (const auto& [l, t] : fields) {
    h = hashCombine(h, hashString(l));
    h = hashCombine(h, t.hash());
    maxFree = std::max(maxFree, t.node()->maxFreeVar);
  }
  h = hashCombine(h, 0x3b);
  for (const auto& [l, m] : methods) {
    h = hashCombine(h, hashString(l));
    for (const auto& p : m.params) {
      h = hashCombine(h, p.hash());
      maxFree = std::max(maxFree, p.node()->maxFreeVar);
    }
    h = hashCombine(h, m.ret.hash());
    maxFree = std::max(maxFree, m.ret.node()->maxFreeVar);
  }
  auto n = std::make_shared<StructNode>();
  n->kind = Kind::Record;
  n->fields = std::move(fields);
  n->methods = std::move(methods);
  n->hash = h;
  n->maxFreeVar = maxFree;
  return StructType(std::move(n));
}

StructType StructType::top() {
  static const StructType t = record({}, {});
  return t;
}

StructType::Kind StructType::kind() const { return node_->kind; }
int StructType::varIndex() const { return node_->varIndex; }
const StructType& StructType::muBody() const { return node_->body; }
const std::vector<std::pair<MemberLabel, StructType>>& StructType::fields() const {
  return node_->fields;
}
const std::vector<std::pair<MemberLabel, StructMethodType>>& StructType::methods() const {
  return node_->methods;
}
bool StructType::isTop() const {
  return node_->kind == Kind::Record && node_->fields.empty() && node_->methods.empty();
}
bool StructType::isClosed() const { return node_->maxFreeVar < 0; }
size_t StructType::hash() const { return node_->hash; }

const StructType* StructType::findField(const MemberLabel& label) const {
  for (const auto& [l, t] : node_->fields) {
    if (l == label) return &t;
  }
  return nullptr;
}

const StructMethodType* StructType::findMethod(const MemberLabel& label) const {
  for (const auto& [l, m] : node_->methods) {
    if (l == label) return &m;
  }
  return nullptr;
}

bool operator==(const StructType& a, const StructType& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_ == nullptr || b.node_ == nullptr) return false;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case StructType::Kind::Var:
      return a.varIndex() == b.varIndex();
    case StructType::Kind::Mu:
      return a.muBody() == b.muBody();
    case StructType::Kind::Record:
      return a.fields() == b.fields() && a.methods() == b.methods();
  }
  return false;
}

namespace {

StructType substitute(const StructType& t, int depth, const StructType& replacement) {
  // Nothing at or above the cutoff occurs free: share the subtree as-is.
  // This keeps the node universe of a subtype query finite.
  if (t.node()->maxFreeVar < depth) return t;
  switch (t.kind()) {
    case StructType::Kind::Var: {
      int i = t.varIndex();
      if (i == depth) return replacement;
      return i > depth ? StructType::var(i - 1) : t;
    }
    case StructType::Kind::Mu:
      return StructType::mu(substitute(t.muBody(), depth + 1, replacement));
    case StructType::Kind::Record: {
      auto fields = t.fields();
      for (auto& [l, ft] : fields) ft = substitute(ft, depth, replacement);
      auto methods = t.methods();
      for (auto& [l, m] : methods) {
        for (auto& p : m.params) p = substitute(p, depth, replacement);
        m.ret = substitute(m.ret, depth, replacement);
      }
      return StructType::record(std::move(fields), std::move(methods));
    }
  }
  return t;
}

// Removes an unreferenced binder at `level`, renumbering variables across it.
StructType stripBinder(const StructType& t, int level) {
  if (t.node()->maxFreeVar < level) return t;
  switch (t.kind()) {
    case StructType::Kind::Var: {
      int i = t.varIndex();
      assert(i != level);
      return i > level ? StructType::var(i - 1) : t;
    }
    case StructType::Kind::Mu:
      return StructType::mu(stripBinder(t.muBody(), level + 1));
    case StructType::Kind::Record: {
      auto fields = t.fields();
      for (auto& [l, ft] : fields) ft = stripBinder(ft, level);
      auto methods = t.methods();
      for (auto& [l, m] : methods) {
        for (auto& p : m.params) p = stripBinder(p, level);
        m.ret = stripBinder(m.ret, level);
      }
      return StructType::record(std::move(fields), std::move(methods));
    }
  }
  return t;
}

}  // namespace

StructType unfoldOnce(const StructType& t) {
  assert(t.kind() == StructType::Kind::Mu);
  return substitute(t.muBody(), 0, t);
}

namespace {

struct TranslationFrame {
  ClassName name;
  bool used = false;
};

class Translator {
 public:
  explicit Translator(const ClassTable& table) : table_(table) {}

  StructType translate(const ClassName& name) {
    if (isBuiltinClass(name)) return StructType::top();
    for (size_t i = 0; i < stack_.size(); ++i) {
      if (stack_[i].name == name) {
        stack_[i].used = true;
        return StructType::var(static_cast<int>(stack_.size() - i - 1));
      }
    }
    stack_.push_back({name});
    const ClassSignature& sig = table_.signatureOf(name);
    std::vector<std::pair<MemberLabel, StructType>> fields;
    for (const auto& [label, f] : sig.fields) {
      fields.emplace_back(label, memberType(f.type, f.declaredIn));
    }
    std::vector<std::pair<MemberLabel, StructMethodType>> methods;
    for (const auto& [label, m] : sig.methods) {
      StructMethodType mt;
      for (const auto& p : m.params) mt.params.push_back(memberType(p, m.declaredIn));
      mt.ret = memberType(m.ret, m.declaredIn);
      methods.emplace_back(label, std::move(mt));
    }
    bool used = stack_.back().used;
    stack_.pop_back();
    StructType body = StructType::record(std::move(fields), std::move(methods));
    return used ? StructType::mu(body) : stripBinder(body, 0);
  }

 private:
  // An occurrence of the declaring class's name is its self reference and
  // rebinds to the class currently under translation.
  StructType memberType(const ClassName& occurrence, const ClassName& declaredIn) {
    if (occurrence == declaredIn) {
      stack_.back().used = true;
      return StructType::var(0);
    }
    return translate(occurrence);
  }

  const ClassTable& table_;
  std::vector<TranslationFrame> stack_;
};

}  // namespace

StructType structuralTypeOf(const ClassTable& table, const ClassName& name) {
  return Translator(table).translate(name);
}

namespace {

// One subtype query's working state. Memoized unfolding keeps repeated
// unfolds pointer-identical, so cycles land on assumed pairs; the assumption
// list stays small, a flat vector beats hashing.
class SubtypeQuery {
 public:
  explicit SubtypeQuery(SubtypeCache& cache) : cache_(cache) { assumptions_.reserve(16); }

  bool run(const StructType& s, const StructType& t) {
    if (t.isTop()) return true;
    if (s == t) return true;  // reflexivity, pointer or structural
    std::pair<const StructNode*, const StructNode*> key{s.node(), t.node()};
    for (const auto& a : assumptions_) {
      if (a == key) return true;
    }
    if (s.kind() == StructType::Kind::Mu) {
      assumptions_.push_back(key);
      return run(cache_.unfold(s), t);
    }
    if (t.kind() == StructType::Kind::Mu) {
      assumptions_.push_back(key);
      return run(s, cache_.unfold(t));
    }
    assert(s.kind() == StructType::Kind::Record && t.kind() == StructType::Kind::Record);
    for (const auto& [label, want] : t.fields()) {
      const StructType* have = s.findField(label);
      if (have == nullptr || !run(*have, want)) return false;
    }
    for (const auto& [label, want] : t.methods()) {
      const StructMethodType* have = s.findMethod(label);
      if (have == nullptr || have->params.size() != want.params.size()) return false;
      for (size_t i = 0; i < want.params.size(); ++i) {
        if (!run(want.params[i], have->params[i])) return false;  // contravariant
      }
      if (!run(have->ret, want.ret)) return false;  // covariant
    }
    return true;
  }

 private:
  SubtypeCache& cache_;
  std::vector<std::pair<const StructNode*, const StructNode*>> assumptions_;
};

}  // namespace

const StructType& SubtypeCache::unfold(const StructType& t) {
  auto it = unfolds_.find(t.node());
  if (it != unfolds_.end()) return it->second;
  return unfolds_.emplace(t.node(), unfoldOnce(t)).first->second;
}

bool structSubtype(const StructType& s, const StructType& t) {
  SubtypeCache cache;
  return SubtypeQuery(cache).run(s, t);
}

bool structSubtype(const StructType& s, const StructType& t, SubtypeCache& cache) {
  return SubtypeQuery(cache).run(s, t);
}

bool typeEquivalent(const StructType& s, const StructType& t) {
  return structSubtype(s, t) && structSubtype(t, s);
}

namespace {

std::string binderName(int level) {
  static const char* names[] = {"X", "Y", "Z", "W"};
  if (level < 4) return names[level];
  return "V" + std::to_string(level);
}

void print(const StructType& t, int depth, std::string& out) {
  switch (t.kind()) {
    case StructType::Kind::Var:
      out += binderName(depth - 1 - t.varIndex());
      return;
    case StructType::Kind::Mu:
      out += "μ" + binderName(depth) + ".";
      print(t.muBody(), depth + 1, out);
      return;
    case StructType::Kind::Record: {
      out += '{';
      bool first = true;
      for (const auto& [label, ft] : t.fields()) {
        if (!first) out += ", ";
        first = false;
        out += label + ": ";
        print(ft, depth, out);
      }
      if (!t.fields().empty() && !t.methods().empty()) out += "; ";
      first = true;
      for (const auto& [label, m] : t.methods()) {
        if (!first) out += ", ";
        first = false;
        out += label + "(";
        for (size_t i = 0; i < m.params.size(); ++i) {
          if (i) out += ", ";
          print(m.params[i], depth, out);
        }
        out += "): ";
        print(m.ret, depth, out);
      }
      out += '}';
      return;
    }
  }
}

}  // namespace

std::string toString(const StructType& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

namespace {

StructType normalize(StructType t) {
  while (t.kind() == StructType::Kind::Mu) t = unfoldOnce(t);
  return t;
}

}  // namespace

StructType structTypeExpr(const ClassTable& table, const StructuralTypeEnv& env, const Expr& e) {
  return std::visit(
      [&](const auto& node) -> StructType {
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
          StructType rt = normalize(structTypeExpr(table, env, *node.object));
          const StructType* f = rt.findField(node.label);
          if (f == nullptr) {
            throw DiagnosticError({codes::StructUnknownMember,
                                   "receiver type " + toString(rt) + " has no field '" + node.label +
                                       "'",
                                   e.line, e.col});
          }
          return *f;
        } else if constexpr (std::is_same_v<T, InvokeExpr>) {
          StructType rt = normalize(structTypeExpr(table, env, *node.receiver));
          const StructMethodType* m = rt.findMethod(node.method);
          if (m == nullptr) {
            throw DiagnosticError({codes::StructUnknownMember,
                                   "receiver type " + toString(rt) + " has no method '" +
                                       node.method + "'",
                                   e.line, e.col});
          }
          if (m->params.size() != node.args.size()) {
            throw DiagnosticError({codes::StructArityMismatch,
                                   "method " + node.method + " expects " +
                                       std::to_string(m->params.size()) + " argument(s), got " +
                                       std::to_string(node.args.size()),
                                   e.line, e.col});
          }
          for (size_t i = 0; i < node.args.size(); ++i) {
            StructType at = structTypeExpr(table, env, *node.args[i]);
            if (!structSubtype(at, m->params[i])) {
              throw DiagnosticError({codes::StructArgumentTypeMismatch,
                                     "argument " + std::to_string(i + 1) + " of " + node.method +
                                         " has type " + toString(at) + ", expected a subtype of " +
                                         toString(m->params[i]),
                                     node.args[i]->line, node.args[i]->col});
            }
          }
          return m->ret;
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          StructType ct = structuralTypeOf(table, node.className);
          StructType rec = normalize(ct);
          const ClassSignature& sig = table.signatureOf(node.className);
          if (sig.fields.size() != node.args.size()) {
            throw DiagnosticError({codes::StructArityMismatch,
                                   "new " + node.className + " expects " +
                                       std::to_string(sig.fields.size()) + " argument(s), got " +
                                       std::to_string(node.args.size()),
                                   e.line, e.col});
          }
          for (size_t i = 0; i < node.args.size(); ++i) {
            StructType at = structTypeExpr(table, env, *node.args[i]);
            const StructType* want = rec.findField(sig.fields[i].first);
            if (want != nullptr && !structSubtype(at, *want)) {
              throw DiagnosticError({codes::StructArgumentTypeMismatch,
                                     "argument " + std::to_string(i + 1) + " of new " +
                                         node.className + " has type " + toString(at) +
                                         ", expected a subtype of " + toString(*want),
                                     node.args[i]->line, node.args[i]->col});
            }
          }
          return ct;
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          throw DiagnosticError({codes::RuntimeTypeTestUnavailable,
                                 "cast requires nominal runtime information, unavailable under "
                                 "structural typing",
                                 e.line, e.col});
        } else {
          static_assert(std::is_same_v<T, InstanceOfExpr>);
          throw DiagnosticError({codes::RuntimeTypeTestUnavailable,
                                 "instanceof requires nominal runtime information, unavailable "
                                 "under structural typing",
                                 e.line, e.col});
        }
      },
      e.node);
}

std::vector<Diagnostic> checkStructural(const ClassTable& table) {
  std::vector<Diagnostic> diags;
  for (const auto& c : table.program().classes) {
    StructType selfType = structuralTypeOf(table, c.name);
    StructType rec = normalize(selfType);
    for (const auto& m : c.methods) {
      const StructMethodType* mt = rec.findMethod(m.name);
      StructuralTypeEnv env;
      env.thisType = selfType;
      for (size_t i = 0; i < m.params.size(); ++i) env.vars[m.params[i].name] = mt->params[i];
      try {
        StructType bodyType = structTypeExpr(table, env, *m.body);
        if (!structSubtype(bodyType, mt->ret)) {
          diags.push_back({codes::StructArgumentTypeMismatch,
                           "body of " + c.name + "." + m.name + " has type " + toString(bodyType) +
                               ", expected a subtype of " + toString(mt->ret),
                           m.line, m.col});
        }
      } catch (const DiagnosticError& err) {
        diags.push_back(err.diagnostic());
      }
    }
  }
  if (table.program().main) {
    try {
      structTypeExpr(table, StructuralTypeEnv{}, *table.program().main);
    } catch (const DiagnosticError& err) {
      diags.push_back(err.diagnostic());
    }
  }
  return diags;
}

}  // namespace nooplab
