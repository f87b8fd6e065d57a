#include "nooplab/class_table.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "nooplab/diagnostics.hpp"

namespace nooplab {

namespace {

std::vector<std::pair<MemberLabel, FieldSig>> sortedByLabel(
    std::vector<std::pair<MemberLabel, FieldSig>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::vector<std::pair<MemberLabel, MethodSig>> sortedByLabel(
    std::vector<std::pair<MemberLabel, MethodSig>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

}  // namespace

std::map<ClassName, ClassName> classGraph(const Program& p) {
  std::map<ClassName, ClassName> parents;
  for (const auto& c : p.classes) parents[c.name] = c.superName;
  for (const auto& c : p.classes) {
    std::vector<ClassName> path;
    ClassName cur = c.name;
    while (!isBuiltinClass(cur)) {
      auto seen = std::find(path.begin(), path.end(), cur);
      if (seen != path.end()) {
        std::string names;
        for (auto it = seen; it != path.end(); ++it) names += (names.empty() ? "" : ", ") + *it;
        throw DiagnosticError({codes::InheritanceCycle, "inheritance cycle: " + names,
                               c.line, c.col});
      }
      path.push_back(cur);
      cur = parents.at(cur);
    }
  }
  return parents;
}

bool signatureEquals(const SignatureClosure& a, const SignatureClosure& b) {
  if (a.root != b.root) return false;
  if (a.table.size() != b.table.size()) return false;
  for (auto ia = a.table.begin(), ib = b.table.begin(); ia != a.table.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    const ClassSignature& sa = ia->second;
    const ClassSignature& sb = ib->second;
    if (sa.name != sb.name || sa.superNames != sb.superNames) return false;
    auto fa = sortedByLabel(sa.fields);
    auto fb = sortedByLabel(sb.fields);
    if (fa.size() != fb.size()) return false;
    for (size_t i = 0; i < fa.size(); ++i) {
      if (fa[i].first != fb[i].first || fa[i].second.type != fb[i].second.type) return false;
    }
    auto ma = sortedByLabel(sa.methods);
    auto mb = sortedByLabel(sb.methods);
    if (ma.size() != mb.size()) return false;
    for (size_t i = 0; i < ma.size(); ++i) {
      if (ma[i].first != mb[i].first || !ma[i].second.sameShape(mb[i].second)) return false;
    }
  }
  return true;
}

ClassTable ClassTable::build(Program p) {
  ClassTable t;
  t.program_ = std::make_shared<const Program>(std::move(p));
  const Program& prog = *t.program_;

  t.parents_ = classGraph(prog);
  t.parents_[kTrueClass] = kObjectClass;
  t.parents_[kFalseClass] = kObjectClass;

  for (const auto& c : prog.classes) t.declaredNames_.push_back(c.name);
  t.auditNames_ = t.declaredNames_;
  t.auditNames_.push_back(kObjectClass);
  std::sort(t.auditNames_.begin(), t.auditNames_.end());

  // Flatten signatures parent-first; inherited entries are copied verbatim,
  // overrides replace in place with the overriding class as declarer.
  t.signatures_[kObjectClass] = ClassSignature{kObjectClass, {}, {}, {}};
  t.signatures_[kTrueClass] = ClassSignature{kTrueClass, {kObjectClass}, {}, {}};
  t.signatures_[kFalseClass] = ClassSignature{kFalseClass, {kObjectClass}, {}, {}};

  auto flatten = [&](auto&& self, const ClassName& name) -> const ClassSignature& {
    auto it = t.signatures_.find(name);
    if (it != t.signatures_.end()) return it->second;
    const ClassDecl* decl = prog.findClass(name);
    const ClassSignature& parent = self(self, decl->superName);
    ClassSignature sig;
    sig.name = name;
    sig.superNames = {decl->superName};
    sig.fields = parent.fields;
    sig.methods = parent.methods;
    for (const auto& f : decl->fields) {
      if (sig.findField(f.name) != nullptr) {
        throw DiagnosticError({codes::FieldShadowing,
                               "class " + name + " redeclares inherited field '" + f.name + "'",
                               f.line, f.col});
      }
      sig.fields.emplace_back(f.name, FieldSig{f.type, name});
    }
    for (const auto& m : decl->methods) {
      std::vector<ClassName> params;
      for (const auto& prm : m.params) params.push_back(prm.type);
      MethodSig msig{std::move(params), m.returnType, name, &m};
      bool replaced = false;
      for (auto& [label, existing] : sig.methods) {
        if (label == m.name) {
          t.overrideSites_.push_back({name, label, existing, msig});
          existing = std::move(msig);
          replaced = true;
          break;
        }
      }
      if (!replaced) sig.methods.emplace_back(m.name, std::move(msig));
    }
    return t.signatures_.emplace(name, std::move(sig)).first->second;
  };
  for (const auto& c : prog.classes) flatten(flatten, c.name);

  // Closures: all names reachable through member signatures and parents.
  for (const auto& [name, sig] : t.signatures_) {
    auto closure = std::make_shared<SignatureClosure>();
    closure->root = name;
    std::vector<ClassName> work{name};
    while (!work.empty()) {
      ClassName cur = work.back();
      work.pop_back();
      if (closure->table.count(cur)) continue;
      const ClassSignature& csig = t.signatures_.at(cur);
      closure->table[cur] = csig;
      for (const auto& s : csig.superNames) work.push_back(s);
      for (const auto& [label, f] : csig.fields) work.push_back(f.type);
      for (const auto& [label, m] : csig.methods) {
        work.push_back(m.ret);
        for (const auto& prm : m.params) work.push_back(prm);
      }
    }
    t.closures_[name] = std::move(closure);
  }

  for (const auto& [name, sig] : t.signatures_) {
    std::set<ClassName> up;
    ClassName cur = name;
    for (;;) {
      up.insert(cur);
      if (cur == kObjectClass) break;
      cur = t.parents_.at(cur);
    }
    t.ancestorSets_[name] = std::move(up);
  }
  return t;
}

const std::set<ClassName>& ClassTable::ancestorsOf(const ClassName& name) const {
  return ancestorSets_.at(name);
}

bool ClassTable::isClassName(const ClassName& name) const {
  return signatures_.count(name) > 0;
}

const ClassName& ClassTable::parentOf(const ClassName& name) const {
  static const ClassName empty;
  if (name == kObjectClass) return empty;
  return parents_.at(name);
}

const ClassSignature& ClassTable::signatureOf(const ClassName& name) const {
  return signatures_.at(name);
}

std::shared_ptr<const SignatureClosure> ClassTable::closureOf(const ClassName& name) const {
  return closures_.at(name);
}

bool ClassTable::inherits(const ClassName& sub, const ClassName& sup) const {
  return chainDistance(sub, sup) >= 0;
}

int ClassTable::chainDistance(const ClassName& sub, const ClassName& sup) const {
  ClassName cur = sub;
  int steps = 0;
  for (;;) {
    if (cur == sup) return steps;
    if (cur == kObjectClass) return -1;
    cur = parents_.at(cur);
    ++steps;
  }
}

std::string dumpSignaturesJson(const ClassTable& table) {
  using nlohmann::json;
  std::vector<ClassName> names = table.auditNames();

  json classes = json::array();
  for (const auto& name : names) {
    const ClassSignature& sig = table.signatureOf(name);
    json entry;
    entry["name"] = name;
    entry["super"] = sig.superNames.empty() ? json(nullptr) : json(sig.superNames.front());
    json fields = json::array();
    for (const auto& [label, f] : sortedByLabel(sig.fields)) {
      fields.push_back({{"label", label}, {"type", f.type}, {"declaredIn", f.declaredIn}});
    }
    entry["fields"] = fields;
    json methods = json::array();
    for (const auto& [label, m] : sortedByLabel(sig.methods)) {
      methods.push_back({{"label", label},
                         {"params", m.params},
                         {"ret", m.ret},
                         {"declaredIn", m.declaredIn}});
    }
    entry["methods"] = methods;
    json closure = json::array();
    for (const auto& [cname, csig] : table.closureOf(name)->table) closure.push_back(cname);
    entry["closure"] = closure;
    classes.push_back(entry);
  }
  json root;
  root["classes"] = classes;
  return root.dump(2) + "\n";
}

}  // namespace nooplab
