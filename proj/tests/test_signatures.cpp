#include <doctest.h>

#include <functional>
#include <random>

#include "nooplab/class_table.hpp"
#include "nooplab/corpus.hpp"
#include "nooplab/parser.hpp"
#include "support/generators.hpp"

using namespace nooplab;

namespace {

ClassTable load(const std::string& source) {
  return ClassTable::build(parseProgram(source));
}

std::vector<ClassName> closureNames(const ClassTable& table, const ClassName& c) {
  std::vector<ClassName> names;
  for (const auto& [name, sig] : table.closureOf(c)->table) names.push_back(name);
  return names;
}

}  // namespace

TEST_SUITE("signatures") {

TEST_CASE("Object has the empty signature") {
  ClassTable table = load("class A { }");
  const ClassSignature& sig = table.signatureOf("Object");
  CHECK(sig.fields.empty());
  CHECK(sig.methods.empty());
  CHECK(sig.superNames.empty());
}

TEST_CASE("inherited member signatures are copied verbatim") {
  ClassTable table = load(
      "class P { P eq(P p) { return p; } }"
      "class CP extends P { CP c; }");
  const ClassSignature& cp = table.signatureOf("CP");
  const MethodSig* eq = cp.findMethod("eq");
  REQUIRE(eq != nullptr);
  CHECK(eq->params == std::vector<ClassName>{"P"});  // parameter type unchanged
  CHECK(eq->ret == "P");
  CHECK(eq->declaredIn == "P");
  const FieldSig* c = cp.findField("c");
  REQUIRE(c != nullptr);
  CHECK(c->type == "CP");
}

TEST_CASE("three-level chain flattens against the hand-built map") {
  ClassTable table = load(
      "class A { A id(A x) { return x; } }"
      "class B extends A { }"
      "class C extends B { }");
  const MethodSig* id = table.signatureOf("C").findMethod("id");
  REQUIRE(id != nullptr);
  CHECK(id->params == std::vector<ClassName>{"A"});
  CHECK(id->ret == "A");
  CHECK(id->declaredIn == "A");
  // identical signature at every level, symbol for symbol
  CHECK(table.signatureOf("B").findMethod("id")->sameShape(*id));
  CHECK(table.signatureOf("A").findMethod("id")->sameShape(*id));
}

TEST_CASE("ancestor members come first in flattening order") {
  ClassTable table = load(
      "class A { Object a; }"
      "class B extends A { Object b; }");
  const ClassSignature& b = table.signatureOf("B");
  REQUIRE(b.fields.size() == 2);
  CHECK(b.fields[0].first == "a");
  CHECK(b.fields[1].first == "b");
}

TEST_CASE("field shadowing is rejected") {
  try {
    load("class A { Object f; } class B extends A { Object f; }");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.diagnostic().code == codes::FieldShadowing);
  }
}

TEST_CASE("closures close over reachable names") {
  ClassTable table = load("class P { P eq(P p) { return p; } }");
  CHECK(closureNames(table, "Object") == std::vector<ClassName>{"Object"});
  CHECK(closureNames(table, "P") == std::vector<ClassName>{"Object", "P"});

  ClassTable mutual = load("class A { B f; } class B { A g; }");
  CHECK(closureNames(mutual, "A") == std::vector<ClassName>{"A", "B", "Object"});
  CHECK(closureNames(mutual, "B") == std::vector<ClassName>{"A", "B", "Object"});
}

TEST_CASE("closure tables are closed under reference") {
  std::mt19937 rng(42);
  for (int i = 0; i < 60; ++i) {
    auto gen = testsupport::randomHierarchy(rng);
    ClassTable table = load(gen.source);
    for (const auto& c : gen.classes) {
      auto closure = table.closureOf(c.name);
      for (const auto& [name, sig] : closure->table) {
        for (const auto& s : sig.superNames) CHECK(closure->table.count(s) == 1);
        for (const auto& [label, f] : sig.fields) CHECK(closure->table.count(f.type) == 1);
        for (const auto& [label, m] : sig.methods) {
          CHECK(closure->table.count(m.ret) == 1);
          for (const auto& p : m.params) CHECK(closure->table.count(p) == 1);
        }
      }
    }
  }
}

TEST_CASE("closure construction is a fixed point") {
  // rebuilding from the same program yields identical closures
  const std::string& src = corpusSource("mutual");
  ClassTable one = load(src);
  ClassTable two = load(src);
  for (const auto& name : one.declaredNames()) {
    CHECK(signatureEquals(*one.closureOf(name), *two.closureOf(name)));
  }
}

TEST_CASE("flattening is monotone along the hierarchy") {
  std::mt19937 rng(43);
  for (int i = 0; i < 60; ++i) {
    auto gen = testsupport::randomHierarchy(rng);
    ClassTable table = load(gen.source);
    for (const auto& c : gen.classes) {
      if (c.parent == "Object") continue;
      const ClassSignature& child = table.signatureOf(c.name);
      const ClassSignature& parent = table.signatureOf(c.parent);
      for (const auto& [label, f] : parent.fields) {
        const FieldSig* inChild = child.findField(label);
        REQUIRE(inChild != nullptr);
        CHECK(inChild->type == f.type);
      }
      for (const auto& [label, m] : parent.methods) {
        CHECK(child.findMethod(label) != nullptr);
      }
    }
  }
}

TEST_CASE("signatureEquals is declaration-determined, not source-position-determined") {
  ClassTable one = load("class P { P eq(P p) { return p; } } class Z { }");
  ClassTable two = load("class Z { } // moved\nclass P { P eq(P p) { return p; } }");
  CHECK(signatureEquals(*one.closureOf("P"), *two.closureOf("P")));
  CHECK(signatureEquals(*one.closureOf("P"), *one.closureOf("P")));
  CHECK_FALSE(signatureEquals(*one.closureOf("P"), *one.closureOf("Object")));
  ClassTable three = load("class P { P eq(P p, P q) { return p; } } class Z { }");
  CHECK_FALSE(signatureEquals(*one.closureOf("P"), *three.closureOf("P")));
}

TEST_CASE("signature dump is deterministic and sorted") {
  const std::string& src = corpusSource("point-binary");
  std::string a = dumpSignaturesJson(load(src));
  std::string b = dumpSignaturesJson(load(src));
  CHECK(a == b);
  CHECK(a.find("\"name\": \"ColorPoint\"") != std::string::npos);
  CHECK(a.find("\"name\": \"ColorPoint\"") < a.find("\"name\": \"Object\""));
  CHECK(a.find("\"name\": \"Object\"") < a.find("\"name\": \"Point\""));
}

}  // TEST_SUITE
