#include <doctest.h>

#include <functional>
#include <random>

#include "nooplab/class_table.hpp"
#include "nooplab/diagnostics.hpp"
#include "nooplab/parser.hpp"
#include "support/generators.hpp"

using namespace nooplab;

namespace {

std::string code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DiagnosticError& e) {
    return e.diagnostic().code;
  }
  return "";
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("minimal declaration") {
  Program p = parseProgram("class A extends Object { }");
  REQUIRE(p.classes.size() == 1);
  CHECK(p.classes[0].name == "A");
  CHECK(p.classes[0].superName == "Object");
  CHECK(p.classes[0].fields.empty());
  CHECK(p.classes[0].methods.empty());
  CHECK(p.main == nullptr);
}

TEST_CASE("self-referential method signature is accepted") {
  Program p = parseProgram("class P { P eq(P p){ return p; } }");
  REQUIRE(p.classes.size() == 1);
  const MethodDecl* eq = p.classes[0].findMethod("eq");
  REQUIRE(eq != nullptr);
  CHECK(eq->returnType == "P");
  REQUIRE(eq->params.size() == 1);
  CHECK(eq->params[0].type == "P");
}

TEST_CASE("field and method may share a label") {
  Program p = parseProgram("class A { A f; A f(){ return this.f; } }");
  REQUIRE(p.classes.size() == 1);
  CHECK(p.classes[0].fields.size() == 1);
  CHECK(p.classes[0].methods.size() == 1);
  CHECK(p.classes[0].fields[0].name == "f");
  CHECK(p.classes[0].methods[0].name == "f");
}

TEST_CASE("implicit extends Object") {
  Program p = parseProgram("class A { }");
  CHECK(p.classes[0].superName == "Object");
}

TEST_CASE("cast vs parenthesized expression") {
  Program p = parseProgram("class C { } (C) new C()");
  REQUIRE(p.main != nullptr);
  CHECK(std::holds_alternative<CastExpr>(p.main->node));

  Program q = parseProgram("class C { C id(C x) { return (x); } }");
  CHECK(std::holds_alternative<VarExpr>(q.classes[0].methods[0].body->node));

  // postfix after a parenthesized expression stays a field access
  Program r = parseProgram("class C { C f; C id(C x) { return (x).f; } }");
  CHECK(std::holds_alternative<FieldGetExpr>(r.classes[0].methods[0].body->node));
}

TEST_CASE("cast swallows the postfix chain") {
  Program p = parseProgram("class C { C f; } (C) new C(new C(new Object().f)).f");
  // parses as (C)(new C(...).f), not ((C) new C(...)).f
  REQUIRE(std::holds_alternative<CastExpr>(p.main->node));
  const auto& cast = std::get<CastExpr>(p.main->node);
  CHECK(std::holds_alternative<FieldGetExpr>(cast.operand->node));
}

TEST_CASE("instanceof chains") {
  Program p = parseProgram("new Object() instanceof Object instanceof Object");
  REQUIRE(std::holds_alternative<InstanceOfExpr>(p.main->node));
  const auto& outer = std::get<InstanceOfExpr>(p.main->node);
  CHECK(std::holds_alternative<InstanceOfExpr>(outer.operand->node));
}

TEST_CASE("contract comments attach to the class") {
  Program p = parseProgram("//@ invariant: nonempty\n//@ eq is reflexive\nclass P { }");
  CHECK(p.classes[0].contractDoc == "invariant: nonempty\neq is reflexive");
  // plain comments are discarded
  Program q = parseProgram("// nothing\nclass P { }");
  CHECK(q.classes[0].contractDoc.empty());
}

TEST_CASE("rejections map to one error case each") {
  CHECK(code([] { parseProgram("class A { } class A { }"); }) == codes::DuplicateClass);
  CHECK(code([] { parseProgram("class Object { }"); }) == codes::DuplicateClass);
  CHECK(code([] { parseProgram("class True { }"); }) == codes::DuplicateClass);
  CHECK(code([] { parseProgram("class A { B f; B f; }"); }) == codes::UnknownName);
  CHECK(code([] { parseProgram("class A { A f; A f; }"); }) == codes::DuplicateMember);
  CHECK(code([] { parseProgram("class A { A m(){ return this; } A m(){ return this; } }"); }) ==
        codes::DuplicateMember);
  CHECK(code([] { parseProgram("class A extends B { }"); }) == codes::UnknownName);
  CHECK(code([] { parseProgram("class A { A m(A x, A x){ return this; } }"); }) ==
        codes::DuplicateParam);
  CHECK(code([] { parseProgram("x"); }) == codes::UnknownName);
  CHECK(code([] { parseProgram("this"); }) == codes::UnknownName);
  CHECK(code([] { parseProgram("class A {"); }) == codes::SyntaxError);
  CHECK(code([] { parseProgram("class A { A m(){ return y; } }"); }) == codes::UnknownName);
}

TEST_CASE("syntax errors carry position") {
  try {
    parseProgram("class A {\n  A f\n}");
    FAIL("expected a diagnostic");
  } catch (const DiagnosticError& e) {
    CHECK(e.diagnostic().code == codes::SyntaxError);
    CHECK(e.diagnostic().line == 3);
  }
}

TEST_CASE("classGraph basics") {
  CHECK(classGraph(parseProgram("class A { }")) ==
        std::map<ClassName, ClassName>{{"A", "Object"}});
  CHECK(code([] {
          ClassTable::build(parseProgram("class A extends B { } class B extends A { }"));
        }) == codes::InheritanceCycle);
}

TEST_CASE("classGraph three-class chain against hand-built closure") {
  Program p = parseProgram("class A { } class B extends A { } class C extends B { }");
  auto parents = classGraph(p);
  std::map<ClassName, ClassName> expected{{"A", "Object"}, {"B", "A"}, {"C", "B"}};
  CHECK(parents == expected);

  // hand-built transitive closure of the chain
  ClassTable table = ClassTable::build(p);
  std::vector<std::pair<ClassName, ClassName>> reachable{
      {"C", "C"}, {"C", "B"}, {"C", "A"}, {"C", "Object"},
      {"B", "B"}, {"B", "A"}, {"B", "Object"},
      {"A", "A"}, {"A", "Object"},
  };
  for (const auto& [sub, sup] : reachable) CHECK(table.inherits(sub, sup));
  CHECK(table.chainDistance("C", "Object") == 3);
  CHECK_FALSE(table.inherits("A", "B"));
  CHECK_FALSE(table.inherits("Object", "A"));
}

TEST_CASE("classGraph is a tree rooted at Object") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 50; ++i) {
    auto gen = testsupport::randomHierarchy(rng);
    ClassTable table = ClassTable::build(parseProgram(gen.source));
    for (const auto& c : gen.classes) {
      CHECK(table.inherits(c.name, "Object"));
    }
  }
}

TEST_CASE("parse then prettyPrint round-trips") {
  const char* sources[] = {
      "class A { }",
      "//@ documented\nclass P { P eq(P p){ return p; } }\nnew P().eq(new P())",
      "class C { C f; } ((C) new C(new Object())).f",
      "class C { } (C) new C() instanceof C",
      "class D { D m(D a, D b) { return a.m(b, this); } }",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    std::string once = prettyPrint(parseProgram(src));
    std::string twice = prettyPrint(parseProgram(once));
    CHECK(once == twice);
  }

  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto gen = testsupport::randomHierarchy(rng);
    std::string once = prettyPrint(parseProgram(gen.source));
    std::string twice = prettyPrint(parseProgram(once));
    CHECK(once == twice);
  }
}

TEST_CASE("fuzzed inputs never crash") {
  std::mt19937 rng(0xF00D);
  const std::string alphabet = "class extends return new this instanceof(){};,.AZaz09_ \n\t\"//@";
  for (int i = 0; i < 2000; ++i) {
    std::uniform_int_distribution<size_t> len(0, 160);
    std::string input;
    size_t n = len(rng);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    for (size_t k = 0; k < n; ++k) input.push_back(alphabet[pick(rng)]);
    try {
      parseProgram(input);
    } catch (const DiagnosticError&) {
      // any rejection is fine; crashing is not
    }
  }
  // raw bytes, including invalid UTF-8
  for (int i = 0; i < 2000; ++i) {
    std::uniform_int_distribution<size_t> len(0, 80);
    std::uniform_int_distribution<int> byte(0, 255);
    std::string input;
    size_t n = len(rng);
    for (size_t k = 0; k < n; ++k) input.push_back(static_cast<char>(byte(rng)));
    try {
      parseProgram(input);
    } catch (const DiagnosticError&) {
    }
  }
  // pathological nesting must be rejected, not overflow the stack
  std::string deep(100000, '(');
  CHECK(code([&] { parseProgram(deep); }) == codes::SyntaxError);
}

}  // TEST_SUITE
