#include "nooplab/corpus.hpp"

#include <map>

#include "nooplab/diagnostics.hpp"

namespace nooplab {

namespace {

const std::map<std::string, std::string>& corpusTable() {
  static const std::map<std::string, std::string> table = {
      {"point-binary",
       R"(//@ A planar point; eq is the classic binary-style method.
class Point {
  Object x;
  Object y;
  Point eq(Point p) { return p; }
}
class ColorPoint extends Point {
  Object color;
}
new ColorPoint(new Object(), new Object(), new Object()).eq(new Point(new Object(), new Object()))
)"},
      {"point-binary-narrowed",
       R"(class Point {
  Object x;
  Object y;
  Point eq(Point p) { return p; }
}
class ColorPoint extends Point {
  Object color;
  ColorPoint eq(ColorPoint p) { return p; }
}
)"},
      {"point-binary-widened",
       R"(class Point {
  Object x;
  Object y;
  Point eq(Point p) { return p; }
}
class ColorPoint extends Point {
  Object color;
  Point eq(Object p) { return this; }
}
)"},
      {"twins",
       R"(class A {
  A next;
  A step(A a) { return a; }
}
class B {
  B next;
  B step(B b) { return b; }
}
)"},
      {"spurious",
       R"(class Q {
  Q eq(Q q) { return q; }
}
class P {
  P eq(Q q) { return this; }
}
new P().eq(new Q())
)"},
      {"chain3",
       R"(class P {
  P eq(P p) { return p; }
}
class CP extends P {
  Object c;
}
class CCP extends CP {
  Object d;
}
new CCP(new Object(), new Object()).eq(new P())
)"},
      {"mutual",
       R"(class Ping {
  Pong other;
  Pong swap(Ping x) { return x.other; }
}
class Pong {
  Ping other;
  Ping swap(Pong x) { return x.other; }
}
)"},
      {"downcast",
       R"(class Point {
  Object x;
  Object y;
}
class ColorPoint extends Point {
  Object color;
}
(ColorPoint) new Point(new Object(), new Object())
)"},
      {"loop",
       R"(class Loop {
  Loop go() { return this.go(); }
}
new Loop().go()
)"},
  };
  return table;
}

}  // namespace

std::vector<std::string> corpusNames() {
  std::vector<std::string> names;
  for (const auto& [name, src] : corpusTable()) names.push_back(name);
  return names;
}

const std::string& corpusSource(const std::string& name) {
  const auto& table = corpusTable();
  auto it = table.find(name);
  if (it == table.end()) {
    throw DiagnosticError({codes::UnknownName, "unknown corpus program '" + name + "'", 0, 0});
  }
  return it->second;
}

}  // namespace nooplab
