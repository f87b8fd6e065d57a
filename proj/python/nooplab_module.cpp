#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nooplab/auditor.hpp"
#include "nooplab/class_table.hpp"
#include "nooplab/corpus.hpp"
#include "nooplab/diagnostics.hpp"
#include "nooplab/evaluator.hpp"
#include "nooplab/nominal.hpp"
#include "nooplab/parser.hpp"
#include "nooplab/structural.hpp"

namespace py = pybind11;
using namespace nooplab;

namespace {

ClassTable load(const std::string& source) {
  return ClassTable::build(parseProgram(source));
}

py::dict diagToDict(const Diagnostic& d) {
  py::dict out;
  out["code"] = d.code;
  out["message"] = d.message;
  out["line"] = d.line;
  out["col"] = d.col;
  return out;
}

void requireClass(const ClassTable& table, const std::string& name) {
  if (!table.isClassName(name)) {
    throw DiagnosticError({codes::UnknownName, "unknown class '" + name + "'", 0, 0});
  }
}

}  // namespace

PYBIND11_MODULE(nooplab, m) {
  m.doc() = "One class-based toy language (MiniOO), two interchangeable type disciplines";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DiagnosticError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("pretty_print", [](const std::string& source) {
    return prettyPrint(parseProgram(source));
  }, py::arg("source"), "Parse a program and return its canonical source form");

  m.def("check", [](const std::string& source, const std::string& mode) {
    ClassTable table = load(source);
    auto diags = mode == "structural" ? checkStructural(table) : checkNominal(table);
    py::list out;
    for (const auto& d : diags) out.append(diagToDict(d));
    return out;
  }, py::arg("source"), py::arg("mode") = "nominal",
     "Type-check under one discipline; returns a list of diagnostics");

  m.def("nominal_subtype", [](const std::string& source, const std::string& a,
                              const std::string& b) {
    ClassTable table = load(source);
    requireClass(table, a);
    requireClass(table, b);
    return nominalSubtype(table, a, b);
  }, py::arg("source"), py::arg("sub"), py::arg("sup"));

  m.def("structural_subtype", [](const std::string& source, const std::string& a,
                                 const std::string& b) {
    ClassTable table = load(source);
    requireClass(table, a);
    requireClass(table, b);
    return structSubtype(structuralTypeOf(table, a), structuralTypeOf(table, b));
  }, py::arg("source"), py::arg("sub"), py::arg("sup"));

  m.def("structural_type", [](const std::string& source, const std::string& name) {
    ClassTable table = load(source);
    requireClass(table, name);
    return toString(structuralTypeOf(table, name));
  }, py::arg("source"), py::arg("cls"),
     "Canonical text form of the class's recursive record type");

  m.def("type_equivalent", [](const std::string& source, const std::string& a,
                              const std::string& b) {
    ClassTable table = load(source);
    requireClass(table, a);
    requireClass(table, b);
    return typeEquivalent(structuralTypeOf(table, a), structuralTypeOf(table, b));
  }, py::arg("source"), py::arg("a"), py::arg("b"));

  m.def("audit", [](const std::string& source, const std::string& format) {
    ClassTable table = load(source);
    auto diags = checkNominal(table);
    if (!diags.empty()) {
      throw DiagnosticError(diags.front());
    }
    return renderReport(auditProgram(table),
                        format == "json" ? ReportFormat::Json : ReportFormat::Text);
  }, py::arg("source"), py::arg("format") = "json");

  m.def("run", [](const std::string& source, bool erase, long steps) {
    ClassTable table = load(source);
    auto diags = checkNominal(table);
    if (!diags.empty()) {
      throw DiagnosticError(diags.front());
    }
    EvalOptions options;
    options.stepBudget = steps;
    return printOutcome(evalProgram(table, options), erase);
  }, py::arg("source"), py::arg("erase") = false, py::arg("steps") = 1'000'000L);

  m.def("dump_signatures", [](const std::string& source) {
    return dumpSignaturesJson(load(source));
  }, py::arg("source"));

  m.def("corpus_names", [] { return corpusNames(); });
  m.def("corpus_source", [](const std::string& name) { return corpusSource(name); },
        py::arg("name"));
}
