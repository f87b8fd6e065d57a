#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nooplab/auditor.hpp"
#include "nooplab/class_table.hpp"
#include "nooplab/corpus.hpp"
#include "nooplab/diagnostics.hpp"
#include "nooplab/evaluator.hpp"
#include "nooplab/nominal.hpp"
#include "nooplab/parser.hpp"
#include "nooplab/structural.hpp"

namespace {

using namespace nooplab;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitDiagnostics = 2;
constexpr int kExitInternal = 3;

std::string readInput(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DiagnosticError({codes::SyntaxError, "cannot open file '" + path + "'", 0, 0});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ClassTable loadTable(const std::string& path) {
  return ClassTable::build(parseProgram(readInput(path)));
}

void printDiagnostics(const std::string& path, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << path << ":" << d.str() << "\n";
  }
}

bool useColor() {
  if (const char* env = std::getenv("NOOPLAB_COLOR")) {
    return std::string(env) == "1";
  }
  return isatty(fileno(stdout));
}

int cmdCheck(const std::string& path, const std::string& mode) {
  ClassTable table = loadTable(path);
  std::vector<Diagnostic> diags =
      mode == "structural" ? checkStructural(table) : checkNominal(table);
  if (!diags.empty()) {
    printDiagnostics(path, diags);
    return kExitDiagnostics;
  }
  std::cout << "OK\n";
  return kExitOk;
}

int cmdSubtype(const std::string& path, const std::string& mode, const std::string& a,
               const std::string& b) {
  ClassTable table = loadTable(path);
  for (const auto& name : {a, b}) {
    if (!table.isClassName(name)) {
      throw DiagnosticError({codes::UnknownName, "unknown class '" + name + "'", 0, 0});
    }
  }
  bool verdict;
  if (mode == "structural") {
    StructType ta = structuralTypeOf(table, a);
    StructType tb = structuralTypeOf(table, b);
    std::cout << a << " = " << toString(ta) << "\n";
    std::cout << b << " = " << toString(tb) << "\n";
    verdict = structSubtype(ta, tb);
  } else {
    verdict = nominalSubtype(table, a, b);
  }
  std::cout << a << " <: " << b << " : " << (verdict ? "true" : "false") << "\n";
  return verdict ? kExitOk : kExitNegative;
}

int cmdAudit(const std::string& path, const std::string& format) {
  ClassTable table = loadTable(path);
  std::vector<Diagnostic> diags = checkNominal(table);
  if (!diags.empty()) {
    printDiagnostics(path, diags);
    return kExitDiagnostics;
  }
  AuditReport report = auditProgram(table);
  if (format == "json") {
    std::cout << renderReport(report, ReportFormat::Json);
  } else {
    std::cout << renderReport(report, ReportFormat::Text, useColor());
  }
  return kExitOk;
}

int cmdRun(const std::string& path, bool eraseOutput, long steps) {
  ClassTable table = loadTable(path);
  std::vector<Diagnostic> diags = checkNominal(table);
  if (!diags.empty()) {
    printDiagnostics(path, diags);
    return kExitDiagnostics;
  }
  if (!table.program().main) {
    std::cerr << path << ":error[" << codes::SyntaxError << "]: program has no main expression\n";
    return kExitDiagnostics;
  }
  EvalOptions options;
  options.stepBudget = steps;
  EvalOutcome outcome = evalProgram(table, options);
  std::cout << printOutcome(outcome, eraseOutput) << "\n";
  if (std::holds_alternative<EvalSuccess>(outcome)) return kExitOk;
  if (std::holds_alternative<EvalFault>(outcome)) return kExitInternal;
  return kExitNegative;
}

int cmdDumpSignatures(const std::string& path) {
  ClassTable table = loadTable(path);
  std::cout << dumpSignaturesJson(table);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nooplab: one class-based toy language, two type disciplines"};
  app.require_subcommand(1);

  std::string path;
  std::string mode = "nominal";
  std::string format = "text";
  std::string subA, subB, corpusAction, corpusName;
  bool eraseOutput = false;
  long steps = 1'000'000;

  auto* check = app.add_subcommand("check", "Type-check a program under one discipline");
  check->add_option("--mode", mode, "nominal or structural")
      ->required()
      ->check(CLI::IsMember({"nominal", "structural"}));
  check->add_option("file", path, "program file, or - for stdin")->required();

  auto* subtype = app.add_subcommand("subtype", "Decide a subtype query between two classes");
  subtype->add_option("--mode", mode, "nominal or structural")
      ->required()
      ->check(CLI::IsMember({"nominal", "structural"}));
  subtype->add_option("file", path)->required();
  subtype->add_option("sub", subA, "candidate subtype")->required();
  subtype->add_option("sup", subB, "candidate supertype")->required();

  auto* audit = app.add_subcommand("audit", "Compare both disciplines over a whole program");
  audit->add_option("file", path)->required();
  audit->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  audit->add_option("--mode", mode)->group("");  // accepted and ignored: audit runs both

  auto* run = app.add_subcommand("run", "Evaluate the main expression");
  run->add_option("file", path)->required();
  run->add_flag("--erase", eraseOutput, "print the result through the erased record view");
  run->add_option("--steps", steps, "method-invocation budget before Timeout");

  auto* dump = app.add_subcommand("dump-signatures", "Emit class signature closures as JSON");
  dump->add_option("file", path)->required();

  auto* corpus = app.add_subcommand("corpus", "List or show the built-in exemplar programs");
  corpus->add_option("action", corpusAction, "list or show")
      ->required()
      ->check(CLI::IsMember({"list", "show"}));
  corpus->add_option("name", corpusName);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitDiagnostics;
  }

  try {
    if (check->parsed()) return cmdCheck(path, mode);
    if (subtype->parsed()) return cmdSubtype(path, mode, subA, subB);
    if (audit->parsed()) return cmdAudit(path, format);
    if (run->parsed()) return cmdRun(path, eraseOutput, steps);
    if (dump->parsed()) return cmdDumpSignatures(path);
    if (corpus->parsed()) {
      if (corpusAction == "list") {
        for (const auto& name : corpusNames()) std::cout << name << "\n";
        return kExitOk;
      }
      if (corpusName.empty()) {
        std::cerr << "usage: nooplab corpus show NAME\n";
        return kExitDiagnostics;
      }
      std::cout << corpusSource(corpusName);
      return kExitOk;
    }
  } catch (const DiagnosticError& e) {
    std::cerr << path << ":" << e.diagnostic().str() << "\n";
    return kExitDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
