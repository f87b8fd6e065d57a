// Acceptance suite: executes every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nooplab/auditor.hpp"
#include "nooplab/corpus.hpp"
#include "nooplab/evaluator.hpp"
#include "nooplab/nominal.hpp"
#include "nooplab/oracle.hpp"
#include "nooplab/parser.hpp"
#include "nooplab/structural.hpp"
#include "../support/generators.hpp"

using namespace nooplab;
using nlohmann::json;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d/8] %s  %s (%s)\n", index, pass ? "PASS" : "FAIL", name, detail.c_str());
  if (!pass) ++failures;
}

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ClassTable load(const std::string& source) {
  return ClassTable::build(parseProgram(source));
}

std::vector<std::string> wellFormedCorpus() {
  std::vector<std::string> names;
  for (const auto& name : corpusNames()) {
    if (checkNominal(load(corpusSource(name))).empty()) names.push_back(name);
  }
  return names;
}

// Criterion 1: inheritance <=> subtyping over the corpus plus 500 random
// acyclic hierarchies (fixed seed, <= 8 classes, <= 4 members), 0 violations,
// under 10 seconds.
void criterion1() {
  auto start = std::chrono::steady_clock::now();
  long pairs = 0;
  long violations = 0;

  for (const auto& name : wellFormedCorpus()) {
    TheoremReport r = verifyInheritanceIsSubtyping(load(corpusSource(name)));
    pairs += static_cast<long>(r.pairs.size());
    if (!r.holds) ++violations;
  }

  std::mt19937 rng(0xC0FFEE);
  for (int i = 0; i < 500; ++i) {
    auto gen = testsupport::randomHierarchy(rng, 8, 4);
    ClassTable table = load(gen.source);
    TheoremReport r = verifyInheritanceIsSubtyping(table);
    pairs += static_cast<long>(r.pairs.size());
    for (const auto& p : r.pairs) {
      if (p.nominalSub != p.inheritsChain) ++violations;
      if (p.nominalSub != gen.chainContains(p.sub, p.sup)) ++violations;
    }
  }

  double t = seconds(start);
  std::ostringstream detail;
  detail << pairs << " ordered pairs, " << violations << " violations, " << t << "s";
  report(1, "theorem reproduction (nominal)", violations == 0 && t < 10.0, detail.str());
}

// Criterion 2: the divergence witnesses, present in audit output.
void criterion2() {
  bool pass = true;
  std::string detail;

  ClassTable pointBinary = load(corpusSource("point-binary"));
  pass &= pointBinary.inherits("ColorPoint", "Point");
  pass &= !structSubtype(structuralTypeOf(pointBinary, "ColorPoint"),
                         structuralTypeOf(pointBinary, "Point"));
  json pbAudit = json::parse(renderReport(auditProgram(pointBinary), ReportFormat::Json));
  bool pbWitness = false;
  for (const auto& w : pbAudit["summary"]["witnesses"]) {
    pbWitness |= w == json::array({"ColorPoint", "Point"});
  }
  pass &= pbWitness;

  ClassTable twins = load(corpusSource("twins"));
  pass &= structSubtype(structuralTypeOf(twins, "A"), structuralTypeOf(twins, "B"));
  pass &= structSubtype(structuralTypeOf(twins, "B"), structuralTypeOf(twins, "A"));
  pass &= !twins.inherits("A", "B") && !twins.inherits("B", "A");
  json twAudit = json::parse(renderReport(auditProgram(twins), ReportFormat::Json));
  bool abWitness = false;
  bool baWitness = false;
  for (const auto& w : twAudit["summary"]["witnesses"]) {
    abWitness |= w == json::array({"A", "B"});
    baWitness |= w == json::array({"B", "A"});
  }
  pass &= abWitness && baWitness;

  report(2, "divergence reproduction (structural)", pass,
         pass ? "point-binary and twins witnesses present in audit output"
              : "a witness is missing");
}

// Criterion 3: engine vs oracle on the exhaustive small-type universe.
void criterion3() {
  auto start = std::chrono::steady_clock::now();
  auto universe = testsupport::enumerateUniverse(2);
  size_t n = universe.size();
  SimulationOracle oracle(universe);

  std::atomic<long> mismatches{0};
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      SubtypeCache cache;  // one unfold memo per worker
      for (size_t i = w; i < n; i += workers) {
        for (size_t j = 0; j < n; ++j) {
          if (structSubtype(universe[i], universe[j], cache) != oracle.subtype(i, j)) {
            mismatches.fetch_add(1, std::memory_order_relaxed);
          }
        }
      }
    });
  }
  for (auto& t : threads) t.join();

  double t = seconds(start);
  long pairs = static_cast<long>(n) * static_cast<long>(n);
  std::ostringstream detail;
  detail << n << " types, " << pairs << " ordered pairs, " << oracle.stateCount() << " states, "
         << mismatches.load() << " mismatches, " << t << "s";
  report(3, "oracle equivalence", pairs >= 10'000 && mismatches.load() == 0 && t < 60.0,
         detail.str());
}

// Criterion 4: one-step unfolding never changes a verdict.
void criterion4() {
  std::mt19937 rng(0x5EED);
  testsupport::MuTypeGenerator gen(rng);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    StructType s = gen.muType();
    StructType t = gen.anyType();
    if (structSubtype(s, t) != structSubtype(unfoldOnce(s), t)) ++violations;
    if (structSubtype(t, s) != structSubtype(t, unfoldOnce(s))) ++violations;
    if (t.kind() == StructType::Kind::Mu) {
      if (structSubtype(s, t) != structSubtype(s, unfoldOnce(t))) ++violations;
      if (structSubtype(unfoldOnce(s), unfoldOnce(t)) != structSubtype(s, t)) ++violations;
    }
  }
  std::ostringstream detail;
  detail << "1000 mu-types, " << violations << " violations";
  report(4, "unfolding invariance", violations == 0, detail.str());
}

// Criterion 5: binary-method metrics on chain3 and spurious.
void criterion5() {
  bool pass = true;

  ClassTable chain = load(corpusSource("chain3"));
  auto atCP = classifyBinaryMethods(chain, "CP");
  auto atCCP = classifyBinaryMethods(chain, "CCP");
  pass &= atCP.size() == 1 && atCP[0].kind == BinaryMethodKind::ApproximatedBinary &&
          atCP[0].approximationDepth == 1;
  pass &= atCCP.size() == 1 && atCCP[0].kind == BinaryMethodKind::ApproximatedBinary &&
          atCCP[0].approximationDepth == 2;

  AuditReport spurious = auditProgram(load(corpusSource("spurious")));
  int spuriousCount = 0;
  for (const auto& f : spurious.findings) {
    if (f.kind == BinaryMethodKind::SpuriousBinary) ++spuriousCount;
  }
  pass &= spuriousCount == 1;

  std::ostringstream detail;
  detail << "chain3 depths 1 and 2, " << spuriousCount << " spurious finding(s)";
  report(5, "binary-method metrics", pass, detail.str());
}

// Criterion 6: the contravariance gate.
void criterion6() {
  auto narrowed = checkNominal(load(corpusSource("point-binary-narrowed")));
  bool rejected = false;
  for (const auto& d : narrowed) rejected |= d.code == codes::IllegalOverride;
  bool widenedAccepted = checkNominal(load(corpusSource("point-binary-widened"))).empty();
  report(6, "contravariance gate", rejected && widenedAccepted,
         std::string("narrowed: ") + (rejected ? "NOM004" : "accepted?!") +
             ", widened: " + (widenedAccepted ? "accepted" : "rejected?!"));
}

// Criterion 7: runtime nominal information and the erase projection.
void criterion7() {
  bool pass = true;

  ClassTable downcast = load(corpusSource("downcast"));
  pass &= checkNominal(downcast).empty();
  pass &= std::holds_alternative<EvalCastError>(evalProgram(downcast));

  auto structuralDiags = checkStructural(downcast);
  bool str004 = false;
  for (const auto& d : structuralDiags) str004 |= d.code == codes::RuntimeTypeTestUnavailable;
  pass &= str004;

  // exit codes through the command-line tool itself, when ctest tells us
  // where it lives
  bool cliChecked = false;
  const char* cli = std::getenv("NOOPLAB_CLI");
  if (cli != nullptr && cli[0] != '\0') {
    std::string file = "/tmp/nooplab-acceptance-downcast.moo";
    {
      std::FILE* f = std::fopen(file.c_str(), "w");
      if (f != nullptr) {
        std::string cliPath(cli);
        const std::string& src = corpusSource("downcast");
        std::fwrite(src.data(), 1, src.size(), f);
        std::fclose(f);

        std::string runCmd = cliPath + " run " + file +
                             " > /tmp/nooplab-accept-run.out 2>/dev/null";
        int runStatus = std::system(runCmd.c_str());
        bool runExit1 = WIFEXITED(runStatus) && WEXITSTATUS(runStatus) == 1;
        std::ifstream runOut("/tmp/nooplab-accept-run.out");
        std::string runLine;
        std::getline(runOut, runLine);
        bool castErrLine = runLine.rfind("CastError", 0) == 0;

        std::string checkCmd = cliPath + " check --mode structural " + file +
                               " > /dev/null 2> /tmp/nooplab-accept-check.err";
        int checkStatus = std::system(checkCmd.c_str());
        bool checkExit2 = WIFEXITED(checkStatus) && WEXITSTATUS(checkStatus) == 2;
        std::ifstream checkErr("/tmp/nooplab-accept-check.err");
        std::stringstream errBuf;
        errBuf << checkErr.rdbuf();
        bool str004InErr = errBuf.str().find("STR004") != std::string::npos;

        cliChecked = true;
        pass &= runExit1 && castErrLine && checkExit2 && str004InErr;
      }
    }
  }

  // erasure soundness: every cast-free runnable corpus program behaves
  // byte-identically with its signatures replaced by a poisoned sentinel
  int compared = 0;
  for (const auto& name : wellFormedCorpus()) {
    ClassTable table = load(corpusSource(name));
    if (!table.program().main) continue;
    AuditReport r = auditProgram(table);
    if (!r.skippedSites.empty()) continue;  // uses casts or instanceof
    EvalOptions poisoned;
    poisoned.poisonSignatures = true;
    std::string normal = printOutcome(evalProgram(table), /*erased=*/true);
    std::string blind = printOutcome(evalProgram(table, poisoned), /*erased=*/true);
    if (normal != blind) pass = false;
    ++compared;
  }
  pass &= compared >= 3;

  std::ostringstream detail;
  detail << "CastError raised, STR004 raised" << (cliChecked ? " (exit codes via CLI)" : "")
         << ", " << compared << " cast-free programs byte-identical under signature poisoning";
  report(7, "runtime nominal info and erasure", pass, detail.str());
}

// Criterion 8: preservation sweep over the corpus.
void criterion8() {
  int violations = 0;
  int swept = 0;
  for (const auto& name : wellFormedCorpus()) {
    ClassTable table = load(corpusSource(name));
    if (!table.program().main) continue;
    ClassName staticType = typeExpr(table, NominalTypeEnv{}, *table.program().main);
    EvalOutcome outcome = evalProgram(table);
    ++swept;
    if (std::holds_alternative<EvalFault>(outcome)) {
      ++violations;
      continue;
    }
    if (const auto* ok = std::get_if<EvalSuccess>(&outcome)) {
      if (!nominalSubtype(table, ok->value->sig->root, staticType)) ++violations;
    }
  }
  std::ostringstream detail;
  detail << swept << " programs evaluated, " << violations << " violations";
  report(8, "preservation sweep", violations == 0 && swept >= 4, detail.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures;
}
