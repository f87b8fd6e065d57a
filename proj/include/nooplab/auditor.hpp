#pragma once

#include <string>
#include <vector>

#include "nooplab/class_table.hpp"

namespace nooplab {

struct PairVerdict {
  ClassName sub;
  ClassName sup;
  bool inherits;
  bool nominalSub;
  bool structuralSub;
};

enum class BinaryMethodKind { DeclaredBinary, ApproximatedBinary, SpuriousBinary };

const char* toString(BinaryMethodKind kind);

struct BinaryMethodFinding {
  ClassName className;
  MemberLabel method;
  BinaryMethodKind kind;
  int approximationDepth = 0;  // 0 for DeclaredBinary and SpuriousBinary
};

struct SkippedSite {
  std::string context;  // "ClassName.method" or "main"
  std::string construct;  // "cast" or "instanceof"
  int line = 0;
  int col = 0;
};

// Per-program verdict matrix over every ordered pair of declared classes
// plus Object, binary-method findings, and the per-discipline headline.
struct AuditReport {
  std::vector<PairVerdict> pairs;                       // sorted by (sub, sup)
  std::vector<BinaryMethodFinding> findings;            // sorted by (class, method)
  bool nominalEquiv = true;
  bool structuralEquiv = true;
  std::vector<std::pair<ClassName, ClassName>> witnesses;  // pairs where inherits != structuralSub
  std::vector<SkippedSite> skippedSites;                // cast/instanceof sites excluded structurally
  std::vector<std::pair<ClassName, std::string>> contracts;  // //@ docs, surfaced, never checked
};

// Classification of every method visible in c: declared binary (own name in
// a parameter of an own method), approximated binary (ancestor's name kept in
// an inherited parameter; depth = extends distance to the declarer), or
// spurious binary (a parameter class structurally equivalent to c without
// being c or an ancestor).
std::vector<BinaryMethodFinding> classifyBinaryMethods(const ClassTable& table,
                                                       const ClassName& c);

// Requires the program nominally well-formed. Runs both disciplines over the
// full pair matrix; cast/instanceof sites are listed and skipped rather than
// failing the structural half.
AuditReport auditProgram(const ClassTable& table);

enum class ReportFormat { Text, Json };

// Deterministic rendering; json follows the stable schema
// {"pairs": [...], "findings": [...], "summary": {...}}.
std::string renderReport(const AuditReport& report, ReportFormat format, bool color = false);

}  // namespace nooplab
