#include "nooplab/auditor.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "nooplab/nominal.hpp"
#include "nooplab/structural.hpp"

namespace nooplab {

const char* toString(BinaryMethodKind kind) {
  switch (kind) {
    case BinaryMethodKind::DeclaredBinary: return "DeclaredBinary";
    case BinaryMethodKind::ApproximatedBinary: return "ApproximatedBinary";
    case BinaryMethodKind::SpuriousBinary: return "SpuriousBinary";
  }
  return "?";
}

std::vector<BinaryMethodFinding> classifyBinaryMethods(const ClassTable& table,
                                                       const ClassName& c) {
  std::vector<BinaryMethodFinding> findings;
  const ClassSignature& sig = table.signatureOf(c);
  StructType selfStruct = structuralTypeOf(table, c);
  for (const auto& [label, m] : sig.methods) {
    if (m.declaredIn == c) {
      bool ownName = std::find(m.params.begin(), m.params.end(), c) != m.params.end();
      if (ownName) {
        findings.push_back({c, label, BinaryMethodKind::DeclaredBinary, 0});
        continue;
      }
    } else {
      bool declarerName =
          std::find(m.params.begin(), m.params.end(), m.declaredIn) != m.params.end();
      if (declarerName) {
        findings.push_back({c, label, BinaryMethodKind::ApproximatedBinary,
                            table.chainDistance(c, m.declaredIn)});
        continue;
      }
    }
    for (const auto& p : m.params) {
      if (p == c || table.inherits(c, p)) continue;
      if (typeEquivalent(structuralTypeOf(table, p), selfStruct)) {
        findings.push_back({c, label, BinaryMethodKind::SpuriousBinary, 0});
        break;
      }
    }
  }
  std::sort(findings.begin(), findings.end(), [](const auto& a, const auto& b) {
    return std::tie(a.className, a.method) < std::tie(b.className, b.method);
  });
  return findings;
}

namespace {

void collectSkippedSites(const Expr& e, const std::string& context,
                         std::vector<SkippedSite>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FieldGetExpr>) {
          collectSkippedSites(*node.object, context, out);
        } else if constexpr (std::is_same_v<T, InvokeExpr>) {
          collectSkippedSites(*node.receiver, context, out);
          for (const auto& a : node.args) collectSkippedSites(*a, context, out);
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          for (const auto& a : node.args) collectSkippedSites(*a, context, out);
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          out.push_back({context, "cast", e.line, e.col});
          collectSkippedSites(*node.operand, context, out);
        } else if constexpr (std::is_same_v<T, InstanceOfExpr>) {
          out.push_back({context, "instanceof", e.line, e.col});
          collectSkippedSites(*node.operand, context, out);
        }
      },
      e.node);
}

}  // namespace

AuditReport auditProgram(const ClassTable& table) {
  AuditReport report;

  std::map<ClassName, StructType> structTypes;
  for (const auto& name : table.auditNames()) {
    structTypes.emplace(name, structuralTypeOf(table, name));
  }

  for (const auto& sub : table.auditNames()) {
    for (const auto& sup : table.auditNames()) {
      PairVerdict v;
      v.sub = sub;
      v.sup = sup;
      v.inherits = table.inherits(sub, sup);
      v.nominalSub = nominalSubtype(table, sub, sup);
      v.structuralSub = structSubtype(structTypes.at(sub), structTypes.at(sup));
      if (v.inherits != v.nominalSub) report.nominalEquiv = false;
      if (v.inherits != v.structuralSub) {
        report.structuralEquiv = false;
        report.witnesses.emplace_back(sub, sup);
      }
      report.pairs.push_back(std::move(v));
    }
  }

  for (const auto& name : table.auditNames()) {
    if (name == kObjectClass) continue;
    auto findings = classifyBinaryMethods(table, name);
    report.findings.insert(report.findings.end(), findings.begin(), findings.end());
  }
  std::sort(report.findings.begin(), report.findings.end(), [](const auto& a, const auto& b) {
    return std::tie(a.className, a.method) < std::tie(b.className, b.method);
  });

  for (const auto& c : table.program().classes) {
    for (const auto& m : c.methods) {
      collectSkippedSites(*m.body, c.name + "." + m.name, report.skippedSites);
    }
    if (!c.contractDoc.empty()) report.contracts.emplace_back(c.name, c.contractDoc);
  }
  if (table.program().main) {
    collectSkippedSites(*table.program().main, "main", report.skippedSites);
  }
  std::sort(report.contracts.begin(), report.contracts.end());
  return report;
}

namespace {

std::string colorize(const std::string& s, const char* code, bool color) {
  if (!color) return s;
  return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

std::string renderText(const AuditReport& r, bool color) {
  std::string out;
  auto boolCell = [&](bool b) { return std::string(b ? "true " : "false"); };

  out += "pair                            inherits  nominal<:  structural<:\n";
  for (const auto& p : r.pairs) {
    std::string pair = "(" + p.sub + ", " + p.sup + ")";
    pair.resize(std::max<size_t>(pair.size(), 32), ' ');
    std::string row = pair + "  " + boolCell(p.inherits) + "     " + boolCell(p.nominalSub) +
                      "      " + boolCell(p.structuralSub);
    if (p.inherits != p.structuralSub) row = colorize(row, "31", color);
    out += row + "\n";
  }

  out += "\nbinary methods:\n";
  if (r.findings.empty()) {
    out += "  (none)\n";
  }
  for (const auto& f : r.findings) {
    out += "  " + f.className + "." + f.method + "  " + toString(f.kind) + "  depth " +
           std::to_string(f.approximationDepth) + "\n";
  }

  if (!r.skippedSites.empty()) {
    out += "\nsites skipped by the structural analysis:\n";
    for (const auto& s : r.skippedSites) {
      out += "  " + s.context + ":" + std::to_string(s.line) + ":" + std::to_string(s.col) + "  " +
             s.construct + "\n";
    }
  }

  if (!r.contracts.empty()) {
    out += "\ncontracts (documentation only):\n";
    for (const auto& [cls, doc] : r.contracts) {
      out += "  " + cls + ": " + doc + "\n";
    }
  }

  out += "\nsummary:\n";
  out += "  nominal:    " +
         colorize(r.nominalEquiv ? "EQUIV" : "DIVERGES", r.nominalEquiv ? "32" : "31", color) +
         "\n";
  out += "  structural: " +
         colorize(r.structuralEquiv ? "EQUIV" : "DIVERGES", r.structuralEquiv ? "32" : "31",
                  color);
  if (!r.witnesses.empty()) {
    out += "  witnesses:";
    for (const auto& [sub, sup] : r.witnesses) {
      out += " (" + sub + ", " + sup + ")";
    }
  }
  out += "\n";
  return out;
}

std::string renderJson(const AuditReport& r) {
  using nlohmann::json;
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"sub", p.sub},
                     {"sup", p.sup},
                     {"inherits", p.inherits},
                     {"nominalSub", p.nominalSub},
                     {"structuralSub", p.structuralSub}});
  }
  json findings = json::array();
  for (const auto& f : r.findings) {
    findings.push_back({{"class", f.className},
                        {"method", f.method},
                        {"kind", toString(f.kind)},
                        {"depth", f.approximationDepth}});
  }
  json witnesses = json::array();
  for (const auto& [sub, sup] : r.witnesses) {
    witnesses.push_back(json::array({sub, sup}));
  }
  json summary;
  summary["nominal"] = r.nominalEquiv ? "EQUIV" : "DIVERGES";
  summary["structural"] = r.structuralEquiv ? "EQUIV" : "DIVERGES";
  summary["witnesses"] = witnesses;
  json root;
  root["pairs"] = pairs;
  root["findings"] = findings;
  root["summary"] = summary;
  return root.dump(2) + "\n";
}

}  // namespace

std::string renderReport(const AuditReport& report, ReportFormat format, bool color) {
  return format == ReportFormat::Json ? renderJson(report) : renderText(report, color);
}

}  // namespace nooplab
