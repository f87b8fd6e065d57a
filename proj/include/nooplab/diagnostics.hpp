#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nooplab {

// Stable machine-readable diagnostic codes.
//
// SYN0xx  lexing / parsing / name resolution
// SIG0xx  signature construction
// NOM0xx  nominal type discipline
// STR0xx  structural type discipline
// RUN0xx  evaluator faults (unreachable from checked programs, except casts)
namespace codes {
inline constexpr const char* SyntaxError = "SYN001";
inline constexpr const char* DuplicateClass = "SYN002";
inline constexpr const char* DuplicateMember = "SYN003";
inline constexpr const char* UnknownName = "SYN004";
inline constexpr const char* DuplicateParam = "SYN005";

inline constexpr const char* FieldShadowing = "SIG001";

inline constexpr const char* UnknownMember = "NOM001";
inline constexpr const char* ArityMismatch = "NOM002";
inline constexpr const char* ArgumentTypeMismatch = "NOM003";
inline constexpr const char* IllegalOverride = "NOM004";
inline constexpr const char* StupidCast = "NOM005";
inline constexpr const char* InheritanceCycle = "NOM006";

inline constexpr const char* StructUnknownMember = "STR001";
inline constexpr const char* StructArityMismatch = "STR002";
inline constexpr const char* StructArgumentTypeMismatch = "STR003";
inline constexpr const char* RuntimeTypeTestUnavailable = "STR004";

inline constexpr const char* MemberNotFound = "RUN001";
inline constexpr const char* ArityError = "RUN002";
}  // namespace codes

struct Diagnostic {
  std::string code;
  std::string message;
  int line = 0;  // 1-based; 0 when no source position applies
  int col = 0;

  std::string str() const {
    std::string s;
    if (line > 0) {
      s += std::to_string(line) + ":" + std::to_string(col) + ": ";
    }
    s += "error[" + code + "]: " + message;
    return s;
  }
};

// Thrown by loading-stage operations that cannot produce a partial result.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace nooplab
