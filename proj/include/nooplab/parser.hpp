#pragma once

#include <string_view>

#include "nooplab/ast.hpp"

namespace nooplab {

// Parses and resolves a MiniOO program. Resolution enforces:
//   - class names pairwise distinct, builtins not redeclared
//   - member labels distinct within their namespace (fields vs. methods kept apart)
//   - parameter names pairwise distinct
//   - every referenced class name declared or built-in
//   - variables in method bodies bound by parameters; main expression closed,
//     no `this` outside method bodies
// Throws DiagnosticError (SYN00x) on the first violation.
Program parseProgram(std::string_view source);

}  // namespace nooplab
