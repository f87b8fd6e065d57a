#pragma once

#include <string>
#include <vector>

namespace nooplab {

// Built-in exemplar programs, shipped inside the binary.
std::vector<std::string> corpusNames();

// Source text of a named corpus program; throws DiagnosticError on an
// unknown name.
const std::string& corpusSource(const std::string& name);

}  // namespace nooplab
