#pragma once

#include <string>
#include <vector>

#include "lns/process.hpp"

namespace lns {

struct Diagnostic {
  std::string what;
};

// Static diagnostics for a parsed script:
//   - leftover free language/trace variables (parser normally rejects these)
//   - a channel used with more than one payload sort (name/language/trace),
//     scope-aware: binders are uniquified before the analysis
//   - exec programs that the grammar of their (closed) language expression
//     cannot generate; expressions involving language variables are skipped,
//     since a union at runtime could only extend the grammar
std::vector<Diagnostic> check_script(const ProcessPtr& p);

} // namespace lns
