#pragma once

#include <stdexcept>
#include <string>

namespace lns {

// Failure classes.  Each maps to a process exit code so the CLI and the C API
// report the same thing.
enum class ErrorKind {
  Parse,           // lexical/syntactic errors, undeclared metavar roots
  UnboundVariable, // free language/trace variable, unknown import
  SortMismatch,    // identifier or channel used at two different sorts
  CategoryClash,   // union of grammars disagreeing on a category's metavar root
  UnknownCategory, // conformance query against a category the grammar lacks
  NonGroundAnswer, // step query answer left a metavar uninstantiated
  Closedness,      // executed process has a free language/trace variable
  Io,              // file missing/unreadable
  StepLimit,       // run exceeded max steps with candidates remaining
  BudgetExhausted, // proof search hit max depth or max nodes
  StateLimit,      // explore exceeded the state cap
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Exit-code scheme: 0 quiescence, 1 parse/sort/semantic errors, 2 step limit,
// 3 proof budget, 4 state limit.
inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::StepLimit: return 2;
    case ErrorKind::BudgetExhausted: return 3;
    case ErrorKind::StateLimit: return 4;
    default: return 1;
  }
}

} // namespace lns
