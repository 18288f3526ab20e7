#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lns/engine.hpp"
#include "lns/normalize.hpp"

namespace lns {

struct EmittedTrace {
  std::string channel; // display name
  Trace trace;
};

struct Candidate {
  NormalForm next;
  std::string rule;   // comm / comm-lang / comm-trace / exec-ctx /
                      // program-step / program-end / is-in-trace1 / is-in-trace2
  std::string detail;
  std::optional<EmittedTrace> emitted;    // set by program-end
  std::vector<std::string> repl_keys;     // replications unfolded by this step
};

// Every reduction enabled in the given state, deterministically ordered:
// in-place steps first (exec and trace tests, threads in canonical order),
// then communications (thread pairs in order).  Offers inside a choice are
// the prefix leaves; taking one discards the rest of the choice.  A channel
// carrying different payload sorts at the two ends raises SortMismatch.
std::vector<Candidate> reduce_candidates(const NormalForm& nf,
                                         const SearchBudget& budget);

// One union-evaluation step on a language expression (leftmost-innermost),
// or nullopt when it is already a literal.
struct LanStep {
  LangExprPtr next;
  std::string detail;
};
std::optional<LanStep> lan_step(const LangExprPtr& e);

// Full evaluation to a literal; appends step descriptions to *detail.
LanguagePtr lan_eval(const LangExprPtr& e, std::string* detail);

bool is_in_trace(const TermPtr& label, const Trace& t);

} // namespace lns
