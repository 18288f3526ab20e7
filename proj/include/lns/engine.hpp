#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lns/language.hpp"
#include "lns/term.hpp"

namespace lns {

inline constexpr const char* kStepPred = "-->";

// Idempotent binding set: every right-hand side is kept fully substituted,
// so apply() never needs to chase chains.
class Substitution {
public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const TermPtr* lookup(const std::string& var) const;
  TermPtr apply(const TermPtr& t) const;
  Formula apply(const Formula& f) const;
  // Extend with var := apply(term); false when the occurs check trips.
  bool bind(const std::string& var, const TermPtr& t);
  const std::map<std::string, TermPtr>& bindings() const { return bindings_; }
  // Restriction to the given variables, values fully applied.
  Substitution project(const std::set<std::string>& vars) const;

private:
  std::map<std::string, TermPtr> bindings_;
};

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const Substitution& s);

struct Clause {
  Formula head;
  std::vector<Formula> body;
};

struct ClauseProgram {
  std::vector<Clause> clauses;
  LanguagePtr source;
  std::map<std::string, std::vector<std::size_t>> index; // by head predicate
};

// One clause per rule, same order.
ClauseProgram compile(const LanguagePtr& lang);

struct SearchBudget {
  std::uint64_t max_nodes = 1000000;
  std::uint32_t max_depth = 512;
};

// Depth-first SLD resolution over the clause program: clauses tried in
// program order, leftmost goal first, clause variables freshly renamed per
// use.  next() yields answer substitutions (projected onto the goal's
// metavars) lazily; exhausting the budget throws BudgetExhausted, it is
// never reported as plain failure.
class SolveStream {
public:
  SolveStream(const ClauseProgram& prog, Formula goal, SearchBudget budget);
  std::optional<Substitution> next();

private:
  struct GoalEntry {
    Formula formula;
    std::uint32_t depth;
  };
  struct Node {
    std::vector<GoalEntry> goals;
    Substitution subst;
  };

  const ClauseProgram& prog_;
  SearchBudget budget_;
  std::set<std::string> goal_vars_;
  std::vector<Node> stack_;
  std::uint64_t nodes_ = 0;
  std::uint64_t fresh_ = 0;

  Formula rename(const Formula& f, std::uint64_t tag) const;
};

std::vector<Substitution> solve_all(const ClauseProgram& prog, const Formula& goal,
                                    const SearchBudget& budget);

struct StepAnswer {
  TermPtr label;
  TermPtr target;
};

// All (label, target) with  pred(label, t, target)  derivable, in proof-search
// order.  Throws NonGroundAnswer if an answer leaves a metavar free.
std::vector<StepAnswer> query_step(const ClauseProgram& prog, const TermPtr& t,
                                   const SearchBudget& budget,
                                   const std::string& pred = kStepPred);

} // namespace lns
