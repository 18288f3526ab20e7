#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lns/reduce.hpp"

namespace lns {

enum class Policy { First, Seeded };

struct RunLimits {
  std::uint64_t max_steps = 10000;
  SearchBudget budget;
};

struct RunEvent {
  std::uint64_t step; // 1-based
  std::string rule;
  std::string detail;
};

struct RunResult {
  NormalForm final_state;
  std::vector<RunEvent> events;
  std::vector<EmittedTrace> traces; // in emission order
};

// Reduce until quiescent.  First: always take the first enabled candidate;
// Seeded: draw uniformly with a fixed-seed generator.  Hitting max_steps with
// candidates still enabled raises StepLimit.
RunResult run(const ProcessPtr& p, Policy policy, std::uint64_t seed,
              const RunLimits& limits);

struct ExploreLimits {
  std::uint64_t max_depth = 10000;
  std::uint64_t max_states = 100000;
  std::uint64_t repl_bound = 2; // per-replication unfolds along a path
  SearchBudget budget;
};

struct ExploreResult {
  std::vector<NormalForm> terminals;  // states with no enabled candidates
  std::vector<EmittedTrace> traces;   // deduplicated, discovery order
  std::uint64_t visited = 0;
  bool truncated = false; // some frontier was cut by depth or unfold bounds
};

// Breadth-first search of the reachable state space.  States are identified
// by normal-form key plus per-replication unfold counts; candidates that
// would unfold a replication past repl_bound are not expanded.  Exceeding
// max_states raises StateLimit.
ExploreResult explore(const ProcessPtr& p, const ExploreLimits& limits);

} // namespace lns
