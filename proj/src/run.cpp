#include "lns/run.hpp"

#include <deque>
#include <random>
#include <set>

#include "lns/errors.hpp"
#include "lns/printer.hpp"

namespace lns {

RunResult run(const ProcessPtr& p, Policy policy, std::uint64_t seed,
              const RunLimits& limits) {
  RunResult res;
  res.final_state = normalize(p);
  std::mt19937_64 rng(seed);
  std::uint64_t steps = 0;
  while (true) {
    auto cands = reduce_candidates(res.final_state, limits.budget);
    if (cands.empty()) return res;
    if (steps == limits.max_steps)
      throw Error(ErrorKind::StepLimit,
                  "still reducible after " + std::to_string(steps) + " steps");
    std::size_t pick = 0;
    if (policy == Policy::Seeded) pick = static_cast<std::size_t>(rng() % cands.size());
    Candidate& c = cands[pick];
    ++steps;
    res.events.push_back({steps, c.rule, c.detail});
    if (c.emitted) res.traces.push_back(*c.emitted);
    res.final_state = std::move(c.next);
  }
}

namespace {

std::string counts_key(const std::map<std::string, std::uint64_t>& counts) {
  std::string out;
  for (const auto& [k, v] : counts) out += k + "=" + std::to_string(v) + ";";
  return out;
}

std::string trace_sig(const EmittedTrace& t) {
  return t.channel + "<" + print_trace(t.trace) + ">";
}

} // namespace

ExploreResult explore(const ProcessPtr& p, const ExploreLimits& limits) {
  ExploreResult res;
  struct Item {
    NormalForm state;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t depth;
  };
  std::deque<Item> queue;
  std::set<std::string> visited;
  std::set<std::string> terminal_keys;
  std::set<std::string> trace_keys;

  Item start{normalize(p), {}, 0};
  visited.insert(start.state.key() + "\x02" + counts_key(start.counts));
  queue.push_back(std::move(start));
  res.visited = 1;

  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    auto cands = reduce_candidates(item.state, limits.budget);
    if (cands.empty()) {
      if (terminal_keys.insert(item.state.key()).second)
        res.terminals.push_back(item.state);
      continue;
    }
    bool cut = false;
    for (auto& c : cands) {
      auto counts = item.counts;
      bool over = false;
      for (const auto& rk : c.repl_keys) {
        if (counts[rk] >= limits.repl_bound) over = true;
        ++counts[rk];
      }
      if (over || item.depth >= limits.max_depth) {
        cut = true;
        continue;
      }
      if (c.emitted && trace_keys.insert(trace_sig(*c.emitted)).second)
        res.traces.push_back(*c.emitted);
      std::string key = c.next.key() + "\x02" + counts_key(counts);
      if (!visited.insert(key).second) continue;
      if (visited.size() > limits.max_states)
        throw Error(ErrorKind::StateLimit,
                    "state space exceeds " + std::to_string(limits.max_states) +
                        " states");
      ++res.visited;
      queue.push_back({std::move(c.next), std::move(counts), item.depth + 1});
    }
    if (cut) res.truncated = true;
  }
  return res;
}

} // namespace lns
