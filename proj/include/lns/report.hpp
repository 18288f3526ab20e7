#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lns/run.hpp"

namespace lns {

// A report is a sequence of JSON objects, one per line:
//   {"event": N, "rule": "...", "detail": "..."}     one per reduction
//   {"trace": {"channel": "x", "labels": ["(a)", "(b)"]}}
//   {"final": "..."}                                  run: final state
//   {"terminal": "..."}                               explore: each end state
//   {"summary": {"visited": N, "truncated": bool}}    explore only
std::string report_run(const RunResult& r);
std::string report_explore(const ExploreResult& r);

// Parsed-back view of a report (round-trip for tooling and tests).
struct ParsedReport {
  struct Event {
    std::uint64_t step;
    std::string rule, detail;
  };
  struct TraceLine {
    std::string channel;
    std::vector<std::string> labels;
  };
  std::vector<Event> events;
  std::vector<TraceLine> traces;
  std::vector<std::string> finals; // "final" or "terminal" lines
  bool has_summary = false;
  std::uint64_t visited = 0;
  bool truncated = false;
};

ParsedReport parse_report(const std::string& text);

} // namespace lns
