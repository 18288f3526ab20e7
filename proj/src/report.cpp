#include "lns/report.hpp"

#include <sstream>

#include <json.hpp>

#include "lns/printer.hpp"

namespace lns {

namespace {

using json = nlohmann::ordered_json;

json trace_line(const EmittedTrace& t) {
  json labels = json::array();
  for (const auto& l : t.trace) labels.push_back(print_term(l));
  return json{{"trace", {{"channel", t.channel}, {"labels", labels}}}};
}

} // namespace

std::string report_run(const RunResult& r) {
  std::ostringstream out;
  for (const auto& e : r.events)
    out << json{{"event", e.step}, {"rule", e.rule}, {"detail", e.detail}}.dump()
        << "\n";
  for (const auto& t : r.traces) out << trace_line(t).dump() << "\n";
  out << json{{"final", r.final_state.display()}}.dump() << "\n";
  return out.str();
}

std::string report_explore(const ExploreResult& r) {
  std::ostringstream out;
  for (const auto& t : r.traces) out << trace_line(t).dump() << "\n";
  for (const auto& s : r.terminals)
    out << json{{"terminal", s.display()}}.dump() << "\n";
  out << json{{"summary", {{"visited", r.visited}, {"truncated", r.truncated}}}}.dump()
      << "\n";
  return out.str();
}

ParsedReport parse_report(const std::string& text) {
  ParsedReport out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.contains("event")) {
      out.events.push_back({j.at("event").get<std::uint64_t>(),
                            j.at("rule").get<std::string>(),
                            j.at("detail").get<std::string>()});
    } else if (j.contains("trace")) {
      ParsedReport::TraceLine t;
      t.channel = j.at("trace").at("channel").get<std::string>();
      for (const auto& l : j.at("trace").at("labels"))
        t.labels.push_back(l.get<std::string>());
      out.traces.push_back(std::move(t));
    } else if (j.contains("final")) {
      out.finals.push_back(j.at("final").get<std::string>());
    } else if (j.contains("terminal")) {
      out.finals.push_back(j.at("terminal").get<std::string>());
    } else if (j.contains("summary")) {
      out.has_summary = true;
      out.visited = j.at("summary").at("visited").get<std::uint64_t>();
      out.truncated = j.at("summary").at("truncated").get<bool>();
    }
  }
  return out;
}

} // namespace lns
