#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lns/check.hpp"
#include "lns/errors.hpp"
#include "lns/loader.hpp"
#include "lns/report.hpp"
#include "lns/run.hpp"

using namespace lns;

static const std::vector<std::filesystem::path> kCorpus = {LNS_CORPUS_DIR};

static ProcessPtr script(const std::string& text) {
  return load_script_text(text, kCorpus).process;
}

TEST_CASE("run reduces a pipeline to completion") {
  RunResult r = run(script("send a<m>.0 | a(x).send b<x>.0 | b(y).0"),
                    Policy::First, 0, RunLimits{});
  REQUIRE(r.events.size() == 2);
  CHECK(r.events[0].step == 1);
  CHECK(r.events[0].rule == "comm");
  CHECK(r.events[1].step == 2);
  CHECK(r.traces.empty());
  CHECK(r.final_state.threads.empty());
  CHECK(r.final_state.display() == "0");
}

TEST_CASE("run executes a program to quiescence and emits its trace") {
  RunResult r = run(script("use bpa\nexec(bpa, x, (seq (act (a)) (act (b))))"),
                    Policy::First, 0, RunLimits{});
  REQUIRE(r.events.size() == 2);
  CHECK(r.events[0].rule == "program-step");
  CHECK(r.events[1].rule == "program-end");
  REQUIRE(r.traces.size() == 1);
  CHECK(r.traces[0].channel == "x");
  REQUIRE(r.traces[0].trace.size() == 1);
  CHECK(print_term(r.traces[0].trace[0]) == "(a)");
  CHECK(r.final_state.display() == "sendtrace x<[(a)]>.0");
}

TEST_CASE("run raises StepLimit when reduction does not quiesce") {
  RunLimits lim;
  lim.max_steps = 5;
  try {
    run(script("!a(x).send a<x>.0 | send a<v>.0"), Policy::First, 0, lim);
    FAIL("expected StepLimit");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::StepLimit);
  }
}

TEST_CASE("seeded runs are reproducible") {
  const std::string text = "use bpa\n"
                           "exec(bpa, x, (+ (seq (act (a)) (act (c))) (act (b)))) | "
                           "recvtrace x(t).0 | recvtrace x(u).0";
  std::string first, again;
  for (std::string* out : {&first, &again}) {
    RunResult r = run(script(text), Policy::Seeded, 42, RunLimits{});
    *out = report_run(r);
  }
  CHECK(first == again);
}

TEST_CASE("reports round-trip") {
  RunResult r = run(script("use bpa\nexec(bpa, x, (seq (act (a)) (act (b)))) | recvtrace x(t).0"),
                    Policy::First, 0, RunLimits{});
  std::string text = report_run(r);
  ParsedReport p = parse_report(text);
  REQUIRE(p.events.size() == r.events.size());
  for (size_t i = 0; i < p.events.size(); ++i) {
    CHECK(p.events[i].step == r.events[i].step);
    CHECK(p.events[i].rule == r.events[i].rule);
    CHECK(p.events[i].detail == r.events[i].detail);
  }
  REQUIRE(p.traces.size() == 1);
  CHECK(p.traces[0].channel == "x");
  CHECK(p.traces[0].labels == std::vector<std::string>{"(a)"});
  REQUIRE(p.finals.size() == 1);
  CHECK(p.finals[0] == r.final_state.display());
  CHECK_FALSE(p.has_summary);

  ExploreResult ex = explore(script("(a(x).0 + b(x).0) | send a<m>.0 | send b<m>.0"),
                             ExploreLimits{});
  ParsedReport q = parse_report(report_explore(ex));
  CHECK(q.has_summary);
  CHECK(q.visited == ex.visited);
  CHECK(q.truncated == ex.truncated);
  CHECK(q.finals.size() == ex.terminals.size());
}

TEST_CASE("explore enumerates the reachable terminals") {
  ExploreResult ex = explore(script("(a(x).0 + b(x).0) | send a<m>.0 | send b<m>.0"),
                             ExploreLimits{});
  REQUIRE(ex.terminals.size() == 2);
  std::set<std::string> got;
  for (const auto& t : ex.terminals) got.insert(t.display());
  CHECK(got == std::set<std::string>{"send a<m>.0", "send b<m>.0"});
  CHECK(ex.visited >= 3);
  CHECK_FALSE(ex.truncated);
  CHECK(ex.traces.empty());
}

TEST_CASE("explore collects and deduplicates emitted traces") {
  ExploreResult ex = explore(
      script("use bpa\nexec(bpa, x, (act (a))) | exec(bpa, x, (act (a)))"),
      ExploreLimits{});
  REQUIRE(ex.terminals.size() == 1);
  CHECK(ex.terminals[0].display() == "sendtrace x<[]>.0 | sendtrace x<[]>.0");
  REQUIRE(ex.traces.size() == 1); // same channel, same empty trace
  CHECK(ex.traces[0].channel == "x");
  CHECK(ex.traces[0].trace.empty());
}

TEST_CASE("explore cuts unfolding at the replication bound") {
  ExploreLimits lim;
  lim.repl_bound = 2;
  ExploreResult ex = explore(script("!a(x).send a<x>.0 | send a<v>.0"), lim);
  CHECK(ex.truncated);
  CHECK(ex.terminals.empty());
  CHECK(ex.visited == 3); // 0, 1 and 2 unfoldings
}

TEST_CASE("explore raises StateLimit beyond max_states") {
  ExploreLimits lim;
  lim.max_states = 2;
  try {
    explore(script("(a(x).0 + b(x).0) | send a<m>.0 | send b<m>.0"), lim);
    FAIL("expected StateLimit");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::StateLimit);
  }
}

TEST_CASE("check accepts the shipped example scripts") {
  for (const auto& entry : std::filesystem::directory_iterator(LNS_CORPUS_DIR)) {
    if (entry.path().extension() != ".lns") continue;
    LoadedScript s = load_script_file(entry.path());
    CHECK_MESSAGE(check_script(s.process).empty(), entry.path().filename().string());
  }
}

TEST_CASE("check reports channel sort conflicts") {
  auto diags = check_script(script("send c<v>.0 | recvlang c(l).0"));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].what.find("'c'") != std::string::npos);
  CHECK(diags[0].what.find("name") != std::string::npos);
  CHECK(diags[0].what.find("language") != std::string::npos);

  // binders are scope-aware: the two t's below are different variables
  CHECK(check_script(script("recvtrace a(t).0 | recvlang b(t).0")).empty());
}

TEST_CASE("check reports programs outside the language's grammar") {
  CHECK(!check_script(script("use bpa\nexec(bpa, x, (act (d)))")).empty());
  CHECK(!check_script(script("use bpa\nexec(bpa, x, (|> (act (a)) (act (b))))")).empty());
  CHECK(check_script(script("use bpa\nexec(bpa, x, (act (a)))")).empty());

  // a union can only extend the grammar it needs
  CHECK(check_script(
            script("use bpa\nuse almostDisrupt\n"
                   "exec(union(bpa, almostDisrupt), x, (|> (act (a)) (act (b))))"))
            .empty());
  // expressions with language variables cannot be checked statically
  CHECK(check_script(
            script("use bpa\nrecvlang c(l).exec(union(bpa, l), x, (|> (act (a)) (act (b))))"))
            .empty());
}

TEST_CASE("loader resolves uses and names languages after their files") {
  LoadedScript s = load_script_text("use bpa\nexec(bpa, x, (act (a)))", kCorpus);
  REQUIRE(s.languages.count("bpa") == 1);
  CHECK(s.languages["bpa"]->name == std::optional<std::string>("bpa"));

  try {
    load_script_text("use nosuchlang\n0", kCorpus);
    FAIL("expected a lookup failure");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Io);
    CHECK(std::string(e.what()).find("nosuchlang") != std::string::npos);
  }

  // a file with no explicit name takes its stem
  auto dir = std::filesystem::temp_directory_path();
  auto path = dir / "anon_lang_test.lnsl";
  {
    std::ofstream out(path);
    out << "grammar\n  Thing T ::= (leaf)\nrules\n  (ok (leaf))\n";
  }
  LanguagePtr l = load_language_file(path);
  CHECK(l->name == std::optional<std::string>("anon_lang_test"));
  std::filesystem::remove(path);
}
