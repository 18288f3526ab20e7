#include <doctest.h>

#include <lns.h>

#include <string>

namespace {

std::string corpus(const char* want) {
  for (int i = 0; i < lns_corpus_count(); ++i)
    if (std::string(lns_corpus_name(i)) == want) return lns_corpus_text(i);
  FAIL((std::string("corpus entry not found: ") + want));
  return "";
}

struct Session {
  lns_session* s = lns_session_new();
  ~Session() { lns_session_free(s); }
  operator lns_session*() const { return s; }
};

struct Out {
  char* p = nullptr;
  ~Out() { lns_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(lns_version()) == "1.0.0");
  CHECK(std::string(lns_status_name(LNS_OK)) == "ok");
  CHECK(std::string(lns_status_name(LNS_ERROR)) == "error");
  CHECK(std::string(lns_status_name(LNS_STEP_LIMIT)) == "step-limit");
  CHECK(std::string(lns_status_name(LNS_BUDGET_EXHAUSTED)) == "budget-exhausted");
  CHECK(std::string(lns_status_name(LNS_STATE_LIMIT)) == "state-limit");
  CHECK(std::string(lns_status_name(99)) == "unknown");
}

TEST_CASE("the example corpus is embedded") {
  CHECK(lns_corpus_count() == 12);
  CHECK(lns_corpus_name(-1) == nullptr);
  CHECK(lns_corpus_name(lns_corpus_count()) == nullptr);
  CHECK(contains(corpus("bpa.lnsl"), "grammar"));
  CHECK(contains(corpus("bpa_walkthrough.lns"), "use bpa"));
  for (int i = 0; i < lns_corpus_count(); ++i) {
    CHECK(lns_corpus_name(i) != nullptr);
    CHECK(lns_corpus_text(i) != nullptr);
  }
}

TEST_CASE("running a script against a registered language") {
  Session s;
  REQUIRE(lns_load_language_text(s, "bpa", corpus("bpa.lnsl").c_str()) == LNS_OK);
  Out out;
  REQUIRE(lns_run_text(s, corpus("bpa_walkthrough.lns").c_str(), &out.p) == LNS_OK);
  std::string report = out.str();
  CHECK(contains(report, "program-step"));
  CHECK(contains(report, "program-end"));
  CHECK(contains(report, "\"channel\":\"x\""));
  CHECK(contains(report, "\"(a)\""));
  CHECK(contains(report, "\"(b)\""));
  CHECK_FALSE(contains(report, "\"(c)\"")); // the final action stays out of the trace
  CHECK(std::string(lns_session_last_error(s)).empty());
}

TEST_CASE("running a script file with a language search path") {
  Session s;
  lns_add_lang_path(s, LNS_CORPUS_DIR);
  Out out;
  REQUIRE(lns_run_file(s, LNS_CORPUS_DIR "/bpa_walkthrough.lns", &out.p) == LNS_OK);
  CHECK(contains(out.str(), "program-end"));
}

TEST_CASE("reports are bit-identical across repeated seeded runs") {
  std::string first, again;
  for (std::string* dst : {&first, &again}) {
    Session s;
    lns_add_lang_path(s, LNS_CORPUS_DIR);
    lns_set_policy_seeded(s, 7);
    Out out;
    REQUIRE(lns_run_file(s, LNS_CORPUS_DIR "/disrupt_system.lns", &out.p) == LNS_OK);
    *dst = out.str();
  }
  CHECK(first == again);

  for (std::string* dst : {&first, &again}) {
    Session s;
    Out out;
    REQUIRE(lns_explore_file(s, LNS_CORPUS_DIR "/ccs_system.lns", &out.p) == LNS_OK);
    *dst = out.str();
  }
  CHECK(first == again);
}

TEST_CASE("parse failures report LNS_ERROR and leave an explanation") {
  Session s;
  Out out;
  CHECK(lns_run_text(s, "send x<", &out.p) == LNS_ERROR);
  CHECK(out.p == nullptr);
  CHECK(!std::string(lns_session_last_error(s)).empty());
  // a later success clears the error
  Out ok;
  REQUIRE(lns_run_text(s, "0", &ok.p) == LNS_OK);
  CHECK(std::string(lns_session_last_error(s)).empty());
}

TEST_CASE("step limit surfaces as LNS_STEP_LIMIT") {
  Session s;
  lns_set_max_steps(s, 3);
  Out out;
  CHECK(lns_run_text(s, "!a(x).send a<x>.0 | send a<v>.0", &out.p) == LNS_STEP_LIMIT);
}

TEST_CASE("proof search budget surfaces as LNS_BUDGET_EXHAUSTED") {
  Session s;
  const char* loop = "language loop\n"
                     "grammar\n"
                     "  Action A ::= (tick)\n"
                     "  Item I ::= (z)\n"
                     "rules\n"
                     "  (--> A I I')\n"
                     "  ---\n"
                     "  (--> A I I')\n";
  REQUIRE(lns_load_language_text(s, "loop", loop) == LNS_OK);
  lns_set_budget(s, 100, 8);
  Out out;
  CHECK(lns_run_text(s, "exec(loop, x, (z))", &out.p) == LNS_BUDGET_EXHAUSTED);
}

TEST_CASE("state cap surfaces as LNS_STATE_LIMIT") {
  Session s;
  lns_set_explore_limits(s, 10000, 2);
  Out out;
  CHECK(lns_explore_text(s, "(a(x).0 + b(x).0) | send a<m>.0 | send b<m>.0",
                         &out.p) == LNS_STATE_LIMIT);
}

TEST_CASE("check returns diagnostics through the out parameter") {
  Session s;
  Out bad;
  CHECK(lns_check_text(s, "send c<v>.0 | recvlang c(l).0", &bad.p) == LNS_ERROR);
  CHECK(contains(bad.str(), "'c'"));
  Out good;
  CHECK(lns_check_text(s, "send c<v>.0 | c(x).0", &good.p) == LNS_OK);
  CHECK(good.str().empty());
}
