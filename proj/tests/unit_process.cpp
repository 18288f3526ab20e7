#include <doctest.h>

#include "lns/errors.hpp"
#include "lns/loader.hpp"
#include "lns/normalize.hpp"
#include "lns/parser.hpp"
#include "lns/printer.hpp"
#include "lns/reduce.hpp"

using namespace lns;

static std::map<std::string, LanguagePtr> test_langs() {
  std::map<std::string, LanguagePtr> m;
  for (const char* n : {"bpa", "almostDisrupt", "disruptRules"})
    m[n] = load_language_file(std::string(LNS_CORPUS_DIR) + "/" + n + ".lnsl");
  return m;
}

static ProcessPtr parse_p(const std::string& text) {
  return parse_script(text, test_langs());
}

TEST_CASE("scripts round-trip through the printer") {
  for (const char* text : {
           "0",
           "x(y).0",
           "send x<y>.0",
           "x(y).send y<z>.0 | send x<w>.0",
           "x(y).0 + send x<z>.0 + recvtrace q(t).0",
           "new x.(send x<v>.0 | x(y).0)",
           "!x(y).!send y<y>.0",
           "recvlang c(l).exec(union(bpa, l), r, (act (a)))",
           "sendlang c<union(bpa, almostDisrupt)>.0",
           "sendtrace c<[(a) (b)]>.0 | sendtrace d<[]>.0",
           "recvtrace c(t).if (sorry) in t then send u<v>.0 else sendtrace d<t>.0",
           "exec(bpa, x, (seq (act (a)) (act (b))), checkMark, [(a) (b)])",
           "exec(bpa, x, (act (a)), [(b)])",
           "(x(y).0 + send x<z>.0) | (new q.send q<q>.0 + 0)",
       }) {
    ProcessPtr p = parse_p(text);
    std::string printed = print_process(p);
    ProcessPtr again = parse_p(printed);
    CHECK(print_process(again) == printed);
    // and canonical identity is stable across the round trip
    CHECK(normalize(p).key() == normalize(again).key());
  }
}

TEST_CASE("parser rejects ill-formed scripts") {
  CHECK_THROWS_AS(parse_p("send x<y>"), Error);              // missing continuation
  CHECK_THROWS_AS(parse_p("x(new).0"), Error);               // reserved binder
  CHECK_THROWS_AS(parse_p("exec(nosuch, x, (act (a)))"), Error); // unknown language
  CHECK_THROWS_AS(parse_p("sendtrace c<t>.0"), Error);       // unbound trace var
  CHECK_THROWS_AS(parse_p("exec(bpa, x, (act P))"), Error);  // non-ground program
  CHECK_THROWS_AS(parse_p("recvlang c(l).send l<x>.0"), Error); // lang var as channel
  CHECK_THROWS_AS(parse_p("recvtrace c(t).sendlang d<t>.0"), Error); // trace as lang
  CHECK_THROWS_AS(parse_p("0 | x"), Error);                  // dangling name
  CHECK_THROWS_AS(parse_p("send nu0<v>.0"), Error);          // reserved free name
  CHECK_THROWS_AS(parse_p("sendlang c<nu1>.0"), Error);      // reserved free name
  CHECK_NOTHROW(parse_p("new nu1.send nu1<v>.0"));           // fine as a binder
  try {
    parse_p("recvlang c(l).send l<x>.0");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::SortMismatch);
  }
}

TEST_CASE("channel substitution avoids capture") {
  ProcessPtr p = parse_p("new y.(send x<x>.0 | send y<v>.0)");
  ProcessPtr q = subst_channel(p, "y", "x"); // rename free x to y
  auto free = free_channels(q);
  CHECK(free.count("y") == 1);
  CHECK(free.count("v") == 1);
  CHECK(free.count("x") == 0);
  // the restricted y must not have captured the substituted name:
  // new y'.(send y<y>.0 | send y'<v>.0) has TWO distinct names in play
  NormalForm nf = normalize(q);
  CHECK(nf.display() == "new nu0.(send nu0<v>.0 | send y<y>.0)");
}

TEST_CASE("normal forms implement the structural identities") {
  auto same = [&](const std::string& a, const std::string& b) {
    CHECK(normalize(parse_p(a)).key() == normalize(parse_p(b)).key());
  };
  auto differ = [&](const std::string& a, const std::string& b) {
    CHECK(normalize(parse_p(a)).key() != normalize(parse_p(b)).key());
  };

  same("x(y).0 | 0", "x(y).0");                          // unit
  same("a(x).0 | b(y).0", "b(y).0 | a(x).0");            // commutativity
  same("(a(x).0 | b(y).0) | c(z).0",
       "a(x).0 | (b(y).0 | c(z).0)");                    // associativity
  same("new x.0", "0");                                  // idle restriction
  same("new x.new y.send x<v>.0", "new y.new x.send y<v>.0"); // swap
  same("new x.(a(q).0 | send x<v>.0)",
       "a(q).0 | new x.send x<v>.0");                    // scope extrusion
  same("!a(x).0 | a(x).0", "!a(x).0");                   // replication copy
  same("x(y).send y<v>.0", "x(z).send z<v>.0");          // alpha: input binder
  same("recvlang c(l).exec(l, r, (act (a)))",
       "recvlang c(m).exec(m, r, (act (a)))");           // alpha: language var
  same("recvtrace c(t).sendtrace d<t>.0",
       "recvtrace c(s).sendtrace d<s>.0");               // alpha: trace var
  same("!new x.send x<v>.0 | new x.send x<v>.0",
       "!new x.send x<v>.0");                            // copy with private name
  same("0 | 0", "0");

  differ("a(x).0", "b(x).0");
  differ("send a<v>.0 | send a<v>.0", "send a<v>.0");    // no idempotence
  differ("!a(x).0 | a(y).send y<y>.0", "!a(x).0");       // body differs
  differ("new x.(send x<v>.0 | a(q).send x<q>.0)",
         "new x.send x<v>.0 | new x.a(q).send x<q>.0");  // shared vs split
  differ("a(x).0 + b(x).0", "b(x).0 + a(x).0");          // choice is ordered
}

TEST_CASE("normalization is idempotent and numbering is canonical") {
  for (const char* text : {
           "new x.(send x<v>.0 | x(y).0) | new z.send z<z>.0",
           "new a.new b.(send a<b>.0 | send b<a>.0 | c(q).0)",
           "!(t(r).new x.(send x<v>.0 | x(y).sendtrace r<[]>.0))",
           "new x.(send x<v>.0 | !send x<v>.0 | 0)",
       }) {
    NormalForm nf = normalize(parse_p(text));
    NormalForm again = normalize(nf.to_process());
    CHECK(nf.key() == again.key());
    CHECK(nf.display() == again.display());
  }
}

TEST_CASE("reduction candidates: communication, choice commitment, sorts") {
  SearchBudget budget;

  // two parallel offers on one channel: exactly one comm candidate
  auto cands = reduce_candidates(normalize(parse_p("x(y).send y<ok>.0 | send x<z>.0")),
                                 budget);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].rule == "comm");
  CHECK(cands[0].next.display() == "send z<ok>.0");

  // choice: the losing branch disappears with the step taken
  cands = reduce_candidates(
      normalize(parse_p("(a(x).0 + b(x).send q<x>.0) | send b<m>.0")), budget);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].next.display() == "send q<m>.0");

  // both branches enabled: two distinct candidates
  cands = reduce_candidates(
      normalize(parse_p("(a(x).0 + b(x).0) | send a<m>.0 | send b<m>.0")), budget);
  CHECK(cands.size() == 2);

  // an exec or trace test under + does not fire
  cands = reduce_candidates(
      normalize(parse_p("exec(bpa, x, (act (a))) + a(y).0")), budget);
  CHECK(cands.empty());

  // no self-communication inside a single choice
  cands = reduce_candidates(normalize(parse_p("x(y).0 + send x<z>.0")), budget);
  CHECK(cands.empty());

  // cross-sort use of one channel is a runtime sort error
  CHECK_THROWS_AS(reduce_candidates(
                      normalize(parse_p("c(y).0 | sendlang c<bpa>.0")), budget),
                  Error);
  try {
    reduce_candidates(normalize(parse_p("c(y).0 | sendlang c<bpa>.0")), budget);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::SortMismatch);
  }
}

TEST_CASE("replication unfolds one copy on demand") {
  SearchBudget budget;
  auto cands =
      reduce_candidates(normalize(parse_p("!a(x).send x<done>.0 | send a<c>.0")), budget);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].repl_keys.size() == 1);
  NormalForm next = cands[0].next;
  // the replication survives next to the spawned continuation
  CHECK(next.display() == "!a(x).send x<done>.0 | send c<done>.0");
}

TEST_CASE("language expression evaluation is leftmost-innermost") {
  auto langs = test_langs();
  LangExprPtr e = le_union(le_union(le_lit(langs["bpa"]), le_lit(langs["almostDisrupt"])),
                           le_lit(langs["disruptRules"]));
  auto st = lan_step(e);
  REQUIRE(st.has_value());
  CHECK(st->detail == "union bpa with almostDisrupt");
  std::string detail;
  LanguagePtr l = lan_eval(e, &detail);
  CHECK(l->rules.size() == 7 + 2 + 2);
  CHECK(detail == "union bpa with almostDisrupt; union <language> with disruptRules");
}

TEST_CASE("trace membership") {
  Trace t{parse_ground_term("(a)"), parse_ground_term("(sorry)")};
  CHECK(is_in_trace(parse_ground_term("(sorry)"), t));
  CHECK_FALSE(is_in_trace(parse_ground_term("(done)"), t));
  CHECK_FALSE(is_in_trace(parse_ground_term("(a)"), {}));
}
