#include <doctest.h>

#include "lns/errors.hpp"
#include "lns/language.hpp"
#include "lns/loader.hpp"
#include "lns/parser.hpp"
#include "lns/printer.hpp"
#include "lns/term.hpp"

using namespace lns;

static LanguagePtr corpus_lang(const std::string& name) {
  return load_language_file(std::string(LNS_CORPUS_DIR) + "/" + name + ".lnsl");
}

TEST_CASE("terms: build, print, measure") {
  TermPtr t = parse_ground_term("(seq (act (a)) (act (b)))");
  CHECK(print_term(t) == "(seq (act (a)) (act (b)))");
  CHECK(term_size(t) == 5);
  CHECK(is_ground(t));
  CHECK(term_eq(t, parse_ground_term("(seq (act (a)) (act (b)))")));
  CHECK_FALSE(term_eq(t, parse_ground_term("(seq (act (b)) (act (a)))")));

  TermPtr u = mknode("seq", {mkvar("P1"), t});
  CHECK_FALSE(is_ground(u));
  CHECK(free_metavars(u) == std::set<std::string>{"P1"});
  CHECK(occurs("P1", u));
  CHECK_FALSE(occurs("P2", u));
  CHECK(print_term(u) == "(seq P1 (seq (act (a)) (act (b))))");
}

TEST_CASE("language files parse and round-trip through their printed form") {
  for (const char* name : {"bpa", "almostDisrupt", "disruptRules", "interruptRules",
                           "partialCCS", "synchOutput", "asynchOutput"}) {
    LanguagePtr l = corpus_lang(name);
    CHECK(l->name == std::string(name));
    Language reparsed = parse_language(print_language_file(*l));
    CHECK(same_definition(*l, reparsed));
  }
  LanguagePtr bpa = corpus_lang("bpa");
  CHECK(bpa->rules.size() == 7);
  CHECK(bpa->grammar.size() == 2);
  LanguagePtr ccs = corpus_lang("partialCCS");
  CHECK(ccs->rules.size() == 10);
}

TEST_CASE("metavariable roots: digits and primes, undeclared roots rejected") {
  Language l = parse_language("grammar\n Proc Q ::= (one Q) | (two Q Q)\n"
                              "rules\n (step Q1 Q')\n");
  CHECK(l.rules.size() == 1);
  CHECK(l.rules[0].conclusion.args[0]->is_var);
  CHECK(l.rules[0].conclusion.args[0]->name == "Q1");
  CHECK(l.rules[0].conclusion.args[1]->name == "Q'");
  CHECK_THROWS_AS(parse_language("grammar\n Proc Q ::=\nrules\n (step R1)\n"), Error);
}

TEST_CASE("grammar union appends new productions and rules, deduplicates") {
  LanguagePtr bpa = corpus_lang("bpa");
  LanguagePtr ad = corpus_lang("almostDisrupt");

  LanguagePtr u = union_languages(*bpa, *ad);
  CHECK_FALSE(u->name.has_value());
  const GrammarRule* proc = find_category(*u, "Process");
  REQUIRE(proc != nullptr);
  CHECK(proc->productions.size() == 4); // act, seq, +, |>
  CHECK(u->rules.size() == 9);

  LanguagePtr self = union_languages(*bpa, *bpa);
  CHECK(same_definition(*self, *bpa));

  // left operand first, right appended: order of rules is bpa then extras
  CHECK(rule_eq(u->rules[0], bpa->rules[0]));
  CHECK(rule_eq(u->rules[7], ad->rules[0]));
}

TEST_CASE("grammar union rejects disagreeing metavar roots") {
  Language a = parse_language("grammar\n Process P ::= (one P)\nrules\n");
  Language b = parse_language("grammar\n Process Q ::= (two Q)\nrules\n");
  CHECK_THROWS_AS(union_languages(a, b), Error);
  try {
    union_languages(a, b);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::CategoryClash);
  }
}

TEST_CASE("conformance: terms against the grammar") {
  LanguagePtr bpa = corpus_lang("bpa");
  CHECK(check_term(*bpa, "Process", parse_ground_term("(act (a))")));
  CHECK(check_term(*bpa, "Process",
                   parse_ground_term("(seq (act (a)) (+ (act (b)) (act (c))))")));
  CHECK(check_term(*bpa, "Action", parse_ground_term("(sorry)")));
  CHECK_FALSE(check_term(*bpa, "Process", parse_ground_term("(act (d))")));
  CHECK_FALSE(check_term(*bpa, "Process", parse_ground_term("(seq (act (a)))")));
  CHECK_FALSE(check_term(*bpa, "Action", parse_ground_term("(act (a))")));
  CHECK_THROWS_AS(check_term(*bpa, "Label", parse_ground_term("(a)")), Error);

  // |> only enters Process once the fragment is joined in
  LanguagePtr ad = corpus_lang("almostDisrupt");
  TermPtr prog = parse_ground_term("(|> (act (a)) (act (sorry)))");
  CHECK_FALSE(check_term(*bpa, "Process", prog));
  CHECK(check_term(*union_languages(*bpa, *ad), "Process", prog));
}

TEST_CASE("language name is display metadata, not identity") {
  LanguagePtr a = corpus_lang("bpa");
  Language b = *a;
  b.name = "other";
  CHECK(same_definition(*a, b));
  CHECK(lang_display(a) == "bpa");
  CHECK(lang_display(std::make_shared<Language>(Language{})) == "<language>");
}
