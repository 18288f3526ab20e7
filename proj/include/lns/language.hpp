#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lns/term.hpp"

namespace lns {

// Atomic statement (pn t1 ... tn).
struct Formula {
  std::string pred;
  std::vector<TermPtr> args;
};

// Inference rule: conclusion derivable from premises; axioms have none.
struct Rule {
  std::vector<Formula> premises;
  Formula conclusion;
};

// One category of the grammar: `category root ::= p1 | ... | pn`.
// The production list may be empty: rules-only fragments still need to
// declare the category each metavar root ranges over.
struct GrammarRule {
  std::string category;
  std::string metavar_root;
  std::vector<TermPtr> productions;
};

struct Language;
using LanguagePtr = std::shared_ptr<const Language>;

struct Language {
  std::vector<GrammarRule> grammar;
  std::vector<Rule> rules;
  std::optional<std::string> name; // display only; never part of comparisons
};

bool formula_eq(const Formula& a, const Formula& b);
bool rule_eq(const Rule& a, const Rule& b);
bool grammar_rule_eq(const GrammarRule& a, const GrammarRule& b);
bool same_definition(const Language& a, const Language& b); // grammar + rules

const GrammarRule* find_category(const Language& l, const std::string& category);
// metavar root -> category name, e.g. "P" -> "Process"
std::map<std::string, std::string> root_categories(const Language& l);

// Grammar-directed union: left operand's categories and rules first, the
// right operand's productions/rules appended with exact duplicates dropped.
// Throws CategoryClash when a shared category disagrees on its metavar root.
LanguagePtr union_languages(const Language& a, const Language& b);

// True iff t is generated by `category`, treating each metavar inside a
// production as a hole of the category that owns its root.
// Throws UnknownCategory if the grammar lacks the category.
bool check_term(const Language& l, const std::string& category, const TermPtr& t);

// Expression layer over language values: a script-level name, a literal, or
// a pending union.
struct LangExpr;
using LangExprPtr = std::shared_ptr<const LangExpr>;

struct LangExpr {
  enum class Kind { Var, Lit, Union };
  Kind kind;
  std::string var;         // Kind::Var
  LanguagePtr lit;         // Kind::Lit
  LangExprPtr left, right; // Kind::Union
};

LangExprPtr le_var(std::string name);
LangExprPtr le_lit(LanguagePtr l);
LangExprPtr le_union(LangExprPtr a, LangExprPtr b);

} // namespace lns
