#include "lns/language.hpp"

#include "lns/errors.hpp"

namespace lns {

bool formula_eq(const Formula& a, const Formula& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!term_eq(a.args[i], b.args[i])) return false;
  return true;
}

bool rule_eq(const Rule& a, const Rule& b) {
  if (a.premises.size() != b.premises.size()) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!formula_eq(a.premises[i], b.premises[i])) return false;
  return formula_eq(a.conclusion, b.conclusion);
}

bool grammar_rule_eq(const GrammarRule& a, const GrammarRule& b) {
  if (a.category != b.category || a.metavar_root != b.metavar_root) return false;
  if (a.productions.size() != b.productions.size()) return false;
  for (std::size_t i = 0; i < a.productions.size(); ++i)
    if (!term_eq(a.productions[i], b.productions[i])) return false;
  return true;
}

bool same_definition(const Language& a, const Language& b) {
  if (a.grammar.size() != b.grammar.size() || a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.grammar.size(); ++i)
    if (!grammar_rule_eq(a.grammar[i], b.grammar[i])) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (!rule_eq(a.rules[i], b.rules[i])) return false;
  return true;
}

const GrammarRule* find_category(const Language& l, const std::string& category) {
  for (const auto& g : l.grammar)
    if (g.category == category) return &g;
  return nullptr;
}

std::map<std::string, std::string> root_categories(const Language& l) {
  std::map<std::string, std::string> m;
  for (const auto& g : l.grammar) m[g.metavar_root] = g.category;
  return m;
}

LanguagePtr union_languages(const Language& a, const Language& b) {
  Language out;
  out.grammar = a.grammar;
  for (const auto& gb : b.grammar) {
    GrammarRule* shared = nullptr;
    for (auto& ga : out.grammar)
      if (ga.category == gb.category) { shared = &ga; break; }
    if (!shared) {
      out.grammar.push_back(gb);
      continue;
    }
    if (shared->metavar_root != gb.metavar_root)
      throw Error(ErrorKind::CategoryClash,
                  "category " + gb.category + " uses metavar root " +
                      shared->metavar_root + " on one side and " + gb.metavar_root +
                      " on the other");
    for (const auto& p : gb.productions) {
      bool dup = false;
      for (const auto& q : shared->productions)
        if (term_eq(p, q)) { dup = true; break; }
      if (!dup) shared->productions.push_back(p);
    }
  }
  out.rules = a.rules;
  for (const auto& rb : b.rules) {
    bool dup = false;
    for (const auto& ra : out.rules)
      if (rule_eq(ra, rb)) { dup = true; break; }
    if (!dup) out.rules.push_back(rb);
  }
  out.name = std::nullopt;
  return std::make_shared<Language>(std::move(out));
}

namespace {

bool conforms(const Language& l, const std::map<std::string, std::string>& roots,
              const std::string& category, const TermPtr& t);

// Does ground term t fit production pattern p?  Metavars in p are holes of
// the category owning their root.
bool fits(const Language& l, const std::map<std::string, std::string>& roots,
          const TermPtr& p, const TermPtr& t) {
  if (p->is_var) {
    auto it = roots.find(p->name);
    // A root with no declared category cannot be checked; treat the hole as
    // unconstrained only if the grammar never declares it (defensive; parsed
    // languages always declare roots).
    if (it == roots.end()) return true;
    return conforms(l, roots, it->second, t);
  }
  if (t->is_var) return false;
  if (p->name != t->name || p->children.size() != t->children.size()) return false;
  for (std::size_t i = 0; i < p->children.size(); ++i)
    if (!fits(l, roots, p->children[i], t->children[i])) return false;
  return true;
}

bool conforms(const Language& l, const std::map<std::string, std::string>& roots,
              const std::string& category, const TermPtr& t) {
  const GrammarRule* g = find_category(l, category);
  if (!g)
    throw Error(ErrorKind::UnknownCategory, "no category " + category + " in grammar");
  for (const auto& p : g->productions)
    if (fits(l, roots, p, t)) return true;
  return false;
}

} // namespace

bool check_term(const Language& l, const std::string& category, const TermPtr& t) {
  return conforms(l, root_categories(l), category, t);
}

LangExprPtr le_var(std::string name) {
  auto e = std::make_shared<LangExpr>();
  e->kind = LangExpr::Kind::Var;
  e->var = std::move(name);
  return e;
}

LangExprPtr le_lit(LanguagePtr l) {
  auto e = std::make_shared<LangExpr>();
  e->kind = LangExpr::Kind::Lit;
  e->lit = std::move(l);
  return e;
}

LangExprPtr le_union(LangExprPtr a, LangExprPtr b) {
  auto e = std::make_shared<LangExpr>();
  e->kind = LangExpr::Kind::Union;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

} // namespace lns
