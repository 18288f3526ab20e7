#include "lns/term.hpp"

namespace lns {

TermPtr mkvar(std::string name) {
  return std::make_shared<Term>(true, std::move(name), std::vector<TermPtr>{});
}

TermPtr mknode(std::string op, std::vector<TermPtr> children) {
  return std::make_shared<Term>(false, std::move(op), std::move(children));
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_var != b->is_var || a->name != b->name) return false;
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!term_eq(a->children[i], b->children[i])) return false;
  return true;
}

bool is_ground(const TermPtr& t) {
  if (t->is_var) return false;
  for (const auto& c : t->children)
    if (!is_ground(c)) return false;
  return true;
}

std::size_t term_size(const TermPtr& t) {
  if (t->is_var) return 0;
  std::size_t n = 1;
  for (const auto& c : t->children) n += term_size(c);
  return n;
}

void collect_metavars(const TermPtr& t, std::set<std::string>& out) {
  if (t->is_var) {
    out.insert(t->name);
    return;
  }
  for (const auto& c : t->children) collect_metavars(c, out);
}

std::set<std::string> free_metavars(const TermPtr& t) {
  std::set<std::string> out;
  collect_metavars(t, out);
  return out;
}

bool occurs(const std::string& var, const TermPtr& t) {
  if (t->is_var) return t->name == var;
  for (const auto& c : t->children)
    if (occurs(var, c)) return true;
  return false;
}

std::string print_term(const TermPtr& t) {
  if (t->is_var) return t->name;
  std::string s = "(" + t->name;
  for (const auto& c : t->children) {
    s += ' ';
    s += print_term(c);
  }
  s += ')';
  return s;
}

} // namespace lns
