#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lns {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// First-order term: either a metavariable or a constructor applied to
// children.  Nullary constructors still print with parentheses, e.g. (a),
// which keeps them distinct from metavariables.
struct Term {
  bool is_var = false;
  std::string name;              // metavar name or constructor name
  std::vector<TermPtr> children; // empty for metavars

  Term(bool v, std::string n, std::vector<TermPtr> cs)
      : is_var(v), name(std::move(n)), children(std::move(cs)) {}
};

TermPtr mkvar(std::string name);
TermPtr mknode(std::string op, std::vector<TermPtr> children = {});

bool term_eq(const TermPtr& a, const TermPtr& b);
bool is_ground(const TermPtr& t);
std::size_t term_size(const TermPtr& t); // number of constructor nodes
void collect_metavars(const TermPtr& t, std::set<std::string>& out);
std::set<std::string> free_metavars(const TermPtr& t);
bool occurs(const std::string& var, const TermPtr& t);

std::string print_term(const TermPtr& t);

} // namespace lns
