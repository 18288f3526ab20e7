#include "lns/engine.hpp"

#include <algorithm>

#include "lns/errors.hpp"

namespace lns {

const TermPtr* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  if (t->is_var) {
    if (const TermPtr* b = lookup(t->name)) return *b;
    return t;
  }
  bool changed = false;
  std::vector<TermPtr> cs;
  cs.reserve(t->children.size());
  for (const auto& c : t->children) {
    TermPtr c2 = apply(c);
    changed |= c2.get() != c.get();
    cs.push_back(std::move(c2));
  }
  if (!changed) return t;
  return mknode(t->name, std::move(cs));
}

Formula Substitution::apply(const Formula& f) const {
  Formula out;
  out.pred = f.pred;
  out.args.reserve(f.args.size());
  for (const auto& a : f.args) out.args.push_back(apply(a));
  return out;
}

namespace {

TermPtr replace_var(const TermPtr& t, const std::string& var, const TermPtr& val) {
  if (t->is_var) return t->name == var ? val : t;
  bool changed = false;
  std::vector<TermPtr> cs;
  cs.reserve(t->children.size());
  for (const auto& c : t->children) {
    TermPtr c2 = replace_var(c, var, val);
    changed |= c2.get() != c.get();
    cs.push_back(std::move(c2));
  }
  if (!changed) return t;
  return mknode(t->name, std::move(cs));
}

} // namespace

bool Substitution::bind(const std::string& var, const TermPtr& t) {
  TermPtr val = apply(t);
  if (val->is_var && val->name == var) return true; // X := X, nothing to do
  if (occurs(var, val)) return false;
  for (auto& [v, rhs] : bindings_) rhs = replace_var(rhs, var, val);
  bindings_[var] = std::move(val);
  return true;
}

Substitution Substitution::project(const std::set<std::string>& vars) const {
  Substitution out;
  for (const auto& v : vars) {
    auto it = bindings_.find(v);
    if (it != bindings_.end()) out.bindings_[v] = it->second;
  }
  return out;
}

namespace {

bool unify_into(const TermPtr& a, const TermPtr& b, Substitution& s) {
  TermPtr x = s.apply(a);
  TermPtr y = s.apply(b);
  if (x->is_var && y->is_var && x->name == y->name) return true;
  if (x->is_var) return s.bind(x->name, y);
  if (y->is_var) return s.bind(y->name, x);
  if (x->name != y->name || x->children.size() != y->children.size()) return false;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (!unify_into(x->children[i], y->children[i], s)) return false;
  return true;
}

} // namespace

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const Substitution& s) {
  Substitution out = s;
  if (!unify_into(a, b, out)) return std::nullopt;
  return out;
}

ClauseProgram compile(const LanguagePtr& lang) {
  ClauseProgram prog;
  prog.source = lang;
  prog.clauses.reserve(lang->rules.size());
  for (const auto& r : lang->rules) {
    Clause c;
    c.head = r.conclusion;
    c.body = r.premises;
    prog.index[c.head.pred].push_back(prog.clauses.size());
    prog.clauses.push_back(std::move(c));
  }
  return prog;
}

SolveStream::SolveStream(const ClauseProgram& prog, Formula goal, SearchBudget budget)
    : prog_(prog), budget_(budget) {
  for (const auto& a : goal.args) collect_metavars(a, goal_vars_);
  Node root;
  root.goals.push_back(GoalEntry{std::move(goal), 1});
  stack_.push_back(std::move(root));
}

Formula SolveStream::rename(const Formula& f, std::uint64_t tag) const {
  Formula out;
  out.pred = f.pred;
  out.args.reserve(f.args.size());
  struct Renamer {
    std::uint64_t tag;
    TermPtr walk(const TermPtr& t) {
      if (t->is_var) return mkvar("_" + std::to_string(tag) + "#" + t->name);
      std::vector<TermPtr> cs;
      cs.reserve(t->children.size());
      for (const auto& c : t->children) cs.push_back(walk(c));
      return mknode(t->name, std::move(cs));
    }
  } renamer{tag};
  for (const auto& a : f.args) out.args.push_back(renamer.walk(a));
  return out;
}

std::optional<Substitution> SolveStream::next() {
  while (!stack_.empty()) {
    Node node = std::move(stack_.back());
    stack_.pop_back();

    if (node.goals.empty()) return node.subst.project(goal_vars_);

    GoalEntry goal = std::move(node.goals.front());
    node.goals.erase(node.goals.begin());
    Formula current = node.subst.apply(goal.formula);

    auto idx = prog_.index.find(current.pred);
    if (idx == prog_.index.end()) continue;

    // Children are pushed in reverse so the first clause is expanded first.
    std::vector<Node> children;
    for (std::size_t ci : idx->second) {
      const Clause& clause = prog_.clauses[ci];
      if (clause.head.args.size() != current.args.size()) continue;
      std::uint64_t tag = fresh_++;
      Formula head = rename(clause.head, tag);
      Substitution s = node.subst;
      bool ok = true;
      for (std::size_t i = 0; i < current.args.size() && ok; ++i)
        ok = unify_into(current.args[i], head.args[i], s);
      if (!ok) continue;
      if (!clause.body.empty() && goal.depth + 1 > budget_.max_depth)
        throw Error(ErrorKind::BudgetExhausted,
                    "proof search exceeded max depth " +
                        std::to_string(budget_.max_depth));
      if (++nodes_ > budget_.max_nodes)
        throw Error(ErrorKind::BudgetExhausted,
                    "proof search exceeded max nodes " +
                        std::to_string(budget_.max_nodes));
      Node child;
      child.subst = std::move(s);
      child.goals.reserve(clause.body.size() + node.goals.size());
      for (const auto& b : clause.body)
        child.goals.push_back(GoalEntry{rename(b, tag), goal.depth + 1});
      for (const auto& g : node.goals) child.goals.push_back(g);
      children.push_back(std::move(child));
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      stack_.push_back(std::move(*it));
  }
  return std::nullopt;
}

std::vector<Substitution> solve_all(const ClauseProgram& prog, const Formula& goal,
                                    const SearchBudget& budget) {
  SolveStream stream(prog, goal, budget);
  std::vector<Substitution> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<StepAnswer> query_step(const ClauseProgram& prog, const TermPtr& t,
                                   const SearchBudget& budget,
                                   const std::string& pred) {
  Formula goal;
  goal.pred = pred;
  goal.args = {mkvar("_QL"), t, mkvar("_QT")};
  std::vector<StepAnswer> out;
  SolveStream stream(prog, goal, budget);
  while (auto s = stream.next()) {
    TermPtr label = s->apply(mkvar("_QL"));
    TermPtr target = s->apply(mkvar("_QT"));
    if (!is_ground(label) || !is_ground(target))
      throw Error(ErrorKind::NonGroundAnswer,
                  "step query for " + print_term(t) +
                      " produced a non-ground answer: label " + print_term(label) +
                      ", target " + print_term(target));
    out.push_back(StepAnswer{std::move(label), std::move(target)});
  }
  return out;
}

} // namespace lns
