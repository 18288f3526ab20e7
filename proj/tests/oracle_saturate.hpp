#pragma once

// Bottom-up derivation oracle.  Saturates the set of ground facts derivable
// from a language's rules, working upward from axiom instances: each round
// matches rule premises against already-derived facts by plain ground
// matching (no unification, no backtracking, no sharing with the engine's
// search) and records the instantiated conclusion.
//
// To stay finite the saturation is restricted to facts whose "source"
// argument lies in the subterm closure of the queried term.  That is sound
// and complete for the example languages because every rule's premises talk
// about proper subterms of its conclusion's source.  Source positions here:
// argument 2 of --> and argument 2 of checkMark (1-based).

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lns/language.hpp"
#include "lns/term.hpp"

namespace oracle {

using lns::Formula;
using lns::Language;
using lns::Rule;
using lns::TermPtr;

struct SatFact {
  std::string pred;
  std::vector<TermPtr> args;
  int depth = 1;
};

class Saturator {
public:
  Saturator(const Language& lang, const TermPtr& goal_term, int max_depth)
      : lang_(lang), max_depth_(max_depth) {
    add_subterms(goal_term);
    source_pos_["-->"] = 1;
    source_pos_["checkMark"] = 1;
    saturate();
  }

  // (label, target) pairs for  goal_term's  subterm t under pred.
  std::vector<std::pair<TermPtr, TermPtr>> step_answers(const TermPtr& t,
                                                        const std::string& pred) const {
    std::vector<std::pair<TermPtr, TermPtr>> out;
    for (const auto& [key, f] : facts_) {
      (void)key;
      if (f.pred == pred && f.args.size() == 3 && lns::term_eq(f.args[1], t))
        out.emplace_back(f.args[0], f.args[2]);
    }
    return out;
  }

  std::size_t fact_count() const { return facts_.size(); }

private:
  const Language& lang_;
  int max_depth_;
  std::map<std::string, TermPtr> universe_;         // subterm closure, by print
  std::map<std::string, SatFact> facts_;            // by printed formula
  std::map<std::string, std::size_t> source_pos_;   // pred -> source arg index

  void add_subterms(const TermPtr& t) {
    universe_.emplace(lns::print_term(t), t);
    for (const auto& c : t->children) add_subterms(c);
  }

  static bool match(const TermPtr& pat, const TermPtr& g,
                    std::map<std::string, TermPtr>& b) {
    if (pat->is_var) {
      auto it = b.find(pat->name);
      if (it != b.end()) return lns::term_eq(it->second, g);
      b[pat->name] = g;
      return true;
    }
    if (g->is_var) return false;
    if (pat->name != g->name || pat->children.size() != g->children.size())
      return false;
    for (std::size_t i = 0; i < pat->children.size(); ++i)
      if (!match(pat->children[i], g->children[i], b)) return false;
    return true;
  }

  static TermPtr instantiate(const TermPtr& pat,
                             const std::map<std::string, TermPtr>& b) {
    if (pat->is_var) {
      auto it = b.find(pat->name);
      return it == b.end() ? nullptr : it->second;
    }
    std::vector<TermPtr> cs;
    cs.reserve(pat->children.size());
    for (const auto& c : pat->children) {
      auto g = instantiate(c, b);
      if (!g) return nullptr;
      cs.push_back(g);
    }
    return lns::mknode(pat->name, std::move(cs));
  }

  static std::string fact_key(const std::string& pred,
                              const std::vector<TermPtr>& args) {
    std::string s = pred;
    for (const auto& a : args) {
      s += ' ';
      s += lns::print_term(a);
    }
    return s;
  }

  bool source_in_universe(const std::string& pred,
                          const std::vector<TermPtr>& args) const {
    auto it = source_pos_.find(pred);
    if (it == source_pos_.end()) return true; // unknown predicate: keep
    if (it->second >= args.size()) return true;
    return universe_.count(lns::print_term(args[it->second])) > 0;
  }

  void emit(const Rule& r, std::map<std::string, TermPtr>& b, int depth,
            std::vector<SatFact>& fresh) {
    // enumerate conclusion-only metavars over the universe
    std::set<std::string> head_vars;
    for (const auto& a : r.conclusion.args) lns::collect_metavars(a, head_vars);
    std::vector<std::string> unbound;
    for (const auto& v : head_vars)
      if (!b.count(v)) unbound.push_back(v);

    // odometer over universe_ for each unbound var
    std::vector<std::string> keys;
    for (const auto& [k, t] : universe_) {
      (void)t;
      keys.push_back(k);
    }
    std::vector<std::size_t> idx(unbound.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < unbound.size(); ++i)
        b[unbound[i]] = universe_.at(keys[idx[i]]);
      std::vector<TermPtr> args;
      bool ok = true;
      for (const auto& a : r.conclusion.args) {
        auto g = instantiate(a, b);
        if (!g || !lns::is_ground(g)) { ok = false; break; }
        args.push_back(g);
      }
      if (ok && source_in_universe(r.conclusion.pred, args))
        fresh.push_back(SatFact{r.conclusion.pred, std::move(args), depth});
      if (unbound.empty()) break;
      std::size_t i = 0;
      while (i < unbound.size() && ++idx[i] == keys.size()) { idx[i] = 0; ++i; }
      if (i == unbound.size()) break;
    }
    for (const auto& v : unbound) b.erase(v);
  }

  void match_premises(const Rule& r, std::size_t pi, std::map<std::string, TermPtr>& b,
                      int max_premise_depth, int round, std::vector<SatFact>& fresh) {
    if (pi == r.premises.size()) {
      emit(r, b, round, fresh);
      return;
    }
    const Formula& prem = r.premises[pi];
    for (const auto& [key, f] : facts_) {
      (void)key;
      if (f.pred != prem.pred || f.args.size() != prem.args.size()) continue;
      if (f.depth > max_premise_depth) continue;
      auto saved = b;
      bool ok = true;
      for (std::size_t i = 0; i < prem.args.size() && ok; ++i)
        ok = match(prem.args[i], f.args[i], b);
      if (ok) match_premises(r, pi + 1, b, max_premise_depth, round, fresh);
      b = saved;
    }
  }

  void saturate() {
    for (int round = 1; round <= max_depth_; ++round) {
      std::vector<SatFact> fresh;
      for (const auto& r : lang_.rules) {
        std::map<std::string, TermPtr> b;
        match_premises(r, 0, b, round - 1, round, fresh);
      }
      bool grew = false;
      for (auto& f : fresh) {
        auto key = fact_key(f.pred, f.args);
        if (!facts_.count(key)) {
          facts_.emplace(key, std::move(f));
          grew = true;
        }
      }
      if (!grew) break;
    }
  }
};

} // namespace oracle
