#include "lns/printer.hpp"

#include <cctype>
#include <sstream>

#include "lns/term.hpp"

namespace lns {

std::string nu_name(int idx) { return "nu" + std::to_string(idx); }

bool positional_spelling(const std::string& name) {
  if (!name.empty() && name[0] == '\x01') return true;
  if (name.size() < 3 || name.compare(0, 2, "nu") != 0) return false;
  for (std::size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

std::string print_name(const std::string& name, const NuEnv* env) {
  if (env) {
    auto it = env->index.find(name);
    if (it != env->index.end()) return nu_name(it->second);
  }
  if (!name.empty() && name[0] == '\x01') return "nu?" + name.substr(1);
  return name;
}

std::string print_trace(const Trace& t) {
  if (t.empty()) return "[]";
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += print_term(t[i]);
  }
  return out;
}

std::string print_trace_br(const Trace& t) {
  if (t.empty()) return "[]";
  std::string out = "[";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += print_term(t[i]);
  }
  return out + "]";
}

std::string print_formula(const Formula& f) {
  std::string out = "(" + f.pred;
  for (const auto& a : f.args) out += ' ' + print_term(a);
  return out + ")";
}

std::string print_rule(const Rule& r) {
  std::string out;
  for (size_t i = 0; i < r.premises.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(r.premises[i]);
  }
  if (!r.premises.empty()) out += " --- ";
  return out + print_formula(r.conclusion);
}

static std::string grammar_rule_text(const GrammarRule& g) {
  std::string out = g.category + " " + g.metavar_root + " ::=";
  for (size_t i = 0; i < g.productions.size(); ++i) {
    out += (i ? " | " : " ") + print_term(g.productions[i]);
  }
  return out;
}

std::string print_language_file(const Language& l) {
  std::ostringstream out;
  if (l.name) out << "language " << *l.name << "\n\n";
  out << "grammar\n";
  for (const auto& g : l.grammar) out << "  " << grammar_rule_text(g) << "\n";
  out << "\nrules\n";
  for (size_t i = 0; i < l.rules.size(); ++i) {
    const Rule& r = l.rules[i];
    if (i) out << "\n";
    for (size_t j = 0; j < r.premises.size(); ++j)
      out << "  " << print_formula(r.premises[j])
          << (j + 1 < r.premises.size() ? ",\n" : "\n");
    if (!r.premises.empty()) out << "  ---\n";
    out << "  " << print_formula(r.conclusion) << "\n";
  }
  return out.str();
}

std::string print_language_key(const Language& l) {
  std::string out = "g{";
  for (size_t i = 0; i < l.grammar.size(); ++i) {
    if (i) out += ';';
    out += grammar_rule_text(l.grammar[i]);
  }
  out += "}r{";
  for (size_t i = 0; i < l.rules.size(); ++i) {
    if (i) out += ';';
    out += print_rule(l.rules[i]);
  }
  return out + "}";
}

std::string lang_display(const LanguagePtr& l) {
  if (l && l->name) return *l->name;
  return "<language>";
}

std::string print_lexpr(const LangExprPtr& e, PrintMode mode, const NuEnv* env) {
  switch (e->kind) {
  case LangExpr::Kind::Var:
    return print_name(e->var, env);
  case LangExpr::Kind::Lit:
    if (mode == PrintMode::Key) return "<<" + print_language_key(*e->lit) + ">>";
    return lang_display(e->lit);
  case LangExpr::Kind::Union:
    return "union(" + print_lexpr(e->left, mode, env) + ", " +
           print_lexpr(e->right, mode, env) + ")";
  }
  return "?";
}

namespace {

struct Printer {
  PrintMode mode;
  NuEnv* env; // never null; print_process supplies a scratch one

  std::string name(const std::string& n) const { return print_name(n, env); }

  // Keys must not depend on binder spellings, so Key mode numbers every
  // binder; Display keeps source spellings except where they would collide
  // with the positional names.
  bool rename_binder(const std::string& n) const {
    return mode == PrintMode::Key || positional_spelling(n);
  }

  struct Saved {
    bool had = false;
    int old = 0;
  };

  // Bring a binder into scope and return the spelling to print.  A binder
  // kept under its source name shadows any positional entry it collides with.
  std::string enter(const std::string& n, bool rename, Saved& s) {
    auto it = env->index.find(n);
    s.had = it != env->index.end();
    if (s.had) s.old = it->second;
    if (rename) {
      int idx = env->next++;
      env->index[n] = idx;
      return nu_name(idx);
    }
    if (s.had) env->index.erase(it);
    return n;
  }
  void leave(const std::string& n, const Saved& s) {
    if (s.had)
      env->index[n] = s.old;
    else
      env->index.erase(n);
  }

  std::string traceref(const TraceRef& t) const {
    if (t.var) return print_name(*t.var, env);
    return print_trace_br(t.value);
  }

  // Shared shape of x(y).P, recvlang x(l).P and recvtrace x(t).P.  The channel
  // prints before the binder enters scope.
  std::string input_like(const char* kw, const std::string& chan,
                         const std::string& bound, const ProcessPtr& cont) {
    std::string head = name(chan);
    Saved s;
    std::string b = enter(bound, rename_binder(bound), s);
    std::string body = atom(cont);
    leave(bound, s);
    return std::string(kw) + head + "(" + b + ")." + body;
  }

  // Precedence: par < choice < prefix/atom.  '|' and '+' associate to the
  // right; left-nested occurrences keep explicit parentheses so the text
  // parses back to the same tree.
  static const ProcessNode* node(const ProcessPtr& p) {
    return static_cast<const ProcessNode*>(p.get());
  }

  std::string par(const ProcessPtr& p) {
    if (auto* n = std::get_if<PPar>(node(p))) {
      return choice(n->left) + " | " + par(n->right);
    }
    return choice(p);
  }

  std::string choice(const ProcessPtr& p) {
    if (std::get_if<PPar>(node(p))) return "(" + par(p) + ")";
    if (auto* n = std::get_if<PChoice>(node(p))) {
      return atom(n->left) + " + " + choice(n->right);
    }
    return atom(p);
  }

  std::string atom(const ProcessPtr& p) {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PNil>) {
            return "0";
          } else if constexpr (std::is_same_v<T, PInput>) {
            return input_like("", n.chan, n.bound, n.cont);
          } else if constexpr (std::is_same_v<T, POutput>) {
            return "send " + name(n.chan) + "<" + name(n.payload) + ">." + atom(n.cont);
          } else if constexpr (std::is_same_v<T, PLangInput>) {
            return input_like("recvlang ", n.chan, n.bound, n.cont);
          } else if constexpr (std::is_same_v<T, PLangOutput>) {
            return "sendlang " + name(n.chan) + "<" + print_lexpr(n.payload, mode, env) +
                   ">." + atom(n.cont);
          } else if constexpr (std::is_same_v<T, PTraceInput>) {
            return input_like("recvtrace ", n.chan, n.bound, n.cont);
          } else if constexpr (std::is_same_v<T, PTraceOutput>) {
            return "sendtrace " + name(n.chan) + "<" + traceref(n.payload) + ">." + atom(n.cont);
          } else if constexpr (std::is_same_v<T, PPar>) {
            return "(" + par(p) + ")";
          } else if constexpr (std::is_same_v<T, PChoice>) {
            return "(" + par(p) + ")";
          } else if constexpr (std::is_same_v<T, PRestrict>) {
            Saved s;
            std::string b = enter(n.name, true, s);
            std::string body = atom(n.body);
            leave(n.name, s);
            return "new " + b + "." + body;
          } else if constexpr (std::is_same_v<T, PReplicate>) {
            return "!" + atom(n.body);
          } else if constexpr (std::is_same_v<T, PExec>) {
            std::string out =
                "exec(" + print_lexpr(n.lang, mode, env) + ", " + name(n.result_chan) + ", " +
                print_term(n.program);
            if (n.step_pred != "-->") out += ", " + n.step_pred;
            if (!n.trace.empty()) out += ", " + print_trace_br(n.trace);
            return out + ")";
          } else if constexpr (std::is_same_v<T, PIsInTrace>) {
            return "if " + print_term(n.label) + " in " + traceref(n.trace) + " then " +
                   atom(n.then_p) + " else " + atom(n.else_p);
          } else {
            return "?";
          }
        },
        static_cast<const ProcessNode&>(*p));
  }
};

} // namespace

std::string print_process(const ProcessPtr& p, PrintMode mode, NuEnv* env) {
  NuEnv scratch;
  Printer pr{mode, env ? env : &scratch};
  return pr.par(p);
}

} // namespace lns
