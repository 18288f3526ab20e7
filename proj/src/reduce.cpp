#include "lns/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lns/errors.hpp"
#include "lns/printer.hpp"

namespace lns {

std::optional<LanStep> lan_step(const LangExprPtr& e) {
  switch (e->kind) {
  case LangExpr::Kind::Lit:
    return std::nullopt;
  case LangExpr::Kind::Var:
    throw Error(ErrorKind::Closedness,
                "language expression has unresolved variable " + e->var);
  case LangExpr::Kind::Union: {
    if (auto inner = lan_step(e->left))
      return LanStep{le_union(inner->next, e->right), inner->detail};
    if (auto inner = lan_step(e->right))
      return LanStep{le_union(e->left, inner->next), inner->detail};
    LanguagePtr merged = union_languages(*e->left->lit, *e->right->lit);
    return LanStep{le_lit(merged), "union " + lang_display(e->left->lit) + " with " +
                                       lang_display(e->right->lit)};
  }
  }
  return std::nullopt;
}

LanguagePtr lan_eval(const LangExprPtr& e, std::string* detail) {
  LangExprPtr cur = e;
  while (true) {
    auto st = lan_step(cur);
    if (!st) break;
    if (detail) {
      if (!detail->empty()) *detail += "; ";
      *detail += st->detail;
    }
    cur = st->next;
  }
  return cur->lit;
}

bool is_in_trace(const TermPtr& label, const Trace& t) {
  return std::any_of(t.begin(), t.end(),
                     [&](const TermPtr& x) { return term_eq(label, x); });
}

namespace {

const ProcessNode* node_of(const ProcessPtr& p) {
  return static_cast<const ProcessNode*>(p.get());
}

struct Agent {
  std::size_t slot; // thread index in the normal form
  int member;       // -1: the thread itself; >=0: index into its copy
  ProcessPtr proc;
};

struct Copy {
  std::vector<std::string> names; // fresh restricted names of the copy
  std::vector<ProcessPtr> members;
  std::string key; // replication identity, for unfold bounds
};

struct Offer {
  enum Kind { In, Out, LangIn, LangOut, TraceIn, TraceOut } kind;
  std::string chan;
  ProcessPtr leaf;
};

bool is_input_kind(Offer::Kind k) {
  return k == Offer::In || k == Offer::LangIn || k == Offer::TraceIn;
}

const char* offer_sort(Offer::Kind k) {
  switch (k) {
  case Offer::In:
  case Offer::Out:
    return "name";
  case Offer::LangIn:
  case Offer::LangOut:
    return "language";
  default:
    return "trace";
  }
}

void collect_offers(const ProcessPtr& p, std::vector<Offer>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PChoice>) {
          collect_offers(n.left, out);
          collect_offers(n.right, out);
        } else if constexpr (std::is_same_v<T, PInput>) {
          out.push_back({Offer::In, n.chan, p});
        } else if constexpr (std::is_same_v<T, POutput>) {
          out.push_back({Offer::Out, n.chan, p});
        } else if constexpr (std::is_same_v<T, PLangInput>) {
          out.push_back({Offer::LangIn, n.chan, p});
        } else if constexpr (std::is_same_v<T, PLangOutput>) {
          out.push_back({Offer::LangOut, n.chan, p});
        } else if constexpr (std::is_same_v<T, PTraceInput>) {
          out.push_back({Offer::TraceIn, n.chan, p});
        } else if constexpr (std::is_same_v<T, PTraceOutput>) {
          out.push_back({Offer::TraceOut, n.chan, p});
        }
      },
      static_cast<const ProcessNode&>(*p));
}

void flatten_par(const ProcessPtr& p, std::vector<ProcessPtr>& out) {
  if (auto* par = std::get_if<PPar>(node_of(p))) {
    flatten_par(par->left, out);
    flatten_par(par->right, out);
    return;
  }
  if (!std::get_if<PNil>(node_of(p))) out.push_back(p);
}

struct Reducer {
  const NormalForm& nf;
  const SearchBudget& budget;
  NuEnv env;            // display numbering: state restrictions, then copies
  int fresh_copy_ = 0;  // fresh-name counter for unfolded copies
  std::vector<Agent> agents;
  std::map<std::size_t, Copy> copies; // by slot, for replicated threads
  std::vector<Candidate> out;

  explicit Reducer(const NormalForm& n, const SearchBudget& b) : nf(n), budget(b) {
    env.next = static_cast<int>(nf.restricted.size());
    for (std::size_t i = 0; i < nf.restricted.size(); ++i)
      env.index[nf.restricted[i]] = static_cast<int>(i);
    for (std::size_t s = 0; s < nf.threads.size(); ++s) {
      if (auto* rep = std::get_if<PReplicate>(node_of(nf.threads[s]))) {
        Copy c = make_copy(rep->body);
        for (std::size_t m = 0; m < c.members.size(); ++m)
          agents.push_back({s, static_cast<int>(m), c.members[m]});
        copies.emplace(s, std::move(c));
      } else {
        agents.push_back({s, -1, nf.threads[s]});
      }
    }
  }

  std::string disp(const std::string& chan) { return print_name(chan, &env); }

  Copy make_copy(const ProcessPtr& body) {
    Copy c;
    {
      NuEnv keyenv = env;
      c.key = print_process(body, PrintMode::Key, &keyenv);
    }
    ProcessPtr q = body;
    std::vector<std::string> bound;
    while (auto* r = std::get_if<PRestrict>(node_of(q))) {
      bound.push_back(r->name);
      q = r->body;
    }
    flatten_par(q, c.members);
    for (const auto& old : bound) {
      std::string fresh = "\x01u" + std::to_string(fresh_copy_++);
      c.names.push_back(fresh);
      env.index[fresh] = env.next++;
      for (auto& m : c.members) m = subst_channel(m, fresh, old);
    }
    return c;
  }

  ProcessPtr rebuild(const std::map<std::size_t, ProcessPtr>& replaced,
                     std::set<std::size_t>& unfolded_slots) {
    std::vector<std::string> names = nf.restricted;
    std::vector<ProcessPtr> threads;
    for (std::size_t s = 0; s < nf.threads.size(); ++s) {
      bool direct_replaced = false;
      for (std::size_t a = 0; a < agents.size(); ++a) {
        if (agents[a].slot == s && agents[a].member < 0 && replaced.count(a)) {
          threads.push_back(replaced.at(a));
          direct_replaced = true;
        }
      }
      if (!direct_replaced) threads.push_back(nf.threads[s]);
      if (unfolded_slots.count(s)) {
        const Copy& c = copies.at(s);
        names.insert(names.end(), c.names.begin(), c.names.end());
        for (std::size_t m = 0; m < c.members.size(); ++m) {
          bool member_replaced = false;
          for (std::size_t a = 0; a < agents.size(); ++a) {
            if (agents[a].slot == s && agents[a].member == static_cast<int>(m) &&
                replaced.count(a)) {
              threads.push_back(replaced.at(a));
              member_replaced = true;
            }
          }
          if (!member_replaced) threads.push_back(c.members[m]);
        }
      }
    }
    ProcessPtr body = mk_nil();
    if (!threads.empty()) {
      body = threads.back();
      for (std::size_t i = threads.size() - 1; i-- > 0;) body = mk_par(threads[i], body);
    }
    for (std::size_t i = names.size(); i-- > 0;) body = mk_restrict(names[i], body);
    return body;
  }

  void push(std::map<std::size_t, ProcessPtr> replaced, std::string rule,
            std::string detail, std::optional<EmittedTrace> emitted) {
    std::set<std::size_t> unfolded;
    for (const auto& [a, q] : replaced)
      if (agents[a].member >= 0) unfolded.insert(agents[a].slot);
    Candidate c;
    c.next = normalize(rebuild(replaced, unfolded));
    c.rule = std::move(rule);
    c.detail = std::move(detail);
    c.emitted = std::move(emitted);
    for (std::size_t s : unfolded) c.repl_keys.push_back(copies.at(s).key);
    out.push_back(std::move(c));
  }

  void unary(std::size_t a) {
    const ProcessPtr& p = agents[a].proc;
    if (auto* e = std::get_if<PExec>(node_of(p))) {
      if (e->lang->kind != LangExpr::Kind::Lit) {
        auto st = lan_step(e->lang);
        PExec ne = *e;
        ne.lang = st->next;
        push({{a, mk(ne)}}, "exec-ctx",
             "exec-ctx on " + disp(e->result_chan) + ": " + st->detail, std::nullopt);
        return;
      }
      ClauseProgram prog = compile(e->lang->lit);
      auto answers = query_step(prog, e->program, budget, e->step_pred);
      if (answers.empty()) {
        Trace t = e->trace;
        ProcessPtr done = mk(PTraceOutput{e->result_chan, TraceRef{std::nullopt, t}, mk_nil()});
        push({{a, done}}, "program-end",
             "program-end on " + disp(e->result_chan) + ": trace " + print_trace_br(t),
             EmittedTrace{disp(e->result_chan), t});
        return;
      }
      std::set<std::string> seen;
      for (const auto& ans : answers) {
        std::string sig = print_term(ans.label) + "#" + print_term(ans.target);
        if (!seen.insert(sig).second) continue;
        PExec ne = *e;
        ne.program = ans.target;
        ne.trace.push_back(ans.label);
        push({{a, mk(ne)}}, "program-step",
             "program-step on " + disp(e->result_chan) + ": " + print_term(ans.label) +
                 " => " + print_term(ans.target),
             std::nullopt);
      }
      return;
    }
    if (auto* t = std::get_if<PIsInTrace>(node_of(p))) {
      if (t->trace.var)
        throw Error(ErrorKind::Closedness,
                    "trace variable " + *t->trace.var + " unresolved in trace test");
      bool in = is_in_trace(t->label, t->trace.value);
      push({{a, in ? t->then_p : t->else_p}}, in ? "is-in-trace1" : "is-in-trace2",
           print_term(t->label) + (in ? " in " : " not in ") +
               print_trace_br(t->trace.value),
           std::nullopt);
    }
  }

  void binary(std::size_t ai, std::size_t aj, const Offer& oa, const Offer& ob) {
    if (oa.chan != ob.chan) return;
    if (is_input_kind(oa.kind) == is_input_kind(ob.kind)) return;
    const Offer& in = is_input_kind(oa.kind) ? oa : ob;
    const Offer& outo = is_input_kind(oa.kind) ? ob : oa;
    std::size_t in_agent = is_input_kind(oa.kind) ? ai : aj;
    std::size_t out_agent = is_input_kind(oa.kind) ? aj : ai;
    if (offer_sort(in.kind) != std::string(offer_sort(outo.kind)))
      throw Error(ErrorKind::SortMismatch,
                  "channel " + disp(in.chan) + " carries " + offer_sort(outo.kind) +
                      " output but " + offer_sort(in.kind) + " input");
    if (in.kind == Offer::In) {
      const auto& r = std::get<PInput>(static_cast<const ProcessNode&>(*in.leaf));
      const auto& s = std::get<POutput>(static_cast<const ProcessNode&>(*outo.leaf));
      push({{in_agent, subst_channel(r.cont, s.payload, r.bound)}, {out_agent, s.cont}},
           "comm",
           "comm on " + disp(in.chan) + ": " + r.bound + " := " + disp(s.payload),
           std::nullopt);
    } else if (in.kind == Offer::LangIn) {
      const auto& r = std::get<PLangInput>(static_cast<const ProcessNode&>(*in.leaf));
      const auto& s = std::get<PLangOutput>(static_cast<const ProcessNode&>(*outo.leaf));
      std::string ldetail;
      LanguagePtr value = lan_eval(s.payload, &ldetail);
      std::string d = "comm-lang on " + disp(in.chan) + ": " + r.bound + " := " +
                      lang_display(value);
      if (!ldetail.empty()) d += " [" + ldetail + "]";
      push({{in_agent, subst_lang(r.cont, value, r.bound)}, {out_agent, s.cont}},
           "comm-lang", d, std::nullopt);
    } else {
      const auto& r = std::get<PTraceInput>(static_cast<const ProcessNode&>(*in.leaf));
      const auto& s = std::get<PTraceOutput>(static_cast<const ProcessNode&>(*outo.leaf));
      if (s.payload.var)
        throw Error(ErrorKind::Closedness,
                    "trace variable " + *s.payload.var + " unresolved in trace output");
      push({{in_agent, subst_trace(r.cont, s.payload.value, r.bound)},
            {out_agent, s.cont}},
           "comm-trace",
           "comm-trace on " + disp(in.chan) + ": " + r.bound + " := " +
               print_trace_br(s.payload.value),
           std::nullopt);
    }
  }

  std::vector<Candidate> run() {
    for (std::size_t a = 0; a < agents.size(); ++a) unary(a);
    std::vector<std::vector<Offer>> offers(agents.size());
    for (std::size_t a = 0; a < agents.size(); ++a)
      collect_offers(agents[a].proc, offers[a]);
    for (std::size_t ai = 0; ai < agents.size(); ++ai)
      for (std::size_t aj = ai + 1; aj < agents.size(); ++aj)
        for (const Offer& oa : offers[ai])
          for (const Offer& ob : offers[aj]) binary(ai, aj, oa, ob);
    return std::move(out);
  }
};

} // namespace

std::vector<Candidate> reduce_candidates(const NormalForm& nf,
                                         const SearchBudget& budget) {
  Reducer r(nf, budget);
  return r.run();
}

} // namespace lns
