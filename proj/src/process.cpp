#include "lns/process.hpp"

namespace lns {

ProcessPtr mk_nil() { return mk(PNil{}); }
ProcessPtr mk_par(ProcessPtr a, ProcessPtr b) { return mk(PPar{std::move(a), std::move(b)}); }
ProcessPtr mk_restrict(std::string name, ProcessPtr body) {
  return mk(PRestrict{std::move(name), std::move(body)});
}

bool trace_eq(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!term_eq(a[i], b[i])) return false;
  return true;
}

namespace {

void lexpr_vars(const LangExprPtr& e, std::set<std::string>& out) {
  switch (e->kind) {
    case LangExpr::Kind::Var: out.insert(e->var); break;
    case LangExpr::Kind::Lit: break;
    case LangExpr::Kind::Union:
      lexpr_vars(e->left, out);
      lexpr_vars(e->right, out);
      break;
  }
}

struct FreeNames {
  std::set<std::string> chans, langs, traces;
};

void collect_free(const ProcessPtr& p, FreeNames& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PNil>) {
        } else if constexpr (std::is_same_v<T, PInput>) {
          out.chans.insert(n.chan);
          FreeNames inner;
          collect_free(n.cont, inner);
          inner.chans.erase(n.bound);
          out.chans.insert(inner.chans.begin(), inner.chans.end());
          out.langs.insert(inner.langs.begin(), inner.langs.end());
          out.traces.insert(inner.traces.begin(), inner.traces.end());
        } else if constexpr (std::is_same_v<T, POutput>) {
          out.chans.insert(n.chan);
          out.chans.insert(n.payload);
          collect_free(n.cont, out);
        } else if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PChoice>) {
          collect_free(n.left, out);
          collect_free(n.right, out);
        } else if constexpr (std::is_same_v<T, PRestrict>) {
          FreeNames inner;
          collect_free(n.body, inner);
          inner.chans.erase(n.name);
          out.chans.insert(inner.chans.begin(), inner.chans.end());
          out.langs.insert(inner.langs.begin(), inner.langs.end());
          out.traces.insert(inner.traces.begin(), inner.traces.end());
        } else if constexpr (std::is_same_v<T, PReplicate>) {
          collect_free(n.body, out);
        } else if constexpr (std::is_same_v<T, PExec>) {
          out.chans.insert(n.result_chan);
          lexpr_vars(n.lang, out.langs);
        } else if constexpr (std::is_same_v<T, PIsInTrace>) {
          if (n.trace.var) out.traces.insert(*n.trace.var);
          collect_free(n.then_p, out);
          collect_free(n.else_p, out);
        } else if constexpr (std::is_same_v<T, PLangInput>) {
          out.chans.insert(n.chan);
          FreeNames inner;
          collect_free(n.cont, inner);
          inner.langs.erase(n.bound);
          out.chans.insert(inner.chans.begin(), inner.chans.end());
          out.langs.insert(inner.langs.begin(), inner.langs.end());
          out.traces.insert(inner.traces.begin(), inner.traces.end());
        } else if constexpr (std::is_same_v<T, PLangOutput>) {
          out.chans.insert(n.chan);
          lexpr_vars(n.payload, out.langs);
          collect_free(n.cont, out);
        } else if constexpr (std::is_same_v<T, PTraceInput>) {
          out.chans.insert(n.chan);
          FreeNames inner;
          collect_free(n.cont, inner);
          inner.traces.erase(n.bound);
          out.chans.insert(inner.chans.begin(), inner.chans.end());
          out.langs.insert(inner.langs.begin(), inner.langs.end());
          out.traces.insert(inner.traces.begin(), inner.traces.end());
        } else if constexpr (std::is_same_v<T, PTraceOutput>) {
          out.chans.insert(n.chan);
          if (n.payload.var) out.traces.insert(*n.payload.var);
          collect_free(n.cont, out);
        }
      },
      static_cast<const ProcessNode&>(*p));
}

} // namespace

std::set<std::string> free_channels(const ProcessPtr& p) {
  FreeNames f;
  collect_free(p, f);
  return f.chans;
}

std::set<std::string> free_lang_vars(const ProcessPtr& p) {
  FreeNames f;
  collect_free(p, f);
  return f.langs;
}

std::set<std::string> free_trace_vars(const ProcessPtr& p) {
  FreeNames f;
  collect_free(p, f);
  return f.traces;
}

namespace {

std::string pick_fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

std::string chan_subst(const std::string& name, const std::string& z,
                       const std::string& y) {
  return name == y ? z : name;
}

// Channel substitution with on-the-fly alpha renaming: when a binder equals z
// (the incoming name) and y occurs free underneath, the binder is renamed so
// the substituted occurrences cannot be captured.
ProcessPtr do_subst_channel(const ProcessPtr& p, const std::string& z,
                            const std::string& y);

template <typename Node>
ProcessPtr subst_under_chan_binder(Node n, const std::string& z, const std::string& y) {
  n.chan = chan_subst(n.chan, z, y);
  if (n.bound == y) return mk(std::move(n)); // y rebound: stop
  if (n.bound == z && free_channels(n.cont).count(y)) {
    std::set<std::string> avoid = free_channels(n.cont);
    avoid.insert(y);
    avoid.insert(z);
    std::string fresh = pick_fresh(n.bound, avoid);
    n.cont = do_subst_channel(n.cont, fresh, n.bound);
    n.bound = fresh;
  }
  n.cont = do_subst_channel(n.cont, z, y);
  return mk(std::move(n));
}

LangExprPtr lexpr_subst_lang(const LangExprPtr& e, const LanguagePtr& value,
                             const std::string& var) {
  switch (e->kind) {
    case LangExpr::Kind::Var:
      return e->var == var ? le_lit(value) : e;
    case LangExpr::Kind::Lit:
      return e;
    case LangExpr::Kind::Union:
      return le_union(lexpr_subst_lang(e->left, value, var),
                      lexpr_subst_lang(e->right, value, var));
  }
  return e;
}

ProcessPtr do_subst_channel(const ProcessPtr& p, const std::string& z,
                            const std::string& y) {
  if (z == y) return p;
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PInput>) {
          return subst_under_chan_binder(n, z, y);
        } else if constexpr (std::is_same_v<T, POutput>) {
          POutput o = n;
          o.chan = chan_subst(o.chan, z, y);
          o.payload = chan_subst(o.payload, z, y);
          o.cont = do_subst_channel(o.cont, z, y);
          return mk(std::move(o));
        } else if constexpr (std::is_same_v<T, PPar>) {
          return mk(PPar{do_subst_channel(n.left, z, y), do_subst_channel(n.right, z, y)});
        } else if constexpr (std::is_same_v<T, PChoice>) {
          return mk(PChoice{do_subst_channel(n.left, z, y), do_subst_channel(n.right, z, y)});
        } else if constexpr (std::is_same_v<T, PRestrict>) {
          PRestrict r = n;
          if (r.name == y) return p; // y bound here: nothing free below
          if (r.name == z && free_channels(r.body).count(y)) {
            std::set<std::string> avoid = free_channels(r.body);
            avoid.insert(y);
            avoid.insert(z);
            std::string fresh = pick_fresh(r.name, avoid);
            r.body = do_subst_channel(r.body, fresh, r.name);
            r.name = fresh;
          }
          r.body = do_subst_channel(r.body, z, y);
          return mk(std::move(r));
        } else if constexpr (std::is_same_v<T, PReplicate>) {
          return mk(PReplicate{do_subst_channel(n.body, z, y)});
        } else if constexpr (std::is_same_v<T, PExec>) {
          PExec e = n;
          e.result_chan = chan_subst(e.result_chan, z, y);
          return mk(std::move(e));
        } else if constexpr (std::is_same_v<T, PIsInTrace>) {
          PIsInTrace i = n;
          i.then_p = do_subst_channel(i.then_p, z, y);
          i.else_p = do_subst_channel(i.else_p, z, y);
          return mk(std::move(i));
        } else if constexpr (std::is_same_v<T, PLangInput>) {
          PLangInput l = n;
          l.chan = chan_subst(l.chan, z, y);
          l.cont = do_subst_channel(l.cont, z, y);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PLangOutput>) {
          PLangOutput l = n;
          l.chan = chan_subst(l.chan, z, y);
          l.cont = do_subst_channel(l.cont, z, y);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PTraceInput>) {
          PTraceInput t = n;
          t.chan = chan_subst(t.chan, z, y);
          t.cont = do_subst_channel(t.cont, z, y);
          return mk(std::move(t));
        } else if constexpr (std::is_same_v<T, PTraceOutput>) {
          PTraceOutput t = n;
          t.chan = chan_subst(t.chan, z, y);
          t.cont = do_subst_channel(t.cont, z, y);
          return mk(std::move(t));
        }
      },
      static_cast<const ProcessNode&>(*p));
}

} // namespace

ProcessPtr subst_channel(const ProcessPtr& p, const std::string& z,
                         const std::string& y) {
  return do_subst_channel(p, z, y);
}

ProcessPtr subst_lang(const ProcessPtr& p, const LanguagePtr& value,
                      const std::string& var) {
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PInput>) {
          PInput i = n;
          i.cont = subst_lang(i.cont, value, var);
          return mk(std::move(i));
        } else if constexpr (std::is_same_v<T, POutput>) {
          POutput o = n;
          o.cont = subst_lang(o.cont, value, var);
          return mk(std::move(o));
        } else if constexpr (std::is_same_v<T, PPar>) {
          return mk(PPar{subst_lang(n.left, value, var), subst_lang(n.right, value, var)});
        } else if constexpr (std::is_same_v<T, PChoice>) {
          return mk(PChoice{subst_lang(n.left, value, var), subst_lang(n.right, value, var)});
        } else if constexpr (std::is_same_v<T, PRestrict>) {
          return mk(PRestrict{n.name, subst_lang(n.body, value, var)});
        } else if constexpr (std::is_same_v<T, PReplicate>) {
          return mk(PReplicate{subst_lang(n.body, value, var)});
        } else if constexpr (std::is_same_v<T, PExec>) {
          PExec e = n;
          e.lang = lexpr_subst_lang(e.lang, value, var);
          return mk(std::move(e));
        } else if constexpr (std::is_same_v<T, PIsInTrace>) {
          PIsInTrace i = n;
          i.then_p = subst_lang(i.then_p, value, var);
          i.else_p = subst_lang(i.else_p, value, var);
          return mk(std::move(i));
        } else if constexpr (std::is_same_v<T, PLangInput>) {
          if (n.bound == var) return p; // shadowed
          PLangInput l = n;
          l.cont = subst_lang(l.cont, value, var);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PLangOutput>) {
          PLangOutput l = n;
          l.payload = lexpr_subst_lang(l.payload, value, var);
          l.cont = subst_lang(l.cont, value, var);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PTraceInput>) {
          PTraceInput t = n;
          t.cont = subst_lang(t.cont, value, var);
          return mk(std::move(t));
        } else if constexpr (std::is_same_v<T, PTraceOutput>) {
          PTraceOutput t = n;
          t.cont = subst_lang(t.cont, value, var);
          return mk(std::move(t));
        }
      },
      static_cast<const ProcessNode&>(*p));
}

namespace {

TraceRef traceref_subst(const TraceRef& r, const Trace& value, const std::string& var) {
  if (r.var && *r.var == var) return TraceRef{std::nullopt, value};
  return r;
}

} // namespace

ProcessPtr subst_trace(const ProcessPtr& p, const Trace& value,
                       const std::string& var) {
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PInput>) {
          PInput i = n;
          i.cont = subst_trace(i.cont, value, var);
          return mk(std::move(i));
        } else if constexpr (std::is_same_v<T, POutput>) {
          POutput o = n;
          o.cont = subst_trace(o.cont, value, var);
          return mk(std::move(o));
        } else if constexpr (std::is_same_v<T, PPar>) {
          return mk(PPar{subst_trace(n.left, value, var), subst_trace(n.right, value, var)});
        } else if constexpr (std::is_same_v<T, PChoice>) {
          return mk(PChoice{subst_trace(n.left, value, var), subst_trace(n.right, value, var)});
        } else if constexpr (std::is_same_v<T, PRestrict>) {
          return mk(PRestrict{n.name, subst_trace(n.body, value, var)});
        } else if constexpr (std::is_same_v<T, PReplicate>) {
          return mk(PReplicate{subst_trace(n.body, value, var)});
        } else if constexpr (std::is_same_v<T, PExec>) {
          return p;
        } else if constexpr (std::is_same_v<T, PIsInTrace>) {
          PIsInTrace i = n;
          i.trace = traceref_subst(i.trace, value, var);
          i.then_p = subst_trace(i.then_p, value, var);
          i.else_p = subst_trace(i.else_p, value, var);
          return mk(std::move(i));
        } else if constexpr (std::is_same_v<T, PLangInput>) {
          PLangInput l = n;
          l.cont = subst_trace(l.cont, value, var);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PLangOutput>) {
          PLangOutput l = n;
          l.cont = subst_trace(l.cont, value, var);
          return mk(std::move(l));
        } else if constexpr (std::is_same_v<T, PTraceInput>) {
          if (n.bound == var) return p; // shadowed
          PTraceInput t = n;
          t.cont = subst_trace(t.cont, value, var);
          return mk(std::move(t));
        } else if constexpr (std::is_same_v<T, PTraceOutput>) {
          PTraceOutput t = n;
          t.payload = traceref_subst(t.payload, value, var);
          t.cont = subst_trace(t.cont, value, var);
          return mk(std::move(t));
        }
      },
      static_cast<const ProcessNode&>(*p));
}

} // namespace lns
