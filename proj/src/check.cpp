#include "lns/check.hpp"

#include <map>
#include <set>

#include "lns/printer.hpp"
#include "lns/reduce.hpp"

namespace lns {

namespace {

struct Checker {
  std::vector<Diagnostic> out;
  int fresh_ = 0;
  std::map<std::string, std::string> chan_sort; // uniquified name -> sort

  std::string fresh(const std::string& base) {
    return base + "%" + std::to_string(fresh_++);
  }

  void use_chan(const std::string& chan, const char* sort) {
    auto [it, fresh_entry] = chan_sort.emplace(chan, sort);
    if (!fresh_entry && it->second != sort) {
      std::string shown = chan.substr(0, chan.find('%'));
      out.push_back({"channel '" + shown + "' carries " + it->second +
                     " payloads in one place and " + sort + " payloads in another"});
    }
  }

  bool lexpr_closed(const LangExprPtr& e) {
    switch (e->kind) {
    case LangExpr::Kind::Var:
      return false;
    case LangExpr::Kind::Lit:
      return true;
    case LangExpr::Kind::Union:
      return lexpr_closed(e->left) && lexpr_closed(e->right);
    }
    return true;
  }

  void walk(const ProcessPtr& p) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PInput>) {
            use_chan(n.chan, "name");
            std::string f = fresh(n.bound);
            walk(subst_channel(n.cont, f, n.bound));
          } else if constexpr (std::is_same_v<T, POutput>) {
            use_chan(n.chan, "name");
            walk(n.cont);
          } else if constexpr (std::is_same_v<T, PLangInput>) {
            use_chan(n.chan, "language");
            walk(n.cont);
          } else if constexpr (std::is_same_v<T, PLangOutput>) {
            use_chan(n.chan, "language");
            walk(n.cont);
          } else if constexpr (std::is_same_v<T, PTraceInput>) {
            use_chan(n.chan, "trace");
            walk(n.cont);
          } else if constexpr (std::is_same_v<T, PTraceOutput>) {
            use_chan(n.chan, "trace");
            walk(n.cont);
          } else if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PChoice>) {
            walk(n.left);
            walk(n.right);
          } else if constexpr (std::is_same_v<T, PRestrict>) {
            std::string f = fresh(n.name);
            walk(subst_channel(n.body, f, n.name));
          } else if constexpr (std::is_same_v<T, PReplicate>) {
            walk(n.body);
          } else if constexpr (std::is_same_v<T, PExec>) {
            use_chan(n.result_chan, "trace");
            if (lexpr_closed(n.lang)) {
              LanguagePtr l = lan_eval(n.lang, nullptr);
              bool ok = false;
              for (const auto& g : l->grammar) {
                if (check_term(*l, g.category, n.program)) {
                  ok = true;
                  break;
                }
              }
              if (!ok)
                out.push_back({"exec program " + print_term(n.program) +
                               " is not generated by any category of " +
                               lang_display(l)});
            }
          } else if constexpr (std::is_same_v<T, PIsInTrace>) {
            walk(n.then_p);
            walk(n.else_p);
          }
        },
        static_cast<const ProcessNode&>(*p));
  }
};

} // namespace

std::vector<Diagnostic> check_script(const ProcessPtr& p) {
  Checker c;
  for (const auto& v : free_lang_vars(p))
    c.out.push_back({"free language variable '" + v + "'"});
  for (const auto& v : free_trace_vars(p))
    c.out.push_back({"free trace variable '" + v + "'"});
  c.walk(p);
  return c.out;
}

} // namespace lns
