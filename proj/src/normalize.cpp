#include "lns/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string_view>

#include "lns/printer.hpp"

namespace lns {

namespace {

const ProcessNode* node_of(const ProcessPtr& p) {
  return static_cast<const ProcessNode*>(p.get());
}

// Ordering used for every canonical-form choice.  Digit runs compare
// numerically so that shifting all positional indices by a constant (the same
// subterm printed under more enclosing binders) cannot reorder two texts.
bool key_less(const std::string& a, const std::string& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      size_t ea = i, eb = j;
      while (ea < a.size() && std::isdigit(static_cast<unsigned char>(a[ea]))) ++ea;
      while (eb < b.size() && std::isdigit(static_cast<unsigned char>(b[eb]))) ++eb;
      std::string_view ra(a.data() + i, ea - i);
      std::string_view rb(b.data() + j, eb - j);
      std::string_view sa = ra.substr(std::min(ra.find_first_not_of('0'), ra.size() - 1));
      std::string_view sb = rb.substr(std::min(rb.find_first_not_of('0'), rb.size() - 1));
      if (sa.size() != sb.size()) return sa.size() < sb.size();
      if (sa != sb) return sa < sb;
      if (ra != rb) return ra < rb;
      i = ea;
      j = eb;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return (a.size() - i) < (b.size() - j);
}

// Print a thread for ordering/identity with the group's restricted names
// already assigned positions; inner restrictions number on from there.
std::string thread_key(const ProcessPtr& t, const NuEnv& group_env) {
  NuEnv env = group_env;
  return print_process(t, PrintMode::Key, &env);
}

std::string shaped_text(size_t k, const std::vector<std::string>& texts) {
  std::string out;
  for (size_t i = 0; i < k; ++i) out += "new " + nu_name(static_cast<int>(i)) + ".";
  if (texts.empty()) return out + "0";
  if (texts.size() == 1) return out + texts[0];
  std::string body;
  for (size_t i = 0; i < texts.size(); ++i) body += (i ? " | " : "") + texts[i];
  return k ? out + "(" + body + ")" : body;
}

// True if the subtree contains a parallel composition or restriction, i.e.
// canonicalizing it makes ordering choices that depend on the ambient binder
// numbering.
bool has_group(const ProcessPtr& p) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PRestrict>) {
          return true;
        } else if constexpr (std::is_same_v<T, PChoice>) {
          return has_group(n.left) || has_group(n.right);
        } else if constexpr (std::is_same_v<T, PReplicate>) {
          return has_group(n.body);
        } else if constexpr (std::is_same_v<T, PIsInTrace>) {
          return has_group(n.then_p) || has_group(n.else_p);
        } else if constexpr (std::is_same_v<T, PInput> || std::is_same_v<T, POutput> ||
                             std::is_same_v<T, PLangInput> ||
                             std::is_same_v<T, PLangOutput> ||
                             std::is_same_v<T, PTraceInput> ||
                             std::is_same_v<T, PTraceOutput>) {
          return has_group(n.cont);
        } else {
          return false;
        }
      },
      static_cast<const ProcessNode&>(*p));
}

struct Canonicalizer {
  int binder_counter = 0;

  std::string fresh_binder() { return "\x01p" + std::to_string(binder_counter++); }

  // Give every restriction binder a unique internal name so that hoisting a
  // restriction over its siblings can never capture anything.
  ProcessPtr prepass(const ProcessPtr& p) {
    return std::visit(
        [&](const auto& n) -> ProcessPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PRestrict>) {
            std::string fresh = fresh_binder();
            return mk_restrict(fresh, prepass(subst_channel(n.body, fresh, n.name)));
          } else if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PChoice>) {
            T out = n;
            out.left = prepass(n.left);
            out.right = prepass(n.right);
            return mk(out);
          } else if constexpr (std::is_same_v<T, PReplicate>) {
            return mk(PReplicate{prepass(n.body)});
          } else if constexpr (std::is_same_v<T, PIsInTrace>) {
            PIsInTrace out = n;
            out.then_p = prepass(n.then_p);
            out.else_p = prepass(n.else_p);
            return mk(out);
          } else if constexpr (std::is_same_v<T, PInput> || std::is_same_v<T, POutput> ||
                               std::is_same_v<T, PLangInput> ||
                               std::is_same_v<T, PLangOutput> ||
                               std::is_same_v<T, PTraceInput> ||
                               std::is_same_v<T, PTraceOutput>) {
            T out = n;
            out.cont = prepass(n.cont);
            return mk(out);
          } else {
            return p; // PNil, PExec
          }
        },
        static_cast<const ProcessNode&>(*p));
  }

  // Scope bookkeeping mirroring the Key printer: a binder takes the next
  // index in print order; leaving its scope restores the shadowed entry but
  // never reuses an index.
  struct Saved {
    bool had = false;
    int old = 0;
  };
  static Saved enter_binder(NuEnv& env, const std::string& n) {
    Saved s;
    auto it = env.index.find(n);
    if (it != env.index.end()) {
      s.had = true;
      s.old = it->second;
    }
    env.index[n] = env.next++;
    return s;
  }
  static void leave_binder(NuEnv& env, const std::string& n, const Saved& s) {
    if (s.had)
      env.index[n] = s.old;
    else
      env.index.erase(n);
  }

  // Apply the environment effects of Key-printing an already-rebuilt subtree.
  static void advance(const ProcessPtr& p, NuEnv& env) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PInput> || std::is_same_v<T, PLangInput> ||
                        std::is_same_v<T, PTraceInput>) {
            Saved s = enter_binder(env, n.bound);
            advance(n.cont, env);
            leave_binder(env, n.bound, s);
          } else if constexpr (std::is_same_v<T, POutput> ||
                               std::is_same_v<T, PLangOutput> ||
                               std::is_same_v<T, PTraceOutput>) {
            advance(n.cont, env);
          } else if constexpr (std::is_same_v<T, PRestrict>) {
            Saved s = enter_binder(env, n.name);
            advance(n.body, env);
            leave_binder(env, n.name, s);
          } else if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PChoice>) {
            advance(n.left, env);
            advance(n.right, env);
          } else if constexpr (std::is_same_v<T, PReplicate>) {
            advance(n.body, env);
          } else if constexpr (std::is_same_v<T, PIsInTrace>) {
            advance(n.then_p, env);
            advance(n.else_p, env);
          }
        },
        static_cast<const ProcessNode&>(*p));
  }

  // Canonical rebuild; expects a prepass'd tree.  env carries the positional
  // numbering of every enclosing binder — nested groups order their threads
  // by prints made under it, so the choice cannot depend on the spellings the
  // normalizer holds internally — and advances the way the Key printer moves
  // over the result.
  ProcessPtr canon(const ProcessPtr& p, NuEnv& env) {
    return std::visit(
        [&](const auto& n) -> ProcessPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PPar> || std::is_same_v<T, PRestrict>) {
            ProcessPtr q = group(p, env).to_process();
            advance(q, env);
            return q;
          } else if constexpr (std::is_same_v<T, PChoice>) {
            PChoice out = n;
            out.left = canon(n.left, env);
            out.right = canon(n.right, env);
            return mk(out);
          } else if constexpr (std::is_same_v<T, PReplicate>) {
            return mk(PReplicate{canon(n.body, env)});
          } else if constexpr (std::is_same_v<T, PIsInTrace>) {
            PIsInTrace out = n;
            out.then_p = canon(n.then_p, env);
            out.else_p = canon(n.else_p, env);
            return mk(out);
          } else if constexpr (std::is_same_v<T, PInput> || std::is_same_v<T, PLangInput> ||
                               std::is_same_v<T, PTraceInput>) {
            T out = n;
            Saved s = enter_binder(env, n.bound);
            out.cont = canon(n.cont, env);
            leave_binder(env, n.bound, s);
            return mk(out);
          } else if constexpr (std::is_same_v<T, POutput> ||
                               std::is_same_v<T, PLangOutput> ||
                               std::is_same_v<T, PTraceOutput>) {
            T out = n;
            out.cont = canon(n.cont, env);
            return mk(out);
          } else {
            return p;
          }
        },
        static_cast<const ProcessNode&>(*p));
  }

  std::string canon_key(const ProcessPtr& p, const NuEnv& ambient) {
    NuEnv build = ambient;
    return thread_key(canon(p, build), ambient);
  }

  void collect(const ProcessPtr& p, std::vector<std::string>& names,
               std::vector<ProcessPtr>& threads) {
    if (auto* par = std::get_if<PPar>(node_of(p))) {
      collect(par->left, names, threads);
      collect(par->right, names, threads);
      return;
    }
    if (auto* res = std::get_if<PRestrict>(node_of(p))) {
      names.push_back(res->name);
      collect(res->body, names, threads);
      return;
    }
    if (!std::get_if<PNil>(node_of(p))) threads.push_back(p);
  }

  // A thread equal to one fresh copy of a sibling replication's body — with
  // the restrictions private to the thread re-encapsulated — is redundant.
  bool try_absorb(std::vector<std::string>& names, std::vector<ProcessPtr>& threads,
                  std::vector<std::set<std::string>>& frees, const NuEnv& ambient) {
    for (size_t i = 0; i < threads.size(); ++i) {
      for (size_t j = 0; j < threads.size(); ++j) {
        if (i == j) continue;
        auto* rep = std::get_if<PReplicate>(node_of(threads[j]));
        if (!rep) continue;
        std::vector<std::string> priv;
        for (const auto& nm : names) {
          if (!frees[i].count(nm)) continue;
          bool elsewhere = false;
          for (size_t k = 0; k < threads.size() && !elsewhere; ++k)
            if (k != i && frees[k].count(nm)) elsewhere = true;
          if (!elsewhere) priv.push_back(nm);
        }
        ProcessPtr wrapped = threads[i];
        for (auto it = priv.rbegin(); it != priv.rend(); ++it)
          wrapped = mk_restrict(*it, wrapped);
        if (canon_key(wrapped, ambient) != canon_key(rep->body, ambient)) continue;
        threads.erase(threads.begin() + static_cast<long>(i));
        frees.erase(frees.begin() + static_cast<long>(i));
        for (const auto& nm : priv)
          names.erase(std::find(names.begin(), names.end(), nm));
        return true;
      }
    }
    return false;
  }

  NormalForm group(const ProcessPtr& p, const NuEnv& ambient) {
    std::vector<std::string> names;
    std::vector<ProcessPtr> threads;
    collect(p, names, threads);

    std::vector<std::set<std::string>> frees;
    frees.reserve(threads.size());
    for (const auto& t : threads) frees.push_back(free_channels(t));

    for (bool changed = true; changed;) {
      changed = false;
      for (size_t ni = 0; ni < names.size();) {
        bool used = false;
        for (const auto& f : frees)
          if (f.count(names[ni])) { used = true; break; }
        if (used) {
          ++ni;
        } else {
          names.erase(names.begin() + static_cast<long>(ni));
          changed = true;
        }
      }
      if (try_absorb(names, threads, frees, ambient)) changed = true;
    }

    // Choose the binder numbering giving the least printed form; order the
    // threads by their prints under it.  Threads without groups of their own
    // rebuild the same way under every numbering, so they are canonicalized
    // once; the rest are redone per numbering.  key_ labels binders from nu0,
    // which matches the final print only for the outermost group — inner
    // groups are reprinted by their enclosing thread and discard key_.
    size_t k = names.size();
    std::vector<char> ordering_sensitive(threads.size());
    for (size_t i = 0; i < threads.size(); ++i)
      ordering_sensitive[i] = has_group(threads[i]) ? 1 : 0;
    std::vector<size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    NormalForm best;
    bool have_best = false;
    auto consider = [&](const std::vector<size_t>& pm) {
      NuEnv genv = ambient;
      for (size_t i = 0; i < k; ++i)
        genv.index[names[pm[i]]] = genv.next + static_cast<int>(i);
      genv.next += static_cast<int>(k);
      std::vector<ProcessPtr> built(threads.size());
      std::vector<std::string> keys(threads.size());
      for (size_t i = 0; i < threads.size(); ++i) {
        if (ordering_sensitive[i]) {
          NuEnv te = genv;
          built[i] = canon(threads[i], te);
        } else {
          built[i] = threads[i];
        }
        keys[i] = thread_key(built[i], genv);
      }
      std::vector<size_t> order(threads.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return key_less(keys[a], keys[b]); });
      std::vector<std::string> sorted_keys;
      sorted_keys.reserve(order.size());
      for (size_t idx : order) sorted_keys.push_back(keys[idx]);
      std::string text = shaped_text(k, sorted_keys);
      if (have_best && !key_less(text, best.key_)) return;
      have_best = true;
      best.key_ = std::move(text);
      best.restricted.clear();
      for (size_t i = 0; i < k; ++i) best.restricted.push_back(names[pm[i]]);
      best.threads.clear();
      for (size_t idx : order) best.threads.push_back(built[idx]);
    };
    if (k <= 6) {
      std::sort(perm.begin(), perm.end());
      do {
        consider(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      consider(perm); // too many binders: keep collection order
    }
    return best;
  }
};

} // namespace

std::string NormalForm::display() const {
  NuEnv env;
  env.next = static_cast<int>(restricted.size());
  for (size_t i = 0; i < restricted.size(); ++i)
    env.index[restricted[i]] = static_cast<int>(i);
  std::vector<std::string> texts;
  texts.reserve(threads.size());
  for (const auto& t : threads) {
    NuEnv local = env;
    texts.push_back(print_process(t, PrintMode::Display, &local));
  }
  return shaped_text(restricted.size(), texts);
}

ProcessPtr NormalForm::to_process() const {
  if (threads.empty()) return mk_nil();
  ProcessPtr body = threads.back();
  for (size_t i = threads.size() - 1; i-- > 0;) body = mk_par(threads[i], body);
  for (size_t i = restricted.size(); i-- > 0;) body = mk_restrict(restricted[i], body);
  return body;
}

NormalForm normalize(const ProcessPtr& p) {
  Canonicalizer c;
  NuEnv root;
  return c.group(c.prepass(p), root);
}

ProcessPtr canon_process(const ProcessPtr& p) {
  Canonicalizer c;
  NuEnv root;
  return c.canon(c.prepass(p), root);
}

} // namespace lns
