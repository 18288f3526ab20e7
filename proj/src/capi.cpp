#include "lns.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lns/check.hpp"
#include "lns/errors.hpp"
#include "lns/loader.hpp"
#include "lns/parser.hpp"
#include "lns/report.hpp"
#include "lns/run.hpp"

namespace lns_corpus {
struct Entry {
  const char* name;
  const char* text;
};
extern const Entry* corpus_entries;
extern const int corpus_count;
} // namespace lns_corpus

namespace fs = std::filesystem;

struct lns_session {
  std::map<std::string, lns::LanguagePtr> languages;
  std::vector<fs::path> lang_paths;
  lns::Policy policy = lns::Policy::First;
  unsigned long long seed = 0;
  lns::RunLimits run_limits;
  lns::ExploreLimits explore_limits;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(lns_session* s, const std::exception& e, int code) {
  s->last_error = e.what();
  return code;
}

int catching(lns_session* s, const std::function<std::string()>& body, char** out) {
  try {
    std::string text = body();
    if (out) *out = dup_string(text);
    s->last_error.clear();
    return LNS_OK;
  } catch (const lns::Error& e) {
    return fail(s, e, lns::exit_code_for(e.kind));
  } catch (const std::exception& e) {
    return fail(s, e, LNS_ERROR);
  }
}

// `use` resolution: session-registered languages first, then .lnsl files in
// the session's directories plus the script's own directory.
lns::LoadedScript load_for(lns_session* s, const std::string& text,
                           const fs::path* script_path) {
  std::vector<fs::path> dirs = s->lang_paths;
  if (script_path) {
    fs::path dir = script_path->parent_path();
    dirs.push_back(dir.empty() ? fs::path(".") : dir);
  } else if (dirs.empty()) {
    dirs.push_back(".");
  }
  std::map<std::string, lns::LanguagePtr> langs = s->languages;
  for (const auto& name : lns::scan_uses(text)) {
    if (langs.count(name)) continue;
    bool found = false;
    for (const auto& dir : dirs) {
      fs::path candidate = dir / (name + ".lnsl");
      std::error_code ec;
      if (fs::exists(candidate, ec)) {
        langs[name] = lns::load_language_file(candidate);
        found = true;
        break;
      }
    }
    if (!found)
      throw lns::Error(lns::ErrorKind::Io,
                       "no " + name + ".lnsl found for 'use " + name + "'");
  }
  lns::LoadedScript out;
  out.languages = langs;
  out.process = lns::parse_script(text, langs,
                                  script_path ? script_path->string() : "");
  return out;
}

std::string do_run(lns_session* s, const std::string& text, const fs::path* path) {
  lns::LoadedScript ls = load_for(s, text, path);
  lns::RunResult r = lns::run(ls.process, s->policy, s->seed, s->run_limits);
  return lns::report_run(r);
}

std::string do_explore(lns_session* s, const std::string& text, const fs::path* path) {
  lns::LoadedScript ls = load_for(s, text, path);
  lns::ExploreResult r = lns::explore(ls.process, s->explore_limits);
  return lns::report_explore(r);
}

int do_check(lns_session* s, const std::string& text, const fs::path* path,
             char** out) {
  try {
    lns::LoadedScript ls = load_for(s, text, path);
    std::string diags;
    for (const auto& d : lns::check_script(ls.process)) diags += d.what + "\n";
    if (out) *out = dup_string(diags);
    if (!diags.empty()) {
      s->last_error = diags;
      return LNS_ERROR;
    }
    s->last_error.clear();
    return LNS_OK;
  } catch (const lns::Error& e) {
    return fail(s, e, lns::exit_code_for(e.kind));
  } catch (const std::exception& e) {
    return fail(s, e, LNS_ERROR);
  }
}

} // namespace

extern "C" {

lns_session* lns_session_new(void) { return new lns_session(); }

void lns_session_free(lns_session* s) { delete s; }

int lns_load_language_file(lns_session* s, const char* path) {
  return catching(
      s,
      [&]() -> std::string {
        lns::LanguagePtr l = lns::load_language_file(path);
        s->languages[*l->name] = l;
        return "";
      },
      nullptr);
}

int lns_load_language_text(lns_session* s, const char* name, const char* text) {
  return catching(
      s,
      [&]() -> std::string {
        lns::Language l = lns::parse_language(text, name);
        if (!l.name) l.name = name;
        s->languages[name] = std::make_shared<lns::Language>(std::move(l));
        return "";
      },
      nullptr);
}

void lns_add_lang_path(lns_session* s, const char* dir) {
  s->lang_paths.push_back(dir);
}

void lns_set_policy_first(lns_session* s) { s->policy = lns::Policy::First; }

void lns_set_policy_seeded(lns_session* s, unsigned long long seed) {
  s->policy = lns::Policy::Seeded;
  s->seed = seed;
}

void lns_set_max_steps(lns_session* s, unsigned long long n) {
  s->run_limits.max_steps = n;
  s->explore_limits.max_depth = n;
}

void lns_set_budget(lns_session* s, unsigned long long max_nodes,
                    unsigned int max_depth) {
  s->run_limits.budget.max_nodes = max_nodes;
  s->run_limits.budget.max_depth = max_depth;
  s->explore_limits.budget = s->run_limits.budget;
}

void lns_set_repl_bound(lns_session* s, unsigned long long n) {
  s->explore_limits.repl_bound = n;
}

void lns_set_explore_limits(lns_session* s, unsigned long long max_depth,
                            unsigned long long max_states) {
  s->explore_limits.max_depth = max_depth;
  s->explore_limits.max_states = max_states;
}

int lns_run_file(lns_session* s, const char* path, char** out) {
  return catching(
      s,
      [&] {
        fs::path p(path);
        return do_run(s, lns::read_file(p), &p);
      },
      out);
}

int lns_run_text(lns_session* s, const char* text, char** out) {
  return catching(s, [&] { return do_run(s, text, nullptr); }, out);
}

int lns_explore_file(lns_session* s, const char* path, char** out) {
  return catching(
      s,
      [&] {
        fs::path p(path);
        return do_explore(s, lns::read_file(p), &p);
      },
      out);
}

int lns_explore_text(lns_session* s, const char* text, char** out) {
  return catching(s, [&] { return do_explore(s, text, nullptr); }, out);
}

int lns_check_file(lns_session* s, const char* path, char** out) {
  try {
    fs::path p(path);
    return do_check(s, lns::read_file(p), &p, out);
  } catch (const lns::Error& e) {
    return fail(s, e, lns::exit_code_for(e.kind));
  }
}

int lns_check_text(lns_session* s, const char* text, char** out) {
  return do_check(s, text, nullptr, out);
}

const char* lns_session_last_error(const lns_session* s) {
  return s->last_error.c_str();
}

void lns_string_free(char* s) { std::free(s); }

const char* lns_status_name(int status) {
  switch (status) {
  case LNS_OK: return "ok";
  case LNS_ERROR: return "error";
  case LNS_STEP_LIMIT: return "step-limit";
  case LNS_BUDGET_EXHAUSTED: return "budget-exhausted";
  case LNS_STATE_LIMIT: return "state-limit";
  default: return "unknown";
  }
}

const char* lns_version(void) { return "1.0.0"; }

int lns_corpus_count(void) { return lns_corpus::corpus_count; }

const char* lns_corpus_name(int i) {
  if (i < 0 || i >= lns_corpus::corpus_count) return nullptr;
  return lns_corpus::corpus_entries[i].name;
}

const char* lns_corpus_text(int i) {
  if (i < 0 || i >= lns_corpus::corpus_count) return nullptr;
  return lns_corpus::corpus_entries[i].text;
}

} // extern "C"
