// Command-line front end; talks to the interpreter only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lns.h"

namespace {

struct SessionDeleter {
  void operator()(lns_session* s) const { lns_session_free(s); }
};
using Session = std::unique_ptr<lns_session, SessionDeleter>;

struct CommonOpts {
  std::string script;
  std::string out_file;
  std::vector<std::string> lang_paths;
  std::string policy = "first";
  unsigned long long seed = 0;
  unsigned long long max_steps = 10000;
  unsigned long long max_nodes = 1000000;
  unsigned int max_depth = 512;
  unsigned long long repl_bound = 2;
  unsigned long long max_states = 100000;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool runnable) {
  cmd->add_option("script", o.script, "process script (.lns)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--lang-path", o.lang_paths,
                  "extra directory searched for NAME.lnsl (repeatable; the "
                  "script's directory is always searched)");
  if (runnable) {
    cmd->add_option("--out", o.out_file, "write the report here instead of stdout");
    cmd->add_option("--max-steps", o.max_steps,
                    "stop after this many reductions (exploration depth bound)");
    cmd->add_option("--max-nodes", o.max_nodes, "proof search node budget");
    cmd->add_option("--max-depth", o.max_depth, "proof search depth budget");
  }
}

Session make_session(const CommonOpts& o) {
  Session s(lns_session_new());
  for (const auto& d : o.lang_paths) lns_add_lang_path(s.get(), d.c_str());
  lns_set_max_steps(s.get(), o.max_steps);
  lns_set_budget(s.get(), o.max_nodes, o.max_depth);
  lns_set_repl_bound(s.get(), o.repl_bound);
  if (o.policy == "seeded")
    lns_set_policy_seeded(s.get(), o.seed);
  else
    lns_set_policy_first(s.get());
  return s;
}

int deliver(lns_session* s, int status, char* report, const std::string& out_file) {
  if (report) {
    if (out_file.empty()) {
      std::cout << report;
    } else {
      std::ofstream f(out_file, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out_file << "\n";
        lns_string_free(report);
        return LNS_ERROR;
      }
      f << report;
    }
    lns_string_free(report);
  }
  if (status != LNS_OK) {
    const char* msg = lns_session_last_error(s);
    std::cerr << "error (" << lns_status_name(status) << "): "
              << (msg && *msg ? msg : "unknown") << "\n";
  }
  return status;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpreter for processes that exchange language definitions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lns_version()));

  CommonOpts ro, eo, co;

  CLI::App* run = app.add_subcommand("run", "reduce a script to quiescence");
  add_common(run, ro, true);
  run->add_option("--policy", ro.policy, "first | seeded")
      ->check(CLI::IsMember({"first", "seeded"}));
  run->add_option("--seed", ro.seed, "seed for --policy seeded");

  CLI::App* explore = app.add_subcommand("explore", "search all reachable states");
  add_common(explore, eo, true);
  explore->add_option("--repl-bound", eo.repl_bound,
                      "max unfoldings per replication along a path");
  explore->add_option("--max-states", eo.max_states, "visited state cap");

  CLI::App* check = app.add_subcommand("check", "static diagnostics for a script");
  add_common(check, co, false);

  std::string example_name, export_dir;
  CLI::App* examples = app.add_subcommand("examples", "list or print bundled examples");
  examples->add_option("name", example_name, "print this example");
  examples->add_option("--export", export_dir, "write all examples to a directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    Session s = make_session(ro);
    char* report = nullptr;
    int status = lns_run_file(s.get(), ro.script.c_str(), &report);
    return deliver(s.get(), status, report, ro.out_file);
  }
  if (explore->parsed()) {
    Session s = make_session(eo);
    char* report = nullptr;
    int status = lns_explore_file(s.get(), eo.script.c_str(), &report);
    return deliver(s.get(), status, report, eo.out_file);
  }
  if (check->parsed()) {
    Session s = make_session(co);
    char* report = nullptr;
    int status = lns_check_file(s.get(), co.script.c_str(), &report);
    if (report && *report) std::cout << report;
    if (report) lns_string_free(report);
    if (status == LNS_OK) {
      std::cout << "ok\n";
    } else if (status != LNS_ERROR || !*lns_session_last_error(s.get())) {
      std::cerr << "error (" << lns_status_name(status) << ")\n";
    }
    return status;
  }
  if (examples->parsed()) {
    int n = lns_corpus_count();
    if (!export_dir.empty()) {
      for (int i = 0; i < n; ++i) {
        std::string path = export_dir + "/" + lns_corpus_name(i);
        std::ofstream f(path, std::ios::binary);
        if (!f) {
          std::cerr << "error: cannot write " << path << "\n";
          return LNS_ERROR;
        }
        f << lns_corpus_text(i);
      }
      std::cout << "wrote " << n << " files to " << export_dir << "\n";
      return LNS_OK;
    }
    if (!example_name.empty()) {
      for (int i = 0; i < n; ++i) {
        if (example_name == lns_corpus_name(i)) {
          std::cout << lns_corpus_text(i);
          return LNS_OK;
        }
      }
      std::cerr << "error: no example named " << example_name << "\n";
      return LNS_ERROR;
    }
    for (int i = 0; i < n; ++i) std::cout << lns_corpus_name(i) << "\n";
    return LNS_OK;
  }
  return LNS_ERROR;
}
