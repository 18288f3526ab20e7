#pragma once

#include <map>
#include <string>

#include "lns/language.hpp"
#include "lns/process.hpp"

namespace lns {

// Display: human-facing, language literals shown by name.
// Key: injective canonical text used for state identity, thread ordering and
//      visited sets; language literals are printed in full.
enum class PrintMode { Display, Key };

// Restriction binders print positionally (nu0, nu1, ... in print order), which
// makes the text invariant under the binder names the normalizer happens to
// hold internally.  In Key mode every other binder (input channels, language
// and trace variables) is numbered the same way, so alpha-equivalent processes
// print identically; Display keeps source spellings unless they would clash
// with a positional name.  Seed the environment to control the numbering of
// names that are restricted further out (normal forms do this).
struct NuEnv {
  std::map<std::string, int> index;
  int next = 0;
};

// True for spellings the positional scheme owns: nu<digits>, and the
// internal '\x01'-prefixed placeholders.
bool positional_spelling(const std::string& name);

std::string nu_name(int idx);
std::string print_name(const std::string& name, const NuEnv* env);

std::string print_trace(const Trace& t);    // space-joined labels, "[]" if empty
std::string print_trace_br(const Trace& t); // always bracketed: [] or [(a) (b)]
std::string print_formula(const Formula& f);
std::string print_rule(const Rule& r);
std::string print_language_file(const Language& l); // canonical .lnsl text
std::string print_language_key(const Language& l);  // compact, name-free
std::string lang_display(const LanguagePtr& l);
std::string print_lexpr(const LangExprPtr& e, PrintMode mode,
                        const NuEnv* env = nullptr);

std::string print_process(const ProcessPtr& p, PrintMode mode = PrintMode::Display,
                          NuEnv* env = nullptr);

} // namespace lns
