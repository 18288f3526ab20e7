#pragma once

#include <map>
#include <string>
#include <vector>

#include "lns/language.hpp"
#include "lns/process.hpp"

namespace lns {

// Language definition text:
//
//   language NAME              (optional)
//   grammar
//     Category Root ::= (op ...) | (op ...)     (may be empty after ::=)
//   rules
//     (premise), (premise)
//     ---
//     (conclusion)
//
//     (axiom)
//
// '#' starts a line comment.  A word is a metavariable when its alphabetic
// prefix is a declared root and the rest is digits or primes (P, P1, P');
// operator and predicate names follow '(' and may be symbolic (-->, |>).
Language parse_language(const std::string& text, const std::string& where = "");

// Script text: zero or more `use NAME` lines, then one process term.
//   0    x(y).P    send x<y>.P    recvlang x(l).P    sendlang x<LE>.P
//   recvtrace x(t).P    sendtrace x<[...]>.P    P | P    P + P
//   new x.P    !P    exec(LE, x, (term) [, pred] [, [labels]])
//   if (term) in t then P else Q
// LE ::= name | union(LE, LE); `use` names and recvlang binders are in scope.
// Script terms are ground.  Binder sorts are enforced while parsing.
std::vector<std::string> scan_uses(const std::string& text);
ProcessPtr parse_script(const std::string& text,
                        const std::map<std::string, LanguagePtr>& languages,
                        const std::string& where = "");

// One ground, fully parenthesised term, e.g. "(seq (act (a)) (act (b)))".
TermPtr parse_ground_term(const std::string& text);

} // namespace lns
