#include "lns/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>

#include "lns/errors.hpp"
#include "lns/printer.hpp"

namespace lns {

namespace {

enum class Tok {
  Word,
  Sym,     // run of symbol characters: --> ::= |> < > + |
  RuleSep, // --- (three or more dashes)
  LParen,
  RParen,
  LBracket,
  RBracket,
  Dot,
  Comma,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || std::isdigit(static_cast<unsigned char>(c)); }
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool sym_char(char c) { return std::strchr("-+*/=<>|&^~?:@%;", c) != nullptr; }

std::vector<Token> lex(const std::string& text, const std::string& where) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (word_start(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back({Tok::Word, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '!') {
      out.push_back({Tok::Bang, "!", tl, tc});
      advance(1);
      continue;
    }
    if (sym_char(c)) {
      std::size_t j = i;
      while (j < text.size() && sym_char(text[j])) ++j;
      std::string s = text.substr(i, j - i);
      bool dashes = s.size() >= 3 && s.find_first_not_of('-') == std::string::npos;
      out.push_back({dashes ? Tok::RuleSep : Tok::Sym, s, tl, tc});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
    case '(': k = Tok::LParen; break;
    case ')': k = Tok::RParen; break;
    case '[': k = Tok::LBracket; break;
    case ']': k = Tok::RBracket; break;
    case '.': k = Tok::Dot; break;
    case ',': k = Tok::Comma; break;
    default:
      throw Error(ErrorKind::Parse, where + "unexpected character '" + std::string(1, c) +
                                        "' at line " + std::to_string(line) + " col " +
                                        std::to_string(col));
    }
    out.push_back({k, std::string(1, c), tl, tc});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string> kReserved = {
    "send", "recvlang", "sendlang", "recvtrace", "sendtrace", "new",  "exec",
    "if",   "in",       "then",     "else",      "use",       "union", "language",
    "grammar", "rules"};

struct Cursor {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  std::string where;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t p = pos + ahead;
    return p < toks.size() ? toks[p] : toks.back();
  }
  const Token& take() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw Error(ErrorKind::Parse, where + msg + " at line " + std::to_string(t.line) +
                                      " col " + std::to_string(t.col) +
                                      (t.kind == Tok::End ? " (end of input)"
                                                          : " (near '" + t.text + "')"));
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what, peek());
    return toks[pos++];
  }
  bool at_word(const std::string& w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }
  bool at_sym(const std::string& s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
};

bool is_metavar_word(const std::string& w, const std::set<std::string>& roots) {
  std::size_t i = 0;
  while (i < w.size() && std::isalpha(static_cast<unsigned char>(w[i]))) ++i;
  if (i == 0 || !roots.count(w.substr(0, i))) return false;
  for (std::size_t j = i; j < w.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(w[j])) && w[j] != '\'') return false;
  return true;
}

// Term within a language definition: metavariable or (op term ...).
TermPtr parse_lang_term(Cursor& c, const std::set<std::string>& roots) {
  const Token& t = c.peek();
  if (t.kind == Tok::Word) {
    if (!is_metavar_word(t.text, roots))
      c.fail("'" + t.text + "' is not a metavariable of any declared root", t);
    c.take();
    return mkvar(t.text);
  }
  if (t.kind == Tok::LParen) {
    c.take();
    const Token& op = c.peek();
    if (op.kind != Tok::Word && op.kind != Tok::Sym && op.kind != Tok::RuleSep)
      c.fail("expected operator name after '('", op);
    c.take();
    std::vector<TermPtr> kids;
    while (c.peek().kind != Tok::RParen) {
      if (c.peek().kind == Tok::End) c.fail("unclosed '(' in term", c.peek());
      kids.push_back(parse_lang_term(c, roots));
    }
    c.take();
    return mknode(op.text, std::move(kids));
  }
  c.fail("expected a term", t);
}

Formula parse_formula(Cursor& c, const std::set<std::string>& roots) {
  c.expect(Tok::LParen, "'(' starting a formula");
  const Token& p = c.peek();
  if (p.kind != Tok::Word && p.kind != Tok::Sym)
    c.fail("expected predicate name", p);
  c.take();
  Formula f;
  f.pred = p.text;
  while (c.peek().kind != Tok::RParen) {
    if (c.peek().kind == Tok::End) c.fail("unclosed formula", c.peek());
    f.args.push_back(parse_lang_term(c, roots));
  }
  c.take();
  return f;
}

bool all_alpha(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalpha(static_cast<unsigned char>(ch));
  });
}

// ---- scripts ---------------------------------------------------------------

enum class Sort { Chan, Lang, TraceVar };

struct ScriptParser {
  Cursor& c;
  const std::map<std::string, LanguagePtr>& languages;
  std::map<std::string, Sort> scope; // innermost binding wins (values replaced)

  [[noreturn]] void sort_error(const std::string& name, const char* used_as,
                               const Token& t) {
    throw Error(ErrorKind::SortMismatch,
                c.where + "'" + name + "' is bound as a " +
                    (scope.at(name) == Sort::Lang
                         ? "language variable"
                         : scope.at(name) == Sort::TraceVar ? "trace variable"
                                                            : "channel") +
                    " but used as a " + used_as + " at line " + std::to_string(t.line));
  }

  std::string name_token(const char* what) {
    const Token& t = c.peek();
    if (t.kind != Tok::Word) c.fail(std::string("expected ") + what, t);
    if (kReserved.count(t.text) || t.text == "0")
      c.fail("'" + t.text + "' is reserved", t);
    c.take();
    return t.text;
  }

  std::string chan_name() {
    const Token& t = c.peek();
    std::string n = name_token("a channel name");
    auto it = scope.find(n);
    if (it != scope.end() && it->second != Sort::Chan) sort_error(n, "channel", t);
    // Unbound nu<digits> would be ambiguous against printed restriction names.
    if (it == scope.end() && positional_spelling(n))
      c.fail("free name '" + n + "' is reserved for printed restrictions", t);
    return n;
  }

  // Binders shadow; restore the outer entry afterwards.
  struct Shadow {
    ScriptParser& sp;
    std::string name;
    bool had;
    Sort old;
    Shadow(ScriptParser& s, const std::string& n, Sort sort) : sp(s), name(n) {
      auto it = sp.scope.find(n);
      had = it != sp.scope.end();
      if (had) old = it->second;
      sp.scope[n] = sort;
    }
    ~Shadow() {
      if (had)
        sp.scope[name] = old;
      else
        sp.scope.erase(name);
    }
  };

  TermPtr ground_term() {
    const Token& t = c.peek();
    if (t.kind != Tok::LParen)
      c.fail("script terms must be ground: expected '('", t);
    c.take();
    const Token& op = c.peek();
    if (op.kind != Tok::Word && op.kind != Tok::Sym)
      c.fail("expected operator name after '('", op);
    c.take();
    std::vector<TermPtr> kids;
    while (c.peek().kind != Tok::RParen) {
      if (c.peek().kind == Tok::End) c.fail("unclosed '(' in term", c.peek());
      kids.push_back(ground_term());
    }
    c.take();
    return mknode(op.text, std::move(kids));
  }

  Trace bracket_trace() {
    c.expect(Tok::LBracket, "'['");
    Trace t;
    while (c.peek().kind != Tok::RBracket) {
      if (c.peek().kind == Tok::End) c.fail("unclosed '['", c.peek());
      t.push_back(ground_term());
    }
    c.take();
    return t;
  }

  LangExprPtr lexpr() {
    const Token& t = c.peek();
    if (t.kind != Tok::Word) c.fail("expected a language expression", t);
    if (t.text == "union") {
      c.take();
      c.expect(Tok::LParen, "'(' after union");
      LangExprPtr a = lexpr();
      c.expect(Tok::Comma, "',' between union arguments");
      LangExprPtr b = lexpr();
      c.expect(Tok::RParen, "')' closing union");
      return le_union(a, b);
    }
    c.take();
    auto it = scope.find(t.text);
    if (it != scope.end()) {
      if (it->second != Sort::Lang) sort_error(t.text, "language", t);
      return le_var(t.text);
    }
    if (positional_spelling(t.text))
      c.fail("free name '" + t.text + "' is reserved for printed restrictions", t);
    auto lit = languages.find(t.text);
    if (lit == languages.end())
      throw Error(ErrorKind::UnboundVariable,
                  c.where + "unknown language '" + t.text + "' at line " +
                      std::to_string(t.line) + " (missing use line?)");
    return le_lit(lit->second);
  }

  TraceRef traceref() {
    const Token& t = c.peek();
    if (t.kind == Tok::LBracket) return TraceRef{std::nullopt, bracket_trace()};
    if (t.kind == Tok::Word) {
      std::string n = name_token("a trace variable");
      auto it = scope.find(n);
      if (it == scope.end())
        throw Error(ErrorKind::UnboundVariable,
                    c.where + "trace variable '" + n + "' is not bound at line " +
                        std::to_string(t.line));
      if (it->second != Sort::TraceVar) sort_error(n, "trace", t);
      return TraceRef{n, {}};
    }
    c.fail("expected a trace (variable or [...])", t);
  }

  ProcessPtr par() {
    ProcessPtr left = choice();
    if (c.at_sym("|")) {
      c.take();
      return mk_par(left, par());
    }
    return left;
  }

  ProcessPtr choice() {
    ProcessPtr left = atom();
    if (c.at_sym("+")) {
      c.take();
      return mk(PChoice{left, choice()});
    }
    return left;
  }

  ProcessPtr dot_cont() {
    c.expect(Tok::Dot, "'.' before the continuation");
    return atom();
  }

  ProcessPtr atom() {
    const Token& t = c.peek();
    if (t.kind == Tok::Bang) {
      c.take();
      return mk(PReplicate{atom()});
    }
    if (t.kind == Tok::LParen) {
      c.take();
      ProcessPtr p = par();
      c.expect(Tok::RParen, "')'");
      return p;
    }
    if (t.kind != Tok::Word) c.fail("expected a process", t);
    if (t.text == "0") {
      c.take();
      return mk_nil();
    }
    if (t.text == "send") {
      c.take();
      std::string chan = chan_name();
      if (!c.at_sym("<")) c.fail("expected '<'", c.peek());
      c.take();
      std::string payload = chan_name();
      if (!c.at_sym(">")) c.fail("expected '>'", c.peek());
      c.take();
      return mk(POutput{chan, payload, dot_cont()});
    }
    if (t.text == "recvlang" || t.text == "recvtrace") {
      c.take();
      std::string chan = chan_name();
      c.expect(Tok::LParen, "'('");
      std::string bound = name_token("a variable");
      c.expect(Tok::RParen, "')'");
      Sort s = t.text == "recvlang" ? Sort::Lang : Sort::TraceVar;
      Shadow sh(*this, bound, s);
      ProcessPtr cont = dot_cont();
      if (s == Sort::Lang) return mk(PLangInput{chan, bound, cont});
      return mk(PTraceInput{chan, bound, cont});
    }
    if (t.text == "sendlang") {
      c.take();
      std::string chan = chan_name();
      if (!c.at_sym("<")) c.fail("expected '<'", c.peek());
      c.take();
      LangExprPtr payload = lexpr();
      if (!c.at_sym(">")) c.fail("expected '>'", c.peek());
      c.take();
      return mk(PLangOutput{chan, payload, dot_cont()});
    }
    if (t.text == "sendtrace") {
      c.take();
      std::string chan = chan_name();
      if (!c.at_sym("<")) c.fail("expected '<'", c.peek());
      c.take();
      TraceRef payload = traceref();
      if (!c.at_sym(">")) c.fail("expected '>'", c.peek());
      c.take();
      return mk(PTraceOutput{chan, payload, dot_cont()});
    }
    if (t.text == "new") {
      c.take();
      std::string name = name_token("a channel name");
      Shadow sh(*this, name, Sort::Chan);
      c.expect(Tok::Dot, "'.' after new binder");
      return mk_restrict(name, atom());
    }
    if (t.text == "exec") {
      c.take();
      c.expect(Tok::LParen, "'(' after exec");
      LangExprPtr lang = lexpr();
      c.expect(Tok::Comma, "',' after the language");
      std::string chan = chan_name();
      c.expect(Tok::Comma, "',' after the channel");
      TermPtr program = ground_term();
      std::string pred = "-->";
      Trace trace;
      if (c.peek().kind == Tok::Comma) {
        c.take();
        if (c.peek().kind == Tok::LBracket) {
          trace = bracket_trace();
        } else {
          const Token& pt = c.peek();
          if (pt.kind != Tok::Word && pt.kind != Tok::Sym)
            c.fail("expected a predicate name or [trace]", pt);
          c.take();
          pred = pt.text;
          if (c.peek().kind == Tok::Comma) {
            c.take();
            trace = bracket_trace();
          }
        }
      }
      c.expect(Tok::RParen, "')' closing exec");
      return mk(PExec{lang, chan, program, pred, trace});
    }
    if (t.text == "if") {
      c.take();
      TermPtr label = ground_term();
      if (!c.at_word("in")) c.fail("expected 'in'", c.peek());
      c.take();
      TraceRef tr = traceref();
      if (!c.at_word("then")) c.fail("expected 'then'", c.peek());
      c.take();
      ProcessPtr then_p = atom();
      if (!c.at_word("else")) c.fail("expected 'else'", c.peek());
      c.take();
      ProcessPtr else_p = atom();
      return mk(PIsInTrace{label, tr, then_p, else_p});
    }
    // x(y).P
    if (kReserved.count(t.text)) c.fail("'" + t.text + "' is reserved", t);
    std::string chan = chan_name();
    c.expect(Tok::LParen, "'(' after channel (input prefix)");
    std::string bound = name_token("a bound channel name");
    c.expect(Tok::RParen, "')'");
    Shadow sh(*this, bound, Sort::Chan);
    return mk(PInput{chan, bound, dot_cont()});
  }
};

} // namespace

Language parse_language(const std::string& text, const std::string& where) {
  std::string ctx = where.empty() ? "" : where + ": ";
  std::vector<Token> toks = lex(text, ctx);
  Cursor c{toks, 0, ctx};

  Language lang;
  if (c.at_word("language")) {
    c.take();
    const Token& n = c.expect(Tok::Word, "a language name");
    lang.name = n.text;
  }
  if (!c.at_word("grammar")) c.fail("expected 'grammar' section", c.peek());
  c.take();

  // Heads may reference categories declared later; collect all roots first.
  std::set<std::string> roots;
  {
    int depth = 0;
    for (std::size_t i = c.pos; i + 2 < toks.size(); ++i) {
      if (toks[i].kind == Tok::LParen) ++depth;
      if (toks[i].kind == Tok::RParen) --depth;
      if (depth == 0 && toks[i].kind == Tok::Word && toks[i].text == "rules") break;
      if (depth == 0 && toks[i].kind == Tok::Word && toks[i + 1].kind == Tok::Word &&
          toks[i + 2].kind == Tok::Sym && toks[i + 2].text == "::=")
        roots.insert(toks[i + 1].text);
    }
  }

  while (!c.at_word("rules")) {
    const Token& cat = c.peek();
    if (cat.kind != Tok::Word) c.fail("expected a category name or 'rules'", cat);
    c.take();
    GrammarRule g;
    g.category = cat.text;
    const Token& root = c.expect(Tok::Word, "a metavariable root");
    if (!all_alpha(root.text))
      c.fail("metavariable root must be alphabetic", root);
    g.metavar_root = root.text;
    if (!c.at_sym("::=")) c.fail("expected '::='", c.peek());
    c.take();
    if (c.peek().kind == Tok::LParen) {
      g.productions.push_back(parse_lang_term(c, roots));
      while (c.at_sym("|")) {
        c.take();
        g.productions.push_back(parse_lang_term(c, roots));
      }
    }
    for (const auto& prev : lang.grammar) {
      if (prev.metavar_root == g.metavar_root && prev.category != g.category)
        c.fail("root '" + g.metavar_root + "' already belongs to category '" +
                   prev.category + "'",
               root);
    }
    lang.grammar.push_back(std::move(g));
  }
  c.take(); // rules

  while (c.peek().kind != Tok::End) {
    Rule r;
    Formula f = parse_formula(c, roots);
    while (c.peek().kind == Tok::Comma) {
      c.take();
      r.premises.push_back(std::move(f));
      f = parse_formula(c, roots);
    }
    if (c.peek().kind == Tok::RuleSep) {
      c.take();
      r.premises.push_back(std::move(f));
      r.conclusion = parse_formula(c, roots);
    } else {
      if (!r.premises.empty())
        c.fail("premises must be followed by '---' and a conclusion", c.peek());
      r.conclusion = std::move(f);
    }
    lang.rules.push_back(std::move(r));
  }
  return lang;
}

std::vector<std::string> scan_uses(const std::string& text) {
  std::vector<Token> toks = lex(text, "");
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i + 1 < toks.size() && toks[i].kind == Tok::Word && toks[i].text == "use" &&
         toks[i + 1].kind == Tok::Word) {
    out.push_back(toks[i + 1].text);
    i += 2;
  }
  return out;
}

ProcessPtr parse_script(const std::string& text,
                        const std::map<std::string, LanguagePtr>& languages,
                        const std::string& where) {
  std::string ctx = where.empty() ? "" : where + ": ";
  std::vector<Token> toks = lex(text, ctx);
  Cursor c{toks, 0, ctx};
  while (c.at_word("use")) {
    c.take();
    c.expect(Tok::Word, "a language name after use");
  }
  ScriptParser sp{c, languages, {}};
  ProcessPtr p = sp.par();
  if (c.peek().kind != Tok::End) c.fail("trailing input after the process", c.peek());
  return p;
}

TermPtr parse_ground_term(const std::string& text) {
  std::vector<Token> toks = lex(text, "");
  Cursor c{toks, 0, ""};
  std::map<std::string, LanguagePtr> none;
  ScriptParser sp{c, none, {}};
  TermPtr t = sp.ground_term();
  if (c.peek().kind != Tok::End) c.fail("trailing input after the term", c.peek());
  return t;
}

} // namespace lns
