#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lns/language.hpp"
#include "lns/term.hpp"

namespace lns {

using Trace = std::vector<TermPtr>; // ground labels, oldest first

// A trace position in the syntax: either a literal value or a reference to a
// trace variable bound by a trace input.
struct TraceRef {
  std::optional<std::string> var;
  Trace value; // meaningful only when var is empty
};

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct PNil {};
struct PInput {   // x(y).P        receive a channel name
  std::string chan, bound;
  ProcessPtr cont;
};
struct POutput {  // send x<y>.P   send a channel name
  std::string chan, payload;
  ProcessPtr cont;
};
struct PPar { ProcessPtr left, right; };
struct PChoice { ProcessPtr left, right; };
struct PRestrict { std::string name; ProcessPtr body; };
struct PReplicate { ProcessPtr body; };
struct PExec {    // exec(l, x, t [, pred] [, trace])
  LangExprPtr lang;
  std::string result_chan;
  TermPtr program;
  std::string step_pred; // usually "-->"
  Trace trace;
};
struct PIsInTrace { // if t in tr then P else Q
  TermPtr label;
  TraceRef trace;
  ProcessPtr then_p, else_p;
};
struct PLangInput {  // recvlang x(l).P
  std::string chan, bound;
  ProcessPtr cont;
};
struct PLangOutput { // sendlang x<lexpr>.P
  std::string chan;
  LangExprPtr payload;
  ProcessPtr cont;
};
struct PTraceInput {  // recvtrace x(tr).P
  std::string chan, bound;
  ProcessPtr cont;
};
struct PTraceOutput { // sendtrace x<trace>.P
  std::string chan;
  TraceRef payload;
  ProcessPtr cont;
};

using ProcessNode =
    std::variant<PNil, PInput, POutput, PPar, PChoice, PRestrict, PReplicate,
                 PExec, PIsInTrace, PLangInput, PLangOutput, PTraceInput,
                 PTraceOutput>;

struct Process : ProcessNode {
  using ProcessNode::ProcessNode;
};

template <typename T>
ProcessPtr mk(T node) {
  return std::make_shared<Process>(std::move(node));
}

ProcessPtr mk_nil();
ProcessPtr mk_par(ProcessPtr a, ProcessPtr b);
ProcessPtr mk_restrict(std::string name, ProcessPtr body);

// Free channel names (restriction and name inputs bind; language/trace
// binders live in separate namespaces and do not capture channels).
std::set<std::string> free_channels(const ProcessPtr& p);
std::set<std::string> free_lang_vars(const ProcessPtr& p);
std::set<std::string> free_trace_vars(const ProcessPtr& p);

// p{z/y}: replace free channel y by z, alpha-renaming binders that would
// capture z.
ProcessPtr subst_channel(const ProcessPtr& p, const std::string& z,
                         const std::string& y);
// p{L/l}: replace the free language variable l by literal L.
ProcessPtr subst_lang(const ProcessPtr& p, const LanguagePtr& value,
                      const std::string& var);
// p{T/tr}: replace the free trace variable tr by literal T.
ProcessPtr subst_trace(const ProcessPtr& p, const Trace& value,
                       const std::string& var);

bool trace_eq(const Trace& a, const Trace& b);

} // namespace lns
