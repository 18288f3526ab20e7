#pragma once

#include <string>
#include <vector>

#include "lns/process.hpp"

namespace lns {

// Canonical representative of a process modulo structural congruence:
//   - parallel composition flattened, nil threads dropped
//   - restrictions hoisted to the front (binders are made unique first, so
//     hoisting never captures), unused restrictions dropped
//   - a thread equal to a fresh copy of a sibling replication (after
//     re-encapsulating its private restrictions) is absorbed into it
//   - threads ordered and restricted names numbered by choosing the
//     lexicographically least printed form over binder numberings
// Continuations under prefixes are canonicalized recursively; choice branch
// order is preserved (+ is not commutative).
struct NormalForm {
  std::vector<std::string> restricted; // internal binder names, canonical order
  std::vector<ProcessPtr> threads;     // canonical order
  std::string key_;                    // injective canonical text (Key mode)

  const std::string& key() const { return key_; }
  std::string display() const;
  ProcessPtr to_process() const;
  bool operator==(const NormalForm& o) const { return key_ == o.key_; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
};

NormalForm normalize(const ProcessPtr& p);

// Canonical rebuild of a process (same pipeline, result as a process tree).
ProcessPtr canon_process(const ProcessPtr& p);

} // namespace lns
