#pragma once

#include <map>
#include <string>
#include <vector>

#include "bpmnc/bpmn_model.hpp"
#include "bpmnc/petri.hpp"
#include "bpmnc/translator.hpp"

namespace bpmnc {

struct DataflowResult {
  std::map<std::string, Condition> guards;  // node id -> guard
  std::vector<std::string> visit_order;
  // Atoms in the order the traversal first conjoins them.
  std::vector<std::string> atom_order;
  // Revisits that arrive with a predicate not equivalent to the recorded guard.
  std::vector<std::string> diagnostics;
};

// Depth-first traversal from the start event over successors in flow
// declaration order. A gateway passes predicate & cond(flow) on to each
// successor, any other node passes TRUE. A node's guard is fixed at its first
// visit.
DataflowResult analyze_dataflow(const ProcessModel& model);

struct GuardAttachment {
  PetriNet net;                                   // reduced net with guards set
  ProcessModel augmented;                         // model plus one skip task per guarded anchor
  DataflowResult dataflow;                        // analysis of `augmented`
  std::map<std::string, std::string> tau_dummy;   // τ id -> skip node id
};

// Labeled transitions take the guard of their task; each τ takes the guard of
// a skip task inserted on the model flow it stands for. Throws
// Error(UnresolvedProvenance) when a transition cannot be traced back.
GuardAttachment attach_guards(const PetriNet& reduced, const ProcessModel& model, const TranslationMap& tmap);

// evals(t): atoms of the guards of every transition consuming from a place t
// produces into.
std::map<std::string, std::vector<std::string>> compute_eval_sets(const PetriNet& net);

struct GuardTable {
  std::map<std::string, Condition> guards;                  // transition id -> guard
  std::map<std::string, std::vector<std::string>> evals;    // transition id -> atoms, bit order
  std::vector<std::string> predicate_order;
  std::map<std::string, std::size_t> predicate_bits;
  std::vector<std::string> diagnostics;
  std::map<std::string, Condition> node_guards;              // augmented model node id -> guard
  std::map<std::string, std::string> tau_dummy;

  // TRUE / empty for unknown ids.
  const Condition& guard_of(const std::string& transition_id) const;
  std::vector<std::string> evals_of(const std::string& transition_id) const;
};

// attach_guards + compute_eval_sets. Returns the annotated net (guards and
// evals stored on the transitions) and the table.
std::pair<PetriNet, GuardTable> annotate(const PetriNet& reduced, const ProcessModel& model,
                                          const TranslationMap& tmap);

std::string render_guard_table(const PetriNet& net, const GuardTable& table);

}  // namespace bpmnc
