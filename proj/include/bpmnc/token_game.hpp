#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/petri.hpp"
#include "bpmnc/trace.hpp"
#include "bpmnc/translator.hpp"

namespace bpmnc {

// Reference semantics for conformance, independent of codegen and the VM.
// A trace conforms when some interleaving of silent steps lets every event
// fire in order and ends with a token in the sink only.
//
// Net state: place token counts plus a predicate valuation. A visible event
// fires an enabled transition with its label (external transitions only),
// resets the atoms in its eval set and stores the event's assignment (atoms
// outside the eval set make the event fail). Silent steps are internal
// transitions (script tasks and τ) whose guards hold; a script task resets
// its eval atoms to false.
struct OracleResult {
  bool conforming = false;
  std::optional<std::size_t> failing_index;  // trace.size() when incomplete
};

// Oracle over the annotated reduced net (guards and evals on transitions).
OracleResult guarded_token_game(const PetriNet& net, const std::string& start_label,
                                const std::vector<TraceEvent>& trace);

// Oracle over the unreduced translation: XOR/event branch τs carry the
// condition of their flow, every other transition is unguarded, and each
// labeled transition uses `evals_by_label` for its eval set.
OracleResult original_net_game(const PetriNet& translated, const ProcessModel& model, const TranslationMap& tmap,
                               const std::map<std::string, std::vector<std::string>>& evals_by_label,
                               const std::vector<TraceEvent>& trace);

// The translated net with branch conditions as τ guards and eval sets filled
// in, as used by original_net_game.
PetriNet guard_translation(const PetriNet& translated, const ProcessModel& model, const TranslationMap& tmap,
                           const std::map<std::string, std::vector<std::string>>& evals_by_label);

}  // namespace bpmnc
