#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/analysis.hpp"
#include "bpmnc/bpmn_model.hpp"
#include "bpmnc/petri.hpp"

namespace bpmnc {

// Where a translated τ transition came from.
struct TauOrigin {
  std::string gateway;               // node id of the gateway
  NodeKind kind{NodeKind::XorSplit};
  std::optional<std::size_t> flow;   // branch flow for XOR/event splits and XOR joins
};

struct TranslationMap {
  std::map<std::string, std::vector<std::string>> node_elements;  // node id -> place/transition ids
  std::vector<std::string> flow_place;                             // flow index -> place id
  std::map<std::string, TauOrigin> tau_origin;                     // τ id -> origin
  std::map<std::string, std::string> label_node;                   // activity label -> node id
};

struct Translation {
  PetriNet net;
  TranslationMap map;
};

// Element-wise mapping: one place per sequence flow; the start event's flow is
// the source place and every flow into an end event lands on the single sink
// place. Activities become labeled transitions; XOR splits/joins one τ per
// branch; AND splits/joins a single τ.
Translation translate(const ProcessModel& model);

// Runs the soundness/safeness oracle and throws UnsoundModel or UnsafeModel
// (carrying the witness) on violation.
SoundnessReport validate_translation(const PetriNet& net, std::size_t budget = kDefaultStateBudget);

}  // namespace bpmnc
