#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmnc/bits.hpp"
#include "bpmnc/condition.hpp"

namespace bpmnc {

// Lexicographic creation key. Translation hands out single-element keys in
// creation order; rewrites derive keys from the elements they replace, so the
// order of survivors never changes.
using OrderKey = std::vector<std::uint32_t>;

struct Place {
  std::string id;
  OrderKey order;
  friend bool operator==(const Place&, const Place&) = default;
};

struct Transition {
  std::string id;
  std::optional<std::string> label;  // absent for τ
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Condition guard;
  std::vector<std::string> evals;
  // Triggered by an outside caller (user task, message event). Script tasks
  // and τ transitions run inside the contract.
  bool external = false;
  OrderKey order;
  // Ids of the translated transitions this one was fused from.
  std::vector<std::string> provenance;

  bool is_tau() const { return !label.has_value(); }
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct PetriNet {
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::string source;
  std::string sink;

  std::size_t place_index(std::string_view id) const;  // npos when absent
  const Place* find_place(std::string_view id) const;
  const Transition* find_transition(std::string_view id) const;
  Transition* find_transition(std::string_view id);
  const Transition* find_label(std::string_view label) const;

  std::vector<std::string> preset(std::string_view place) const;   // producers
  std::vector<std::string> postset(std::string_view place) const;  // consumers

  std::size_t tau_count() const;

  // Sorts places and transitions by order key and the arc lists of every
  // transition by place position. Bit index of a place = its position.
  void canonicalize();

  friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

// Bit array with one bit per place, in place order.
using Marking = Bits;

Marking initial_marking(const PetriNet& net);
Marking final_marking(const PetriNet& net);
Bits input_mask(const PetriNet& net, const Transition& t);
Bits output_mask(const PetriNet& net, const Transition& t);

// Transitions whose input places are all marked and whose guard holds.
std::vector<std::string> enabled(const PetriNet& net, const Marking& m, const Assignment& assignment);
// (m AND NOT inputs) OR outputs. Guards are the caller's business.
Marking fire(const PetriNet& net, const Marking& m, std::string_view transition_id);

// Workflow-net shape: unique source without producers, unique sink without
// consumers, non-empty disjoint arc sets, every node on a source-to-sink path.
// Returns a reason on violation.
std::optional<std::string> workflow_shape_violation(const PetriNet& net);

// Text form:
//   source <id>
//   sink <id>
//   place <id> [order=1.0]
//   trans <id> [label=<L>] [guard=<expr>] [evals=P,Q] [external] [order=..] [from=a,b] in=<p,..> out=<p,..>
std::string serialize_net(const PetriNet& net);
PetriNet parse_net(std::string_view text);

// 64-bit FNV-1a over serialize_net, rendered as 16 hex digits.
std::string net_hash(const PetriNet& net);

}  // namespace bpmnc
