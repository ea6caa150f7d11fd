#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/bits.hpp"
#include "bpmnc/bpmn_model.hpp"
#include "bpmnc/condition.hpp"
#include "bpmnc/dataflow.hpp"
#include "bpmnc/petri.hpp"

namespace bpmnc {

inline constexpr std::size_t kWordBits = 256;

enum class Backend { Optimized, Baseline };
enum class MergePolicy { Auto, Never };
// Public: called by an outside party. Internal: run by the step loop in its
// own function. Relay: unguarded τ whose token move is inlined in step.
enum class FunctionKind { Public, Internal, Relay };

std::string_view to_string(Backend b);
std::string_view to_string(FunctionKind k);

// The whole contract state is one bit string; storage word w covers bits
// [256w, 256w + 256).
struct StateCell {
  std::string id;
  std::size_t offset = 0;  // absolute bit
  std::size_t width = 0;
  std::size_t word() const { return offset / kWordBits; }
  friend bool operator==(const StateCell&, const StateCell&) = default;
};

// Static per-function operation counts along the accepting path.
struct GasProfile {
  std::size_t reads = 0;
  std::size_t writes = 0;
  std::size_t compares = 0;
  friend bool operator==(const GasProfile&, const GasProfile&) = default;
};

struct FunctionSpec {
  std::string id;    // transition id (optimized) or node id (baseline)
  std::string name;  // identifier in the emitted source
  std::optional<std::string> label;
  FunctionKind kind = FunctionKind::Public;
  // Enabled iff (state & enable_mask) == enable_expected and, when guarded,
  // some guard cube holds.
  Bits enable_mask;
  Bits enable_expected;
  bool guarded = false;
  std::vector<Cube> guard;
  Bits clear_mask;
  Bits set_mask;
  // Predicate bits reset before the computed atoms are stored.
  Bits predicate_clear;
  std::vector<std::pair<std::string, std::size_t>> computes;  // atom -> absolute bit
  GasProfile gas_profile;
  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

// Node graph the baseline contract walks when a task completes.
struct BaselineFlow {
  std::size_t target = 0;
  bool conditional = false;
  std::vector<Cube> condition;          // over absolute predicate bits
  std::optional<std::size_t> join_cell; // edge cell when the target is a join
  friend bool operator==(const BaselineFlow&, const BaselineFlow&) = default;
};

struct BaselineNode {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::UserTask;
  std::optional<std::size_t> cell;      // task cell index into state_layout
  std::vector<BaselineFlow> out;
  std::vector<std::size_t> join_cells;  // joins: one cell per incoming flow
  std::vector<std::size_t> race;        // message events: sibling cells withdrawn on firing
  // Walking on from this node can reach a decision, so predicates are needed.
  bool reads_predicates = false;
  friend bool operator==(const BaselineNode&, const BaselineNode&) = default;
};

struct BaselineGraph {
  std::vector<BaselineNode> nodes;
  std::size_t start = 0;
  friend bool operator==(const BaselineGraph&, const BaselineGraph&) = default;
};

struct ContractImage {
  Backend backend = Backend::Optimized;
  std::string name;
  std::size_t words = 1;
  std::vector<StateCell> state_layout;
  Bits initial_state;
  // Token or task-cell bits. An optimized instance is complete when these are
  // all zero.
  Bits control_region;
  Bits predicate_region;
  bool merged = false;
  std::vector<std::string> place_ids;               // optimized: marking bit -> place id
  std::map<std::string, std::size_t> predicate_bits;  // atom -> absolute bit
  std::vector<FunctionSpec> task_functions;
  std::vector<FunctionSpec> internal_functions;
  std::vector<std::string> step_order;
  std::map<std::string, std::vector<std::string>> evals_by_label;
  std::string start_label;
  std::optional<BaselineGraph> graph;
  std::string source_text;
  std::size_t code_size = 0;  // estimated bytecode bytes

  std::size_t width() const { return words * kWordBits; }
  const FunctionSpec* public_function(std::string_view label) const;
  const FunctionSpec* internal_function(std::string_view id) const;
  // Optimized: the source place feeds an internal transition, so creation has
  // to run the silent closure.
  bool initial_step() const;
  friend bool operator==(const ContractImage&, const ContractImage&) = default;
};

// Requires the annotated reduced net (guards and evals on transitions).
// Throws MarkingWidthExceeded / PredicateWidthExceeded past 256 bits.
ContractImage emit_optimized(const PetriNet& net, const GuardTable& guards, const ProcessModel& model,
                             MergePolicy policy = MergePolicy::Auto);

// One 8-bit cell per task and per incoming flow of each join, 32 cells per
// word. Decision predicates use the same eval hooks as the optimized backend.
ContractImage emit_baseline(const ProcessModel& model, const GuardTable& guards);

struct DeployConstants {
  std::uint64_t base = 32'000;
  std::uint64_t per_byte = 200;
};

// base + per_byte * code_size.
std::uint64_t estimate_deploy_cost(const ContractImage& image, const DeployConstants& c = {});

// Bytecode size estimate from the emitted source: numeric literals cost a push
// of their byte length, other tokens a small opcode budget, with extra weight
// for function entry points and packed-array indexing.
std::size_t estimate_code_size(const std::string& source);

}  // namespace bpmnc
