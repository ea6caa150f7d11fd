#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmnc/condition.hpp"

namespace bpmnc {

enum class NodeKind {
  UserTask,
  ScriptTask,
  StartEvent,
  EndEvent,
  MessageEvent,
  XorSplit,
  XorJoin,
  EventBasedSplit,
  AndSplit,
  AndJoin,
};

std::string_view to_string(NodeKind k);
std::optional<NodeKind> node_kind_from_string(std::string_view s);

inline bool is_gateway(NodeKind k) {
  return k == NodeKind::XorSplit || k == NodeKind::XorJoin || k == NodeKind::EventBasedSplit ||
         k == NodeKind::AndSplit || k == NodeKind::AndJoin;
}
inline bool is_split(NodeKind k) {
  return k == NodeKind::XorSplit || k == NodeKind::EventBasedSplit || k == NodeKind::AndSplit;
}
inline bool is_join(NodeKind k) { return k == NodeKind::XorJoin || k == NodeKind::AndJoin; }
// Nodes that become labeled transitions.
inline bool is_activity(NodeKind k) {
  return k == NodeKind::UserTask || k == NodeKind::ScriptTask || k == NodeKind::MessageEvent;
}
// Activities triggered by an outside caller.
inline bool is_external(NodeKind k) { return k == NodeKind::UserTask || k == NodeKind::MessageEvent; }

struct Node {
  std::string id;
  std::string label;
  NodeKind kind{NodeKind::UserTask};
  std::optional<std::string> script;

  friend bool operator==(const Node&, const Node&) = default;
};

struct SequenceFlow {
  std::string source;
  std::string target;
  // Absent until normalize_conditions() runs (or when unlabeled in source).
  std::optional<Condition> condition;
  bool is_default = false;

  friend bool operator==(const SequenceFlow& a, const SequenceFlow& b) {
    return a.source == b.source && a.target == b.target && a.is_default == b.is_default &&
           a.condition.has_value() == b.condition.has_value() &&
           (!a.condition || *a.condition == *b.condition);
  }
};

struct ProcessModel {
  std::string name;
  std::vector<std::string> atoms;  // declared predicate alphabet, in order
  std::vector<Node> nodes;
  std::vector<SequenceFlow> flows;

  const Node* find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // npos when absent
  const Node& start() const;
  std::vector<std::size_t> outgoing(std::string_view id) const;  // flow indices
  std::vector<std::size_t> incoming(std::string_view id) const;

  friend bool operator==(const ProcessModel&, const ProcessModel&) = default;
};

// Reads the line-oriented model document:
//   name <identifier>
//   atoms P,Q
//   node <id> <kind> [label=<L>] [script=<text>]
//   flow <src> -> <tgt> [cond=<expr>] [default]
// Lines starting with '#' are comments. The result is validated.
ProcessModel parse_model(std::string_view source_text);

// Inverse of parse_model; parse_model(serialize_model(m)) == m.
std::string serialize_model(const ProcessModel& m);

// Structural checks: single start, at least one end, referential integrity,
// per-kind cardinalities, every node on a start-to-end path, condition atoms
// drawn from the declared alphabet. Throws Error.
void validate_model(const ProcessModel& m);

// Gives every flow an explicit condition: TRUE where unlabeled, and for the
// default flow of a decision gateway the conjunction of its siblings'
// negated conditions.
ProcessModel normalize_conditions(const ProcessModel& m);

}  // namespace bpmnc
