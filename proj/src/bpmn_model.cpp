#include "bpmnc/bpmn_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

constexpr std::pair<NodeKind, std::string_view> kKindNames[] = {
    {NodeKind::UserTask, "UserTask"},       {NodeKind::ScriptTask, "ScriptTask"},
    {NodeKind::StartEvent, "StartEvent"},   {NodeKind::EndEvent, "EndEvent"},
    {NodeKind::MessageEvent, "MessageEvent"}, {NodeKind::XorSplit, "XorSplit"},
    {NodeKind::XorJoin, "XorJoin"},         {NodeKind::EventBasedSplit, "EventBasedSplit"},
    {NodeKind::AndSplit, "AndSplit"},       {NodeKind::AndJoin, "AndJoin"},
};

// Element names from the BPMN vocabulary that this toolchain refuses.
constexpr std::string_view kUnsupported[] = {
    "timerevent", "timer", "subprocess", "boundaryevent", "boundary", "orsplit", "orjoin",
    "inclusivegateway", "complexgateway", "callactivity", "transaction",
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::MalformedDocument, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::string_view to_string(NodeKind k) {
  for (auto [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
  auto l = lower(s);
  for (auto [kind, name] : kKindNames)
    if (lower(name) == l) return kind;
  return std::nullopt;
}

const Node* ProcessModel::find(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

std::size_t ProcessModel::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return std::string::npos;
}

const Node& ProcessModel::start() const {
  for (const auto& n : nodes)
    if (n.kind == NodeKind::StartEvent) return n;
  throw Error(ErrorKind::CardinalityViolation, "model has no start event");
}

std::vector<std::size_t> ProcessModel::outgoing(std::string_view id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flows.size(); ++i)
    if (flows[i].source == id) out.push_back(i);
  return out;
}

std::vector<std::size_t> ProcessModel::incoming(std::string_view id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flows.size(); ++i)
    if (flows[i].target == id) out.push_back(i);
  return out;
}

ProcessModel parse_model(std::string_view source_text) {
  ProcessModel m;
  bool atoms_declared = false;
  std::istringstream in{std::string(source_text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto toks = split_ws(line);
    const std::string& head = toks.front();
    if (head == "name") {
      if (toks.size() != 2) malformed(lineno, "expected 'name <identifier>'");
      m.name = toks[1];
    } else if (head == "atoms") {
      if (toks.size() > 2) malformed(lineno, "atoms must be a comma-separated list without spaces");
      atoms_declared = true;
      if (toks.size() == 2) {
        std::istringstream list(toks[1]);
        std::string a;
        while (std::getline(list, a, ',')) {
          if (a.empty()) malformed(lineno, "empty atom name");
          if (std::find(m.atoms.begin(), m.atoms.end(), a) != m.atoms.end())
            malformed(lineno, "duplicate atom " + a);
          m.atoms.push_back(a);
        }
      }
    } else if (head == "node") {
      if (toks.size() < 3) malformed(lineno, "expected 'node <id> <kind>'");
      Node n;
      n.id = toks[1];
      auto kind = node_kind_from_string(toks[2]);
      if (!kind) {
        auto l = lower(toks[2]);
        if (std::find(std::begin(kUnsupported), std::end(kUnsupported), l) != std::end(kUnsupported))
          throw Error(ErrorKind::UnsupportedElement, "line " + std::to_string(lineno) + ": " + toks[2]);
        malformed(lineno, "unknown node kind " + toks[2]);
      }
      n.kind = *kind;
      n.label = n.id;
      // script= swallows the rest of the line.
      auto script_pos = line.find(" script=");
      std::string attrs_part = script_pos == std::string::npos ? line : line.substr(0, script_pos);
      if (script_pos != std::string::npos) n.script = line.substr(script_pos + 8);
      auto attrs = split_ws(attrs_part);
      for (std::size_t i = 3; i < attrs.size(); ++i) {
        if (attrs[i].starts_with("label=") && attrs[i].size() > 6)
          n.label = attrs[i].substr(6);
        else
          malformed(lineno, "unknown node attribute " + attrs[i]);
      }
      if (m.find(n.id)) malformed(lineno, "duplicate node id " + n.id);
      m.nodes.push_back(std::move(n));
    } else if (head == "flow") {
      if (toks.size() < 4 || toks[2] != "->") malformed(lineno, "expected 'flow <src> -> <tgt>'");
      SequenceFlow f{toks[1], toks[3], std::nullopt, false};
      for (std::size_t i = 4; i < toks.size(); ++i) {
        if (toks[i] == "default") {
          f.is_default = true;
        } else if (toks[i].starts_with("cond=")) {
          f.condition = Condition::parse(std::string_view(toks[i]).substr(5));
        } else {
          malformed(lineno, "unknown flow attribute " + toks[i]);
        }
      }
      m.flows.push_back(std::move(f));
    } else {
      malformed(lineno, "unknown declaration '" + head + "'");
    }
  }
  if (!atoms_declared) {
    for (const auto& f : m.flows)
      if (f.condition)
        for (const auto& a : f.condition->atoms_in_order())
          if (std::find(m.atoms.begin(), m.atoms.end(), a) == m.atoms.end()) m.atoms.push_back(a);
  }
  validate_model(m);
  return m;
}

std::string serialize_model(const ProcessModel& m) {
  std::ostringstream out;
  if (!m.name.empty()) out << "name " << m.name << "\n";
  out << "atoms ";
  for (std::size_t i = 0; i < m.atoms.size(); ++i) out << (i ? "," : "") << m.atoms[i];
  out << "\n";
  for (const auto& n : m.nodes) {
    out << "node " << n.id << " " << to_string(n.kind);
    if (n.label != n.id) out << " label=" << n.label;
    if (n.script) out << " script=" << *n.script;
    out << "\n";
  }
  for (const auto& f : m.flows) {
    out << "flow " << f.source << " -> " << f.target;
    if (f.condition) out << " cond=" << f.condition->str();
    if (f.is_default) out << " default";
    out << "\n";
  }
  return out.str();
}

void validate_model(const ProcessModel& m) {
  auto cardinality = [](const std::string& why) { throw Error(ErrorKind::CardinalityViolation, why); };

  std::set<std::string> labels;
  std::size_t starts = 0, ends = 0;
  for (const auto& n : m.nodes) {
    if (n.kind == NodeKind::StartEvent) ++starts;
    if (n.kind == NodeKind::EndEvent) ++ends;
    if (is_activity(n.kind) && !labels.insert(n.label).second)
      throw Error(ErrorKind::MalformedDocument, "duplicate activity label " + n.label);
  }
  if (starts != 1) cardinality("expected exactly one start event, found " + std::to_string(starts));
  if (ends < 1) cardinality("expected at least one end event");

  std::set<std::string> alphabet(m.atoms.begin(), m.atoms.end());
  for (const auto& f : m.flows) {
    if (!m.find(f.source))
      throw Error(ErrorKind::DanglingFlowReference, "flow source '" + f.source + "' is not a node");
    if (!m.find(f.target))
      throw Error(ErrorKind::DanglingFlowReference, "flow target '" + f.target + "' is not a node");
    if (f.source == f.target) cardinality("self-loop flow on " + f.source);
    const Node& src = *m.find(f.source);
    if (src.kind != NodeKind::XorSplit) {
      if (f.is_default) cardinality("default flow outside a decision gateway at " + f.source);
      if (f.condition && !f.condition->is_true())
        cardinality("conditional flow outside a decision gateway at " + f.source);
    }
    if (f.condition)
      for (const auto& a : f.condition->atoms())
        if (!alphabet.count(a)) throw Error(ErrorKind::MalformedDocument, "undeclared atom " + a);
  }

  for (const auto& n : m.nodes) {
    auto in = m.incoming(n.id).size(), out = m.outgoing(n.id).size();
    const std::string who = std::string(to_string(n.kind)) + " " + n.id;
    switch (n.kind) {
      case NodeKind::StartEvent:
        if (in != 0 || out != 1) cardinality(who + " needs 0 incoming and 1 outgoing flow");
        break;
      case NodeKind::EndEvent:
        if (in != 1 || out != 0) cardinality(who + " needs 1 incoming and 0 outgoing flows");
        break;
      case NodeKind::UserTask:
      case NodeKind::ScriptTask:
      case NodeKind::MessageEvent:
        if (in != 1 || out != 1) cardinality(who + " needs exactly 1 incoming and 1 outgoing flow");
        break;
      case NodeKind::XorSplit:
      case NodeKind::AndSplit:
      case NodeKind::EventBasedSplit:
        if (in != 1 || out < 2) cardinality(who + " needs 1 incoming and at least 2 outgoing flows");
        break;
      case NodeKind::XorJoin:
      case NodeKind::AndJoin:
        if (in < 2 || out != 1) cardinality(who + " needs at least 2 incoming and 1 outgoing flow");
        break;
    }
    if (n.kind == NodeKind::EventBasedSplit)
      for (auto fi : m.outgoing(n.id))
        if (m.find(m.flows[fi].target)->kind != NodeKind::MessageEvent)
          throw Error(ErrorKind::UnsupportedElement,
                      "event-based gateway " + n.id + " must be followed by message events only");
  }

  // Connectedness: forward from start, backward from the end events.
  std::set<std::string> fwd{m.start().id}, bwd;
  std::vector<std::string> stack{m.start().id};
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    for (auto fi : m.outgoing(id))
      if (fwd.insert(m.flows[fi].target).second) stack.push_back(m.flows[fi].target);
  }
  for (const auto& n : m.nodes)
    if (n.kind == NodeKind::EndEvent) {
      bwd.insert(n.id);
      stack.push_back(n.id);
    }
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    for (auto fi : m.incoming(id))
      if (bwd.insert(m.flows[fi].source).second) stack.push_back(m.flows[fi].source);
  }
  for (const auto& n : m.nodes)
    if (!fwd.count(n.id) || !bwd.count(n.id))
      cardinality("node " + n.id + " is not on a path from the start event to an end event");
}

ProcessModel normalize_conditions(const ProcessModel& m) {
  ProcessModel out = m;
  for (const auto& n : out.nodes) {
    if (n.kind != NodeKind::XorSplit) continue;
    auto outs = out.outgoing(n.id);
    std::optional<std::size_t> def;
    std::vector<Condition> siblings;
    for (auto fi : outs) {
      auto& f = out.flows[fi];
      if (f.is_default) {
        if (def) throw Error(ErrorKind::DefaultFlowAmbiguity, "gateway " + n.id + " has several default flows");
        def = fi;
      } else {
        if (!f.condition) f.condition = Condition::truth();
        siblings.push_back(Condition::negate(*f.condition));
      }
    }
    // Taken when no sibling holds; for two branches this is plain negation.
    if (def) out.flows[*def].condition = Condition::conjoin(siblings);
  }
  for (auto& f : out.flows)
    if (!f.condition) f.condition = Condition::truth();
  return out;
}

}  // namespace bpmnc
