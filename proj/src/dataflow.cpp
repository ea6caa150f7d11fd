#include "bpmnc/dataflow.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "bpmnc/error.hpp"

namespace bpmnc {

DataflowResult analyze_dataflow(const ProcessModel& input) {
  const ProcessModel model = normalize_conditions(input);
  DataflowResult r;
  std::set<std::string> visited;
  std::set<std::string> seen_atoms;

  std::function<void(const std::string&, const Condition&)> visit = [&](const std::string& curr,
                                                                        const Condition& predicate) {
    r.guards[curr] = predicate;
    visited.insert(curr);
    r.visit_order.push_back(curr);
    const Node* node = model.find(curr);
    const bool gateway = node && is_gateway(node->kind);
    for (auto fi : model.outgoing(curr)) {
      const auto& flow = model.flows[fi];
      Condition next = Condition::truth();
      if (gateway) {
        const Condition cond = flow.condition.value_or(Condition::truth());
        for (const auto& a : cond.atoms_in_order())
          if (seen_atoms.insert(a).second) r.atom_order.push_back(a);
        next = Condition::conjoin(predicate, cond);
      }
      if (!visited.count(flow.target)) {
        visit(flow.target, next);
      } else if (!equivalent(r.guards[flow.target], next)) {
        r.diagnostics.push_back("node " + flow.target + " keeps guard " + r.guards[flow.target].str() +
                                " from its first visit; path via " + curr + " carries " + next.str());
      }
    }
  };
  visit(model.start().id, Condition::truth());
  return r;
}

namespace {

// Model flow a surviving τ stands for, by preference: a decision branch, then
// an XOR join branch, then the flow entering an AND split or leaving an AND
// join.
std::optional<std::size_t> anchor_flow(const Transition& t, const ProcessModel& model, const TranslationMap& tmap) {
  std::optional<std::size_t> split_branch, join_branch, parallel;
  for (const auto& id : t.provenance) {
    auto it = tmap.tau_origin.find(id);
    if (it == tmap.tau_origin.end()) continue;
    const TauOrigin& o = it->second;
    switch (o.kind) {
      case NodeKind::XorSplit:
      case NodeKind::EventBasedSplit:
        if (!split_branch && o.flow) split_branch = o.flow;
        break;
      case NodeKind::XorJoin:
        if (!join_branch && o.flow) join_branch = o.flow;
        break;
      case NodeKind::AndSplit:
        if (!parallel) {
          auto in = model.incoming(o.gateway);
          if (!in.empty()) parallel = in.front();
        }
        break;
      case NodeKind::AndJoin:
        if (!parallel) {
          auto out = model.outgoing(o.gateway);
          if (!out.empty()) parallel = out.front();
        }
        break;
      default:
        break;
    }
  }
  if (split_branch) return split_branch;
  if (join_branch) return join_branch;
  return parallel;
}

std::string fresh_node_id(const ProcessModel& m, const std::string& base) {
  std::string id = base;
  for (int n = 2; m.find(id); ++n) id = base + "#" + std::to_string(n);
  return id;
}

}  // namespace

GuardAttachment attach_guards(const PetriNet& reduced, const ProcessModel& input, const TranslationMap& tmap) {
  const ProcessModel model = normalize_conditions(input);
  GuardAttachment g{reduced, model, {}, {}};
  std::map<std::size_t, std::string> flow_dummy;
  for (const auto& t : reduced.transitions) {
    if (!t.is_tau()) continue;
    auto anchor = anchor_flow(t, model, tmap);
    if (!anchor) throw Error(ErrorKind::UnresolvedProvenance, "τ " + t.id + " has no gateway origin");
    auto [it, inserted] = flow_dummy.emplace(*anchor, std::string{});
    if (inserted) {
      SequenceFlow& f = g.augmented.flows[*anchor];
      Node skip{fresh_node_id(g.augmented, "skip." + f.source + "." + f.target), "", NodeKind::ScriptTask, std::nullopt};
      skip.label = skip.id;
      SequenceFlow tail{skip.id, f.target, Condition::truth(), false};
      f.target = skip.id;
      g.augmented.nodes.push_back(skip);
      g.augmented.flows.push_back(std::move(tail));
      it->second = skip.id;
    }
    g.tau_dummy[t.id] = it->second;
  }
  g.dataflow = analyze_dataflow(g.augmented);
  for (auto& t : g.net.transitions) {
    std::string node;
    if (t.is_tau()) {
      node = g.tau_dummy.at(t.id);
    } else {
      auto it = tmap.label_node.find(*t.label);
      if (it == tmap.label_node.end())
        throw Error(ErrorKind::UnresolvedProvenance, "label " + *t.label + " has no model task");
      node = it->second;
    }
    auto git = g.dataflow.guards.find(node);
    if (git == g.dataflow.guards.end())
      throw Error(ErrorKind::UnresolvedProvenance, "node " + node + " was never reached by the traversal");
    t.guard = git->second;
  }
  return g;
}

std::map<std::string, std::vector<std::string>> compute_eval_sets(const PetriNet& net) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& t : net.transitions) {
    std::set<std::string> atoms;
    for (const auto& p : t.outputs)
      for (const auto& c : net.postset(p))
        for (const auto& a : net.find_transition(c)->guard.atoms()) atoms.insert(a);
    out[t.id] = {atoms.begin(), atoms.end()};
  }
  return out;
}

const Condition& GuardTable::guard_of(const std::string& transition_id) const {
  static const Condition kTrue = Condition::truth();
  auto it = guards.find(transition_id);
  return it == guards.end() ? kTrue : it->second;
}

std::vector<std::string> GuardTable::evals_of(const std::string& transition_id) const {
  auto it = evals.find(transition_id);
  return it == evals.end() ? std::vector<std::string>{} : it->second;
}

std::pair<PetriNet, GuardTable> annotate(const PetriNet& reduced, const ProcessModel& model,
                                          const TranslationMap& tmap) {
  GuardAttachment g = attach_guards(reduced, model, tmap);
  GuardTable table;
  auto add_atom = [&](const std::string& a) {
    if (table.predicate_bits.count(a)) return;
    table.predicate_bits[a] = table.predicate_order.size();
    table.predicate_order.push_back(a);
  };
  for (const auto& a : g.dataflow.atom_order) add_atom(a);
  for (const auto& t : g.net.transitions)
    for (const auto& a : t.guard.atoms_in_order()) add_atom(a);

  auto evals = compute_eval_sets(g.net);
  for (auto& t : g.net.transitions) {
    auto atoms = evals[t.id];
    std::sort(atoms.begin(), atoms.end(), [&](const std::string& a, const std::string& b) {
      return table.predicate_bits.at(a) < table.predicate_bits.at(b);
    });
    t.evals = atoms;
    table.evals[t.id] = atoms;
    table.guards[t.id] = t.guard;
  }
  table.diagnostics = g.dataflow.diagnostics;
  table.node_guards = g.dataflow.guards;
  table.tau_dummy = g.tau_dummy;
  return {std::move(g.net), std::move(table)};
}

std::string render_guard_table(const PetriNet& net, const GuardTable& table) {
  std::ostringstream out;
  out << "predicates";
  for (const auto& a : table.predicate_order) out << ' ' << a << '=' << table.predicate_bits.at(a);
  out << '\n';
  for (const auto& t : net.transitions) {
    out << (t.label ? *t.label : "τ " + t.id) << "  guard=" << table.guard_of(t.id).str();
    auto ev = table.evals_of(t.id);
    if (!ev.empty()) {
      out << "  evals=";
      for (std::size_t i = 0; i < ev.size(); ++i) out << (i ? "," : "") << ev[i];
    }
    if (auto it = table.tau_dummy.find(t.id); it != table.tau_dummy.end()) out << "  skip=" << it->second;
    out << '\n';
  }
  for (const auto& d : table.diagnostics) out << "note: " << d << '\n';
  return out.str();
}

}  // namespace bpmnc
