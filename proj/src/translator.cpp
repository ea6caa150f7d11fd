#include "bpmnc/translator.hpp"

#include <set>

#include "bpmnc/error.hpp"

namespace bpmnc {

Translation translate(const ProcessModel& model) {
  Translation tr;
  PetriNet& net = tr.net;
  TranslationMap& map = tr.map;
  const auto nflows = static_cast<std::uint32_t>(model.flows.size());

  net.sink = "sink";
  std::set<std::string> used{net.sink};
  bool has_sink = false;
  for (std::uint32_t i = 0; i < nflows; ++i) {
    const auto& f = model.flows[i];
    const Node* tgt = model.find(f.target);
    const Node* src = model.find(f.source);
    if (!tgt || !src) throw Error(ErrorKind::DanglingFlowReference, f.source + " -> " + f.target);
    if (tgt->kind == NodeKind::EndEvent) {
      map.flow_place.push_back(net.sink);
      if (!has_sink) {
        net.places.push_back({net.sink, {nflows}});
        has_sink = true;
      }
      map.node_elements[tgt->id].push_back(net.sink);
      if (src->kind == NodeKind::StartEvent) {
        net.source = net.sink;
        map.node_elements[src->id].push_back(net.sink);
      }
      continue;
    }
    std::string id = "p." + f.source + "." + f.target;
    for (int n = 2; used.count(id); ++n) id = "p." + f.source + "." + f.target + "#" + std::to_string(n);
    used.insert(id);
    net.places.push_back({id, {i}});
    map.flow_place.push_back(id);
    if (src->kind == NodeKind::StartEvent) {
      net.source = id;
      map.node_elements[src->id].push_back(id);
    }
  }

  std::uint32_t next_key = nflows + 1;
  auto add = [&](Transition t, const std::string& node_id) {
    t.order = {next_key++};
    t.provenance = {t.id};
    if (used.count(t.id)) throw Error(ErrorKind::MalformedDocument, "id clash on " + t.id);
    used.insert(t.id);
    map.node_elements[node_id].push_back(t.id);
    net.transitions.push_back(std::move(t));
  };
  auto in_places = [&](const std::string& id) {
    std::vector<std::string> v;
    for (auto fi : model.incoming(id)) v.push_back(map.flow_place[fi]);
    return v;
  };
  auto out_places = [&](const std::string& id) {
    std::vector<std::string> v;
    for (auto fi : model.outgoing(id)) v.push_back(map.flow_place[fi]);
    return v;
  };

  for (const auto& n : model.nodes) {
    switch (n.kind) {
      case NodeKind::StartEvent:
      case NodeKind::EndEvent:
        break;
      case NodeKind::UserTask:
      case NodeKind::ScriptTask:
      case NodeKind::MessageEvent: {
        Transition t;
        t.id = n.id;
        t.label = n.label;
        t.external = is_external(n.kind);
        t.inputs = in_places(n.id);
        t.outputs = out_places(n.id);
        map.label_node[n.label] = n.id;
        add(std::move(t), n.id);
        break;
      }
      case NodeKind::XorSplit:
      case NodeKind::EventBasedSplit:
        for (auto fi : model.outgoing(n.id)) {
          Transition t;
          t.id = "t." + n.id + "." + model.flows[fi].target;
          t.inputs = in_places(n.id);
          t.outputs = {map.flow_place[fi]};
          map.tau_origin[t.id] = {n.id, n.kind, fi};
          add(std::move(t), n.id);
        }
        break;
      case NodeKind::XorJoin:
        for (auto fi : model.incoming(n.id)) {
          Transition t;
          t.id = "t." + n.id + "." + model.flows[fi].source;
          t.inputs = {map.flow_place[fi]};
          t.outputs = out_places(n.id);
          map.tau_origin[t.id] = {n.id, n.kind, fi};
          add(std::move(t), n.id);
        }
        break;
      case NodeKind::AndSplit:
      case NodeKind::AndJoin: {
        Transition t;
        t.id = "t." + n.id;
        t.inputs = in_places(n.id);
        t.outputs = out_places(n.id);
        map.tau_origin[t.id] = {n.id, n.kind, std::nullopt};
        add(std::move(t), n.id);
        break;
      }
    }
  }
  // Arc lists may name the sink twice (e.g. an AND split straight into two end
  // events); keep them as multisets so the oracle sees the double token.
  net.canonicalize();
  return tr;
}

SoundnessReport validate_translation(const PetriNet& net, std::size_t budget) {
  SoundnessReport r = check_soundness_and_safeness(net, budget);
  auto render = [](const std::vector<std::string>& w) {
    std::string s = "<";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i];
    return s + ">";
  };
  if (!r.safe) throw Error(ErrorKind::UnsafeModel, "reachable marking with two tokens after " + render(r.witness), r.witness);
  if (!r.sound)
    throw Error(ErrorKind::UnsoundModel, "final marking unreachable after " + render(r.witness), r.witness);
  return r;
}

}  // namespace bpmnc
