#include "bpmnc/petri.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

std::string join(const std::vector<std::string>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(sep);
    out += v[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string render_key(const OrderKey& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(k[i]);
  }
  return out;
}

OrderKey parse_key(std::string_view s) {
  OrderKey k;
  for (const auto& part : split(s, '.')) k.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  return k;
}

}  // namespace

std::size_t PetriNet::place_index(std::string_view id) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].id == id) return i;
  return std::string::npos;
}

const Place* PetriNet::find_place(std::string_view id) const {
  auto i = place_index(id);
  return i == std::string::npos ? nullptr : &places[i];
}

const Transition* PetriNet::find_transition(std::string_view id) const {
  for (const auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

Transition* PetriNet::find_transition(std::string_view id) {
  for (auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

const Transition* PetriNet::find_label(std::string_view label) const {
  for (const auto& t : transitions)
    if (t.label && *t.label == label) return &t;
  return nullptr;
}

std::vector<std::string> PetriNet::preset(std::string_view place) const {
  std::vector<std::string> out;
  for (const auto& t : transitions)
    if (std::find(t.outputs.begin(), t.outputs.end(), place) != t.outputs.end()) out.push_back(t.id);
  return out;
}

std::vector<std::string> PetriNet::postset(std::string_view place) const {
  std::vector<std::string> out;
  for (const auto& t : transitions)
    if (std::find(t.inputs.begin(), t.inputs.end(), place) != t.inputs.end()) out.push_back(t.id);
  return out;
}

std::size_t PetriNet::tau_count() const {
  return static_cast<std::size_t>(
      std::count_if(transitions.begin(), transitions.end(), [](const Transition& t) { return t.is_tau(); }));
}

void PetriNet::canonicalize() {
  auto by_key = [](const auto& a, const auto& b) { return std::tie(a.order, a.id) < std::tie(b.order, b.id); };
  std::stable_sort(places.begin(), places.end(), by_key);
  std::stable_sort(transitions.begin(), transitions.end(), by_key);
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < places.size(); ++i) pos[places[i].id] = i;
  auto by_pos = [&](const std::string& a, const std::string& b) { return pos[a] < pos[b]; };
  for (auto& t : transitions) {
    std::sort(t.inputs.begin(), t.inputs.end(), by_pos);
    std::sort(t.outputs.begin(), t.outputs.end(), by_pos);
  }
}

Marking initial_marking(const PetriNet& net) {
  Marking m(net.places.size());
  auto i = net.place_index(net.source);
  if (i != std::string::npos) m.set(i);
  return m;
}

Marking final_marking(const PetriNet& net) {
  Marking m(net.places.size());
  auto i = net.place_index(net.sink);
  if (i != std::string::npos) m.set(i);
  return m;
}

Bits input_mask(const PetriNet& net, const Transition& t) {
  Bits b(net.places.size());
  for (const auto& p : t.inputs) b.set(net.place_index(p));
  return b;
}

Bits output_mask(const PetriNet& net, const Transition& t) {
  Bits b(net.places.size());
  for (const auto& p : t.outputs) b.set(net.place_index(p));
  return b;
}

std::vector<std::string> enabled(const PetriNet& net, const Marking& m, const Assignment& assignment) {
  if (m.width() != net.places.size())
    throw Error(ErrorKind::WidthMismatch, "marking width " + std::to_string(m.width()) + " vs " +
                                              std::to_string(net.places.size()) + " places");
  std::vector<std::string> out;
  for (const auto& t : net.transitions)
    if (m.contains(input_mask(net, t)) && t.guard.eval(assignment)) out.push_back(t.id);
  return out;
}

Marking fire(const PetriNet& net, const Marking& m, std::string_view transition_id) {
  if (m.width() != net.places.size()) throw Error(ErrorKind::WidthMismatch, "marking width mismatch");
  const Transition* t = net.find_transition(transition_id);
  if (!t) throw Error(ErrorKind::NotEnabled, "no transition " + std::string(transition_id));
  Bits in = input_mask(net, *t);
  if (!m.contains(in)) throw Error(ErrorKind::NotEnabled, std::string(transition_id) + " lacks input tokens");
  return (m & ~in) | output_mask(net, *t);
}

std::optional<std::string> workflow_shape_violation(const PetriNet& net) {
  if (!net.find_place(net.source)) return "source place " + net.source + " missing";
  if (!net.find_place(net.sink)) return "sink place " + net.sink + " missing";
  if (!net.preset(net.source).empty()) return "source place has producers";
  if (!net.postset(net.sink).empty()) return "sink place has consumers";
  std::set<std::string> ids;
  for (const auto& p : net.places)
    if (!ids.insert(p.id).second) return "duplicate id " + p.id;
  for (const auto& t : net.transitions) {
    if (!ids.insert(t.id).second) return "duplicate id " + t.id;
    if (t.inputs.empty() || t.outputs.empty()) return "transition " + t.id + " has an empty arc set";
    for (const auto& p : t.inputs) {
      if (!net.find_place(p)) return "transition " + t.id + " reads unknown place " + p;
      if (std::find(t.outputs.begin(), t.outputs.end(), p) != t.outputs.end())
        return "place " + p + " is both input and output of " + t.id;
    }
    for (const auto& p : t.outputs)
      if (!net.find_place(p)) return "transition " + t.id + " writes unknown place " + p;
  }
  // Forward from the source and backward from the sink over the bipartite graph.
  std::set<std::string> fwd{net.source}, bwd{net.sink};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : net.transitions) {
      bool f = std::any_of(t.inputs.begin(), t.inputs.end(), [&](auto& p) { return fwd.count(p); });
      if (f && fwd.insert(t.id).second) changed = true;
      if (fwd.count(t.id))
        for (const auto& p : t.outputs) changed |= fwd.insert(p).second;
      bool b = std::any_of(t.outputs.begin(), t.outputs.end(), [&](auto& p) { return bwd.count(p); });
      if (b && bwd.insert(t.id).second) changed = true;
      if (bwd.count(t.id))
        for (const auto& p : t.inputs) changed |= bwd.insert(p).second;
    }
  }
  for (const auto& p : net.places)
    if (!fwd.count(p.id) || !bwd.count(p.id)) return "place " + p.id + " is not on a source-to-sink path";
  for (const auto& t : net.transitions)
    if (!fwd.count(t.id) || !bwd.count(t.id)) return "transition " + t.id + " is not on a source-to-sink path";
  return std::nullopt;
}

std::string serialize_net(const PetriNet& net) {
  std::ostringstream out;
  out << "source " << net.source << "\n";
  out << "sink " << net.sink << "\n";
  for (const auto& p : net.places) {
    out << "place " << p.id;
    if (!p.order.empty()) out << " order=" << render_key(p.order);
    out << "\n";
  }
  for (const auto& t : net.transitions) {
    out << "trans " << t.id;
    if (t.label) out << " label=" << *t.label;
    if (!t.guard.is_true()) out << " guard=" << t.guard.str();
    if (!t.evals.empty()) out << " evals=" << join(t.evals);
    if (t.external) out << " external";
    if (!t.order.empty()) out << " order=" << render_key(t.order);
    if (!t.provenance.empty()) out << " from=" << join(t.provenance);
    out << " in=" << join(t.inputs) << " out=" << join(t.outputs) << "\n";
  }
  return out.str();
}

PetriNet parse_net(std::string_view text) {
  PetriNet net;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedDocument, "net line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head.front() == '#') continue;
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (head == "source" || head == "sink") {
      if (toks.size() != 1) fail("expected one id");
      (head == "source" ? net.source : net.sink) = toks[0];
    } else if (head == "place") {
      if (toks.empty()) fail("expected place id");
      Place p{toks[0], {}};
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].starts_with("order=")) p.order = parse_key(toks[i].substr(6));
        else fail("unknown place attribute " + toks[i]);
      }
      net.places.push_back(std::move(p));
    } else if (head == "trans") {
      if (toks.empty()) fail("expected transition id");
      Transition t;
      t.id = toks[0];
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& a = toks[i];
        if (a.starts_with("label=")) t.label = a.substr(6);
        else if (a.starts_with("guard=")) t.guard = Condition::parse(a.substr(6));
        else if (a.starts_with("evals=")) t.evals = split(a.substr(6));
        else if (a == "external") t.external = true;
        else if (a.starts_with("order=")) t.order = parse_key(a.substr(6));
        else if (a.starts_with("from=")) t.provenance = split(a.substr(5));
        else if (a.starts_with("in=")) t.inputs = split(a.substr(3));
        else if (a.starts_with("out=")) t.outputs = split(a.substr(4));
        else fail("unknown transition attribute " + a);
      }
      net.transitions.push_back(std::move(t));
    } else {
      fail("unknown declaration " + head);
    }
  }
  return net;
}

std::string net_hash(const PetriNet& net) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_net(net)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bpmnc
