#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bpmnc/error.hpp"
#include "bpmnc/petri.hpp"
#include "bpmnc/event_log.hpp"
#include "bpmnc/pipeline.hpp"
#include "bpmnc/vm.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(BPMNC_FIXTURE_DIR) + "/" + name; }

inline bpmnc::Compilation compile_fixture(const std::string& name,
                                          bpmnc::MergePolicy merge = bpmnc::MergePolicy::Auto) {
  bpmnc::CompileOptions o;
  o.merge = merge;
  return bpmnc::compile_model(bpmnc::load_model(fixture(name)), o);
}

// The four evaluation models with their log files.
struct FixtureCase {
  std::string model;
  std::string log;
  std::size_t conforming;
  std::size_t nonconforming;
};

inline const std::vector<FixtureCase>& fixture_cases() {
  static const std::vector<FixtureCase> cases{
      {"supply_chain.bpmn", "logs/supply_chain.log", 5, 57},
      {"incident.bpmn", "logs/incident.log", 4, 120},
      {"insurance.bpmn", "logs/insurance.log", 17, 262},
      {"invoicing.bpmn", "logs/invoicing.log", 49, 0},
  };
  return cases;
}

// Reachability by plain multiset token counting, written independently of
// the analysis module. Sound: the final marking is reachable from every
// reachable marking. Safe: no reachable marking puts two tokens anywhere.
struct NaiveVerdict {
  bool sound = false;
  bool safe = false;
  bool exhausted = false;  // more than `budget` markings
};

inline NaiveVerdict naive_enumerate(const bpmnc::PetriNet& net, std::size_t budget) {
  using Counts = std::vector<int>;
  auto index = [&](const std::string& id) { return static_cast<std::size_t>(net.place_index(id)); };
  Counts init(net.places.size(), 0), fin(net.places.size(), 0);
  init[index(net.source)] = 1;
  fin[index(net.sink)] = 1;
  auto successors = [&](const Counts& m) {
    std::vector<Counts> out;
    for (const auto& t : net.transitions) {
      bool ok = true;
      for (const auto& p : t.inputs) ok = ok && m[index(p)] > 0;
      if (!ok) continue;
      Counts n = m;
      for (const auto& p : t.inputs) --n[index(p)];
      for (const auto& p : t.outputs) ++n[index(p)];
      out.push_back(n);
    }
    return out;
  };
  auto reach = [&](const Counts& from, std::set<Counts>& seen) {
    std::vector<Counts> stack{from};
    seen.insert(from);
    while (!stack.empty()) {
      Counts m = stack.back();
      stack.pop_back();
      for (auto& n : successors(m))
        if (seen.insert(n).second) {
          if (seen.size() > budget) return false;
          stack.push_back(n);
        }
    }
    return true;
  };
  NaiveVerdict v;
  std::set<Counts> all;
  if (!reach(init, all)) {
    v.exhausted = true;
    return v;
  }
  v.safe = true;
  for (const auto& m : all)
    for (int c : m) v.safe = v.safe && c <= 1;
  v.sound = true;
  for (const auto& m : all) {
    std::set<Counts> from;
    reach(m, from);
    if (!from.count(fin)) {
      v.sound = false;
      break;
    }
  }
  return v;
}

// Random net over n places; place 0 is the source and n-1 the sink.
inline bpmnc::PetriNet random_net(std::mt19937_64& rng, std::size_t n) {
  bpmnc::PetriNet net;
  for (std::size_t i = 0; i < n; ++i) net.places.push_back({"p" + std::to_string(i), {static_cast<std::uint32_t>(i)}});
  net.source = "p0";
  net.sink = "p" + std::to_string(n - 1);
  std::uniform_int_distribution<std::size_t> count(1, 2), place(0, n - 1);
  std::size_t transitions = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  for (std::size_t t = 0; t < transitions; ++t) {
    bpmnc::Transition tr;
    tr.id = "t" + std::to_string(t);
    tr.order = {static_cast<std::uint32_t>(n + t)};
    std::set<std::string> in, out;
    for (std::size_t k = count(rng); k-- > 0;) in.insert("p" + std::to_string(place(rng)));
    for (std::size_t k = count(rng); k-- > 0;) out.insert("p" + std::to_string(place(rng)));
    tr.inputs.assign(in.begin(), in.end());
    tr.outputs.assign(out.begin(), out.end());
    net.transitions.push_back(tr);
  }
  return net;
}

struct RejectionStats {
  std::size_t rejections = 0;
  std::size_t violations = 0;  // rejected events that changed state or charged writes
};

// Drives instances of every fixture model to random prefixes of their logged
// traces and fires random events with random assignments until `target`
// rejections have been observed on each backend combined.
inline RejectionStats probe_rejections(std::uint64_t seed, std::size_t target) {
  using namespace bpmnc;
  std::mt19937_64 rng(seed);
  RejectionStats stats;
  struct Model {
    Compilation c;
    EventLog log;
    std::vector<std::string> labels, atoms;
  };
  std::vector<Model> models;
  for (const auto& fc : fixture_cases()) {
    Model m{compile_fixture(fc.model), read_log_file(fixture(fc.log)), {}, {}};
    for (const auto& f : m.c.optimized.task_functions)
      if (f.label) m.labels.push_back(*f.label);
    for (const auto& [a, bit] : m.c.optimized.predicate_bits) m.atoms.push_back(a);
    models.push_back(std::move(m));
  }
  while (stats.rejections < target) {
    const Model& m = models[rng() % models.size()];
    const auto& t = m.log.traces[rng() % m.log.traces.size()];
    for (const ContractImage* img : {&m.c.optimized, &m.c.baseline}) {
      InstanceState inst = create_instance(*img);
      std::size_t prefix = rng() % t.events.size();
      for (std::size_t i = 1; i < prefix && inst.status == InstanceStatus::Running; ++i)
        submit_event(inst, t.events[i].label, t.events[i].assignment);
      if (inst.status != InstanceStatus::Running) continue;
      Assignment a;
      for (const auto& atom : m.atoms)
        if (rng() % 3 == 0) a[atom] = rng() % 2;
      const std::string before = state_hash(inst);
      const GasLedger gas = inst.gas;
      EventResult r = submit_event(inst, m.labels[rng() % m.labels.size()], a);
      if (r.accepted) continue;
      ++stats.rejections;
      if (state_hash(inst) != before || inst.gas.write != gas.write || inst.gas.base != gas.base) ++stats.violations;
    }
  }
  return stats;
}

}  // namespace testing_support
