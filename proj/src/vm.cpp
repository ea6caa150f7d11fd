#include "bpmnc/vm.hpp"

#include <cstdio>
#include <set>

#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

// Gas bookkeeping for one contract call.
class Call {
 public:
  Call(const GasModel& g, std::size_t words) : g_(g), touched_(words, false) {}

  void read_word(std::size_t w) {
    if (w < touched_.size() && !touched_[w]) {
      touched_[w] = true;
      reads += g_.read;
    }
  }
  void read_mask(const Bits& mask) {
    for (std::size_t w = 0; w < touched_.size(); ++w)
      if (word_of(mask, w).any()) read_word(w);
  }
  void compare(std::size_t n = 1) { compares += g_.compare * n; }
  // Cost of storing `next` into a word currently holding `current`.
  void store(const Bits& current, const Bits& next) {
    writes += (current.none() && next.any()) ? g_.write_set : g_.write_reset;
  }

  static Bits word_of(const Bits& b, std::size_t w) {
    Bits r(kWordBits);
    for (std::size_t i = 0; i < kWordBits; ++i)
      if (b.test(w * kWordBits + i)) r.set(i);
    return r;
  }

  std::uint64_t reads = 0, writes = 0, compares = 0;

 private:
  const GasModel& g_;
  std::vector<bool> touched_;
};

bool cubes_hold(const std::vector<Cube>& cubes, const Bits& state, Call& call) {
  std::size_t evaluated = 0;
  for (const auto& c : cubes) {
    ++evaluated;
    if ((state & c.mask) == c.expected) {
      call.compare(evaluated);
      return true;
    }
  }
  call.compare(std::max<std::size_t>(evaluated, 1));
  return false;
}

// Guarded check of an enable condition against `state`, charging reads of the
// storage words it inspects when `from_storage` is set.
bool check_enabled(const FunctionSpec& f, const Bits& state, Call& call, bool from_storage) {
  if (from_storage) call.read_mask(f.enable_mask);
  call.compare();
  if ((state & f.enable_mask) != f.enable_expected) return false;
  if (!f.guarded) return true;
  if (from_storage)
    for (const auto& c : f.guard) call.read_mask(c.mask);
  return cubes_hold(f.guard, state, call);
}

std::optional<std::string> assignment_violation(const FunctionSpec& f, const Assignment& a) {
  for (const auto& [atom, value] : a) {
    (void)value;
    bool ok = false;
    for (const auto& c : f.computes) ok = ok || c.first == atom;
    if (!ok) return "atom " + atom + " is not evaluated by " + *f.label;
  }
  return std::nullopt;
}

Bits apply_preds(Bits state, const FunctionSpec& f, const Assignment& a) {
  state = state & ~f.predicate_clear;
  for (const auto& [atom, bit] : f.computes) {
    auto it = a.find(atom);
    if (it != a.end() && it->second) state.set(bit);
  }
  return state;
}

// Per-word stores from `before` to `after`; returns the write gas. Words in
// `always` are stored even when unchanged (the emitted source writes them
// unconditionally).
void store_words(Call& call, const Bits& before, const Bits& after, std::size_t words,
                 const std::set<std::size_t>& always) {
  for (std::size_t w = 0; w < words; ++w) {
    Bits cur = Call::word_of(before, w), nxt = Call::word_of(after, w);
    if (cur != nxt || always.count(w)) call.store(cur, nxt);
  }
}

// ---- optimized backend ----

std::size_t run_step(const ContractImage& img, Bits& tmp, Call& call) {
  call.compare();  // end-of-process test
  if ((tmp & img.control_region).none()) return 0;
  std::size_t fired = 0;
  const std::size_t cap = 64 * (img.internal_functions.size() + 1) + 1024;
  for (bool progress = true; progress && fired < cap;) {
    progress = false;
    for (const auto& id : img.step_order) {
      const FunctionSpec& f = *img.internal_function(id);
      if (!check_enabled(f, tmp, call, false)) continue;
      tmp = (tmp & ~f.clear_mask) | f.set_mask;
      // Internal evaluations have no outside input: their atoms read false.
      tmp = tmp & ~f.predicate_clear;
      ++fired;
      progress = true;
      break;
    }
  }
  call.compare();  // loop exit
  return fired;
}

EventResult submit_optimized(InstanceState& inst, const FunctionSpec& f, const Assignment& a, const GasModel& g) {
  const ContractImage& img = *inst.image;
  Call call(g, img.words);
  EventResult r;
  if (!check_enabled(f, inst.storage, call, true)) {
    r.diagnostic = *f.label + " is not enabled";
  } else if (auto why = assignment_violation(f, a)) {
    r.diagnostic = *why;
  } else {
    Bits tmp = (inst.storage & ~f.clear_mask) | f.set_mask;
    call.compare(f.computes.size());
    if (!f.computes.empty()) {
      call.read_mask(f.predicate_clear);
      tmp = apply_preds(tmp, f, a);
    }
    run_step(img, tmp, call);
    std::set<std::size_t> always{0};  // marking (or the merged word) is always stored
    if (!img.merged && img.words > 1) {
      call.read_word(1);
      call.compare();  // predicates change test
    }
    store_words(call, inst.storage, tmp, img.words, always);
    inst.storage = tmp;
    r.accepted = true;
    if ((tmp & img.control_region).none()) inst.status = InstanceStatus::Completed;
  }
  if (r.accepted) inst.gas.base += g.tx_base;
  inst.gas.read += call.reads;
  inst.gas.write += call.writes;
  inst.gas.compare += call.compares;
  r.gas = call.reads + call.writes + call.compares + (r.accepted ? g.tx_base : 0);
  r.completed = inst.status == InstanceStatus::Completed;
  return r;
}

// ---- baseline backend ----

class Walker {
 public:
  Walker(const ContractImage& img, Bits& state, Call& call) : img_(img), g_(*img.graph), state_(state), call_(call) {}

  void write_cell(std::size_t c, bool on) {
    const StateCell& cell = img_.state_layout[c];
    call_.read_word(cell.word());
    Bits before = Call::word_of(state_, cell.word());
    for (std::size_t k = 0; k < 8; ++k) state_.set(cell.offset + k, on);
    call_.store(before, Call::word_of(state_, cell.word()));
  }
  bool cell_on(std::size_t c) {
    const StateCell& cell = img_.state_layout[c];
    call_.read_word(cell.word());
    call_.compare();
    return state_.test(cell.offset);
  }

  // Walks from node `ni`, entered along a flow whose join edge cell is `via`.
  void enter(std::size_t ni, std::optional<std::size_t> via, Bits& preds) {
    const BaselineNode& nd = g_.nodes[ni];
    switch (nd.kind) {
      case NodeKind::UserTask:
      case NodeKind::MessageEvent:
        write_cell(*nd.cell, true);
        break;
      case NodeKind::ScriptTask: {
        // Executed inline; its predicate evaluations read false.
        const FunctionSpec* f = nullptr;
        for (const auto& x : img_.internal_functions)
          if (x.id == nd.id) f = &x;
        if (f) preds = preds & ~f->predicate_clear;
        leave(ni, preds);
        break;
      }
      case NodeKind::EndEvent:
        break;
      case NodeKind::XorJoin:
        leave(ni, preds);
        break;
      case NodeKind::AndJoin: {
        if (via) write_cell(*via, true);
        bool all = true;
        for (auto c : nd.join_cells) all = cell_on(c) && all;
        if (all) {
          for (auto c : nd.join_cells) write_cell(c, false);
          leave(ni, preds);
        }
        break;
      }
      case NodeKind::XorSplit:
        for (const auto& bf : nd.out) {
          if (cubes_hold(bf.condition, preds, call_)) {
            enter(bf.target, bf.join_cell, preds);
            break;
          }
        }
        break;
      case NodeKind::StartEvent:
      case NodeKind::AndSplit:
      case NodeKind::EventBasedSplit:
        leave(ni, preds);
        break;
    }
  }

  void leave(std::size_t ni, Bits& preds) {
    for (const auto& bf : g_.nodes[ni].out) enter(bf.target, bf.join_cell, preds);
  }

 private:
  const ContractImage& img_;
  const BaselineGraph& g_;
  Bits& state_;
  Call& call_;
};

EventResult submit_baseline(InstanceState& inst, const FunctionSpec& f, const Assignment& a, const GasModel& g) {
  const ContractImage& img = *inst.image;
  Call call(g, img.words);
  EventResult r;
  if (!check_enabled(f, inst.storage, call, true)) {
    r.diagnostic = *f.label + " is not enabled";
  } else if (auto why = assignment_violation(f, a)) {
    r.diagnostic = *why;
  } else {
    const BaselineGraph& G = *img.graph;
    std::size_t ni = 0;
    while (G.nodes[ni].id != f.id) ++ni;
    Bits state = inst.storage;
    Bits preds = state & img.predicate_region;
    if (!f.computes.empty() || G.nodes[ni].reads_predicates) call.read_mask(img.predicate_region);
    call.compare(f.computes.size());
    preds = apply_preds(preds, f, a);
    Walker w(img, state, call);
    for (auto c : G.nodes[ni].race) w.write_cell(c, false);
    w.leave(ni, preds);
    w.write_cell(*G.nodes[ni].cell, false);
    if (!f.computes.empty()) {
      call.compare();
      Bits next = (state & ~img.predicate_region) | preds;
      store_words(call, state, next, img.words, {});
      state = next;
    }
    inst.storage = state;
    r.accepted = true;
    if ((state & img.control_region).none()) inst.status = InstanceStatus::Completed;
  }
  if (r.accepted) inst.gas.base += g.tx_base;
  inst.gas.read += call.reads;
  inst.gas.write += call.writes;
  inst.gas.compare += call.compares;
  r.gas = call.reads + call.writes + call.compares + (r.accepted ? g.tx_base : 0);
  r.completed = inst.status == InstanceStatus::Completed;
  return r;
}

}  // namespace

InstanceState create_instance(const ContractImage& image, const GasModel& g) {
  InstanceState inst;
  inst.image = &image;
  inst.storage = Bits(image.width());
  Call call(g, image.words);
  if (image.backend == Backend::Optimized) {
    Bits state = image.initial_state;
    if (image.initial_step()) run_step(image, state, call);
    store_words(call, inst.storage, state, image.words, {});
    inst.storage = state;
  } else {
    Bits state = image.initial_state;
    Bits preds = state & image.predicate_region;
    Walker w(image, state, call);
    w.enter(image.graph->start, std::nullopt, preds);
    inst.storage = state;
  }
  if ((inst.storage & image.control_region).none()) inst.status = InstanceStatus::Completed;
  inst.gas.deploy = g.tx_base + estimate_deploy_cost(image, g.deploy) + call.reads + call.writes + call.compares;
  return inst;
}

EventResult submit_event(InstanceState& inst, const std::string& label, const Assignment& assignment,
                         const GasModel& g) {
  const ContractImage& img = *inst.image;
  if (inst.status == InstanceStatus::Completed)
    throw Error(ErrorKind::InstanceAlreadyCompleted, "event " + label + " after completion");
  const FunctionSpec* f = img.public_function(label);
  if (!f) {
    if (label == img.start_label || img.evals_by_label.count(label)) {
      EventResult r;
      r.diagnostic = label + " cannot be called from outside";
      return r;
    }
    throw Error(ErrorKind::UnknownLabel, "label " + label + " is not part of the process");
  }
  return img.backend == Backend::Optimized ? submit_optimized(inst, *f, assignment, g)
                                           : submit_baseline(inst, *f, assignment, g);
}

Verdict conformance_verdict(const ContractImage& image, const std::vector<TraceEvent>& trace, const GasModel& g) {
  Verdict v;
  InstanceState inst = create_instance(image, g);
  v.deploy_gas = inst.gas.deploy;
  v.event_gas.push_back(inst.gas.deploy);
  bool ok = !trace.empty() && trace[0].label == image.start_label;
  v.accepted.push_back(ok);
  if (!ok) {
    v.failing_index = 0;
    ++v.rejected;
  }
  for (std::size_t i = 1; i < trace.size(); ++i) {
    bool accepted = false;
    std::uint64_t gas = 0;
    if (inst.status == InstanceStatus::Running) {
      EventResult r = submit_event(inst, trace[i].label, trace[i].assignment, g);
      accepted = r.accepted;
      gas = r.gas;
    }
    v.event_gas.push_back(gas);
    v.accepted.push_back(accepted);
    v.execution_gas += gas;
    if (!accepted) {
      ++v.rejected;
      if (!v.failing_index) v.failing_index = i;
    }
  }
  v.completed = inst.status == InstanceStatus::Completed;
  if (!v.failing_index && !v.completed) v.failing_index = trace.size();
  v.conforming = !v.failing_index;
  v.total_gas = v.deploy_gas + v.execution_gas;
  return v;
}

std::string state_hash(const InstanceState& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix(inst.storage.to_hex());
  mix(inst.status == InstanceStatus::Completed ? "|done" : "|running");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bpmnc
