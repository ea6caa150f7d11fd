#include "bpmnc/token_game.hpp"

#include <set>
#include <tuple>

namespace bpmnc {

namespace {

using Counts = std::vector<std::uint8_t>;

struct State {
  Counts tokens;
  Assignment preds;
  friend bool operator<(const State& a, const State& b) {
    return std::tie(a.tokens, a.preds) < std::tie(b.tokens, b.preds);
  }
};

struct Game {
  const PetriNet& net;
  std::vector<std::vector<std::size_t>> in, out;

  explicit Game(const PetriNet& n) : net(n) {
    for (const auto& t : net.transitions) {
      std::vector<std::size_t> i, o;
      for (const auto& p : t.inputs) i.push_back(net.place_index(p));
      for (const auto& p : t.outputs) o.push_back(net.place_index(p));
      in.push_back(std::move(i));
      out.push_back(std::move(o));
    }
  }

  bool enabled(std::size_t ti, const State& s) const {
    Counts need(s.tokens.size(), 0);
    for (auto p : in[ti]) ++need[p];
    for (std::size_t p = 0; p < need.size(); ++p)
      if (s.tokens[p] < need[p]) return false;
    return net.transitions[ti].guard.eval(s.preds);
  }

  State fire(std::size_t ti, const State& s) const {
    State r = s;
    for (auto p : in[ti]) --r.tokens[p];
    for (auto p : out[ti]) {
      // Saturate: an unsafe net is outside the oracle's contract anyway.
      if (r.tokens[p] < 255) ++r.tokens[p];
    }
    for (const auto& a : net.transitions[ti].evals) r.preds[a] = false;
    return r;
  }

  bool silent(std::size_t ti) const { return !net.transitions[ti].external; }

  std::set<State> closure(std::set<State> frontier) const {
    std::set<State> seen = frontier;
    std::vector<State> stack(frontier.begin(), frontier.end());
    while (!stack.empty()) {
      State s = std::move(stack.back());
      stack.pop_back();
      for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
        if (!silent(ti) || !enabled(ti, s)) continue;
        State n = fire(ti, s);
        if (seen.insert(n).second) stack.push_back(std::move(n));
      }
    }
    return seen;
  }

  OracleResult run(const std::string& start_label, const std::vector<TraceEvent>& trace) const {
    OracleResult r;
    if (trace.empty() || trace[0].label != start_label) {
      r.failing_index = 0;
      return r;
    }
    State init{Counts(net.places.size(), 0), {}};
    if (auto i = net.place_index(net.source); i != std::string::npos) init.tokens[i] = 1;
    std::set<State> current = closure({init});
    const std::size_t sink = net.place_index(net.sink);
    auto is_final = [&](const State& s) {
      for (std::size_t p = 0; p < s.tokens.size(); ++p)
        if (s.tokens[p] != (p == sink ? 1 : 0)) return false;
      return true;
    };
    for (std::size_t k = 1; k < trace.size(); ++k) {
      const TraceEvent& ev = trace[k];
      std::set<State> next;
      for (const State& s : current) {
        // Completed instances accept nothing further.
        if (is_final(s)) continue;
        for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
          const Transition& t = net.transitions[ti];
          if (!t.external || !t.label || *t.label != ev.label) continue;
          bool allowed = true;
          for (const auto& [atom, v] : ev.assignment) {
            (void)v;
            bool in_evals = false;
            for (const auto& e : t.evals) in_evals = in_evals || e == atom;
            allowed = allowed && in_evals;
          }
          if (!allowed || !enabled(ti, s)) continue;
          State n = fire(ti, s);
          for (const auto& [atom, v] : ev.assignment) n.preds[atom] = v;
          next.insert(std::move(n));
        }
      }
      if (next.empty()) {
        r.failing_index = k;
        return r;
      }
      current = closure(std::move(next));
    }
    for (const State& s : current)
      if (is_final(s)) {
        r.conforming = true;
        return r;
      }
    r.failing_index = trace.size();
    return r;
  }
};

}  // namespace

OracleResult guarded_token_game(const PetriNet& net, const std::string& start_label,
                                const std::vector<TraceEvent>& trace) {
  return Game(net).run(start_label, trace);
}

PetriNet guard_translation(const PetriNet& translated, const ProcessModel& input, const TranslationMap& tmap,
                           const std::map<std::string, std::vector<std::string>>& evals_by_label) {
  const ProcessModel model = normalize_conditions(input);
  PetriNet net = translated;
  for (auto& t : net.transitions) {
    t.guard = Condition::truth();
    t.evals.clear();
    if (t.label) {
      if (auto it = evals_by_label.find(*t.label); it != evals_by_label.end()) t.evals = it->second;
      continue;
    }
    auto it = tmap.tau_origin.find(t.id);
    if (it == tmap.tau_origin.end()) continue;
    const TauOrigin& o = it->second;
    if (o.kind == NodeKind::XorSplit && o.flow)
      t.guard = model.flows[*o.flow].condition.value_or(Condition::truth());
  }
  return net;
}

OracleResult original_net_game(const PetriNet& translated, const ProcessModel& model, const TranslationMap& tmap,
                               const std::map<std::string, std::vector<std::string>>& evals_by_label,
                               const std::vector<TraceEvent>& trace) {
  PetriNet net = guard_translation(translated, model, tmap, evals_by_label);
  return Game(net).run(model.start().label, trace);
}

}  // namespace bpmnc
