#include "bpmnc/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

using Tokens = std::vector<std::uint8_t>;

struct TokensHash {
  std::size_t operator()(const Tokens& t) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto c : t) h = (h ^ c) * 1099511628211ULL;
    return h;
  }
};

// Net flattened to index arrays for exploration.
struct IndexedNet {
  std::vector<std::vector<std::size_t>> in, out;
  std::vector<bool> tau;
  std::vector<std::string> label;

  explicit IndexedNet(const PetriNet& net) {
    for (const auto& t : net.transitions) {
      std::vector<std::size_t> i, o;
      for (const auto& p : t.inputs) i.push_back(net.place_index(p));
      for (const auto& p : t.outputs) o.push_back(net.place_index(p));
      in.push_back(std::move(i));
      out.push_back(std::move(o));
      tau.push_back(t.is_tau());
      label.push_back(t.label.value_or(""));
    }
  }

  bool can_fire(const Tokens& m, std::size_t t) const {
    return std::all_of(in[t].begin(), in[t].end(), [&](std::size_t p) { return m[p] > 0; });
  }
  Tokens fire(Tokens m, std::size_t t) const {
    for (auto p : in[t]) --m[p];
    for (auto p : out[t]) {
      if (m[p] == std::numeric_limits<std::uint8_t>::max())
        throw Error(ErrorKind::StateSpaceBudgetExceeded, "token count overflow on place " + std::to_string(p));
      ++m[p];
    }
    return m;
  }
};

Tokens to_tokens(const PetriNet& net, const std::string& place) {
  Tokens m(net.places.size(), 0);
  auto i = net.place_index(place);
  if (i != std::string::npos) m[i] = 1;
  return m;
}

}  // namespace

SoundnessReport check_soundness_and_safeness(const PetriNet& net, std::size_t budget) {
  IndexedNet idx(net);
  const Tokens init = to_tokens(net, net.source);
  const Tokens fin = to_tokens(net, net.sink);

  std::vector<Tokens> states{init};
  std::vector<std::pair<std::size_t, std::size_t>> parent{{0, 0}};  // (state, transition)
  std::vector<std::vector<std::size_t>> preds(1);
  std::unordered_map<Tokens, std::size_t, TokensHash> seen{{init, 0}};
  std::optional<std::size_t> first_unsafe;

  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    if (!first_unsafe &&
        std::any_of(states[cur].begin(), states[cur].end(), [](auto c) { return c >= 2; }))
      first_unsafe = cur;
    for (std::size_t t = 0; t < idx.in.size(); ++t) {
      if (!idx.can_fire(states[cur], t)) continue;
      Tokens next = idx.fire(states[cur], t);
      auto [it, fresh] = seen.try_emplace(std::move(next), states.size());
      if (fresh) {
        if (states.size() >= budget)
          throw Error(ErrorKind::StateSpaceBudgetExceeded,
                      "more than " + std::to_string(budget) + " reachable markings");
        states.push_back(it->first);
        parent.emplace_back(cur, t);
        preds.emplace_back();
      }
      preds[it->second].push_back(cur);
    }
  }

  std::vector<bool> coreach(states.size(), false);
  if (auto f = seen.find(fin); f != seen.end()) {
    std::deque<std::size_t> q{f->second};
    coreach[f->second] = true;
    while (!q.empty()) {
      auto s = q.front();
      q.pop_front();
      for (auto p : preds[s])
        if (!coreach[p]) {
          coreach[p] = true;
          q.push_back(p);
        }
    }
  }

  SoundnessReport r;
  r.states = states.size();
  r.safe = !first_unsafe.has_value();
  std::optional<std::size_t> stuck;
  for (std::size_t s = 0; s < states.size(); ++s)
    if (!coreach[s]) {
      stuck = s;  // states are in BFS order, so this one is closest
      break;
    }
  r.sound = !stuck.has_value();
  auto path_to = [&](std::size_t s) {
    std::vector<std::string> w;
    while (s != 0) {
      w.push_back(net.transitions[parent[s].second].id);
      s = parent[s].first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (first_unsafe)
    r.witness = path_to(*first_unsafe);
  else if (stuck)
    r.witness = path_to(*stuck);
  return r;
}

TraceLanguage weak_trace_language(const PetriNet& net, std::size_t max_depth, std::size_t budget) {
  IndexedNet idx(net);
  std::size_t work = 0;
  std::unordered_map<Tokens, std::vector<Tokens>, TokensHash> closure_memo;

  auto closure_of = [&](const Tokens& m) -> const std::vector<Tokens>& {
    auto it = closure_memo.find(m);
    if (it != closure_memo.end()) return it->second;
    std::vector<Tokens> out{m};
    std::unordered_map<Tokens, bool, TokensHash> seen{{m, true}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t t = 0; t < idx.in.size(); ++t) {
        if (!idx.tau[t] || !idx.can_fire(out[i], t)) continue;
        Tokens n = idx.fire(out[i], t);
        if (seen.emplace(n, true).second) {
          if (++work > budget)
            throw Error(ErrorKind::StateSpaceBudgetExceeded, "τ-closure exceeded budget");
          out.push_back(std::move(n));
        }
      }
    }
    return closure_memo.emplace(m, std::move(out)).first->second;
  };

  auto close = [&](const std::vector<Tokens>& ms) {
    std::vector<Tokens> out;
    for (const auto& m : ms)
      for (const auto& c : closure_of(m)) out.push_back(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  TraceLanguage lang;
  LabelSequence prefix;
  // Depth-first over the determinized (subset) graph.
  auto visit = [&](auto&& self, const std::vector<Tokens>& set) -> void {
    lang.insert(prefix);
    if (prefix.size() >= max_depth) return;
    std::map<std::string, std::vector<Tokens>> by_label;
    for (const auto& m : set)
      for (std::size_t t = 0; t < idx.in.size(); ++t)
        if (!idx.tau[t] && idx.can_fire(m, t)) by_label[idx.label[t]].push_back(idx.fire(m, t));
    for (auto& [label, succ] : by_label) {
      if (++work > budget) throw Error(ErrorKind::StateSpaceBudgetExceeded, "trace language exceeded budget");
      prefix.push_back(label);
      self(self, close(succ));
      prefix.pop_back();
    }
  };
  visit(visit, close({to_tokens(net, net.source)}));
  return lang;
}

TraceLanguage truncate(const TraceLanguage& lang, std::size_t depth) {
  TraceLanguage out;
  for (const auto& s : lang)
    if (s.size() <= depth) out.insert(s);
  return out;
}

}  // namespace bpmnc
