#include "bpmnc/reducer.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "bpmnc/analysis.hpp"
#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

using Ids = std::vector<std::string>;

bool has(const Ids& v, const std::string& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

Ids without(const Ids& v, const std::string& x) {
  Ids out;
  for (const auto& e : v)
    if (e != x) out.push_back(e);
  return out;
}

bool disjoint(const Ids& a, const Ids& b) {
  return std::none_of(a.begin(), a.end(), [&](const std::string& x) { return has(b, x); });
}

Ids concat(Ids a, const Ids& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string fuse_id(const std::string& a, const std::string& b) { return "fuse(" + a + "," + b + ")"; }

// Series t1 -> p -> t2 where p has exactly one producer and one consumer.
struct Series {
  const Transition* t1 = nullptr;
  const Transition* t2 = nullptr;
};

std::optional<std::string> series(const PetriNet& net, const Ids& site, Series& s) {
  if (site.size() != 3) return "site needs {t1, p, t2}";
  s.t1 = net.find_transition(site[0]);
  s.t2 = net.find_transition(site[2]);
  const std::string& p = site[1];
  if (!s.t1 || !s.t2 || !net.find_place(p)) return "unknown element";
  if (s.t1 == s.t2) return "t1 and t2 coincide";
  if (p == net.source || p == net.sink) return "boundary place";
  if (net.preset(p) != Ids{s.t1->id}) return "place " + p + " has producers besides " + s.t1->id;
  if (net.postset(p) != Ids{s.t2->id}) return "place " + p + " has consumers besides " + s.t2->id;
  return std::nullopt;
}

// t1 absorbs t2 (t2.inputs == {p}).
std::optional<std::string> forward_ok(const Transition& t1, const Transition& t2, const std::string& p) {
  if (t2.inputs != Ids{p}) return "t2 has inputs besides " + p;
  Ids rest = without(t1.outputs, p);
  if (!disjoint(rest, t2.outputs)) return "fused outputs overlap";
  if (!disjoint(t1.inputs, t2.outputs)) return "fusion would create a self-loop";
  return std::nullopt;
}

// t2 absorbs t1 (t1.outputs == {p}).
std::optional<std::string> backward_ok(const Transition& t1, const Transition& t2, const std::string& p) {
  if (t1.outputs != Ids{p}) return "t1 has outputs besides " + p;
  Ids rest = without(t2.inputs, p);
  if (!disjoint(rest, t1.inputs)) return "fused inputs overlap";
  if (!disjoint(t1.inputs, t2.outputs)) return "fusion would create a self-loop";
  return std::nullopt;
}

std::optional<std::string> match_series_rule(const PetriNet& net, char rule, const Ids& site) {
  Series s;
  if (auto r = series(net, site, s)) return r;
  const Transition& t1 = *s.t1;
  const Transition& t2 = *s.t2;
  const std::string& p = site[1];
  auto single = [](const Transition& t) { return t.inputs.size() == 1 && t.outputs.size() == 1; };
  switch (rule) {
    case 'a':
      // Direct removal: a single-input single-output τ next to a labeled task.
      if (!t1.is_tau() && t2.is_tau()) {
        if (!single(t2)) return "τ is not 1-in/1-out";
        return forward_ok(t1, t2, p);
      }
      if (t1.is_tau() && !t2.is_tau()) {
        if (!single(t1)) return "τ is not 1-in/1-out";
        if (t2.inputs != Ids{p}) return "labeled transition has further inputs";
        return backward_ok(t1, t2, p);
      }
      return "needs one labeled and one τ transition";
    case 'b':
      if (!t1.is_tau() || !t2.is_tau()) return "needs two τ transitions";
      if (!single(t1) || !single(t2)) return "τ transitions must be 1-in/1-out";
      return forward_ok(t1, t2, p);
    case 'e':
      if (t1.is_tau() || !t2.is_tau()) return "needs labeled t1 and τ t2";
      if (t2.outputs.size() < 2) return "τ does not fork";
      return forward_ok(t1, t2, p);
    case 'f':
      if (!t1.is_tau() || !t2.is_tau()) return "needs two τ transitions";
      if (single(t1) && single(t2)) return "covered by rule b";
      return forward_ok(t1, t2, p);
    case 'g':
      if (!t1.is_tau() || !t2.is_tau()) return "needs two τ transitions";
      if (single(t1) && single(t2)) return "covered by rule b";
      if (t2.inputs == Ids{p}) return "covered by rule f";
      return backward_ok(t1, t2, p);
    case 'h':
      if (!t1.is_tau() || t2.is_tau()) return "needs τ t1 and labeled t2";
      if (t1.inputs.size() < 2) return "τ does not synchronize";
      if (t2.inputs != Ids{p}) return "labeled transition has further inputs";
      return backward_ok(t1, t2, p);
    default:
      return "not a series rule";
  }
}

std::optional<std::string> match_place_rule(const PetriNet& net, char rule, const Ids& site) {
  if (site.size() != 3) return "site needs {p1, tau, p2}";
  const std::string& p1 = site[0];
  const std::string& p2 = site[2];
  const Transition* tau = net.find_transition(site[1]);
  if (!tau || !net.find_place(p1) || !net.find_place(p2)) return "unknown element";
  if (!tau->is_tau()) return site[1] + " is labeled";
  if (p1 == p2) return "places coincide";
  if (tau->inputs != Ids{p1} || tau->outputs != Ids{p2}) return "τ is not the plain p1 -> p2 series";
  Ids pre1 = net.preset(p1), post1 = net.postset(p1), pre2 = net.preset(p2), post2 = net.postset(p2);
  if (rule == 'c') {
    if (p2 == net.sink) return "p2 is the sink";
    if (pre2 != Ids{tau->id}) return "p2 has producers besides τ";
    if (post1.size() < 2) return "p1 has no alternative consumer";
    Ids others = without(post1, tau->id);
    if (!disjoint(others, post2)) return "a consumer reads both places";
    return std::nullopt;
  }
  if (p1 == net.source) return "p1 is the source";
  if (post1 != Ids{tau->id}) return "p1 has consumers besides τ";
  if (pre2.size() < 2) return "p2 has no alternative producer";
  Ids others = without(pre2, tau->id);
  if (!disjoint(others, pre1)) return "a producer writes both places";
  return std::nullopt;
}

std::optional<std::string> match_split_rule(const PetriNet& net, const Ids& site) {
  if (site.size() != 2) return "site needs {p, tau}";
  const std::string& p = site[0];
  const Transition* tau = net.find_transition(site[1]);
  if (!tau || !net.find_place(p)) return "unknown element";
  if (!tau->is_tau()) return site[1] + " is labeled";
  if (p == net.source) return "p is the source";
  if (tau->inputs != Ids{p}) return "τ has inputs besides p";
  if (tau->outputs.size() < 2) return "τ does not fork";
  Ids post = net.postset(p);
  Ids others = without(post, tau->id);
  if (others.empty()) return "p has no alternative consumer";
  if (net.preset(p).empty()) return "p has no producer";
  for (const auto& q : tau->outputs) {
    if (q == net.sink) return "τ feeds the sink";
    if (net.preset(q) != Ids{tau->id}) return "place " + q + " has producers besides τ";
    Ids qpost = net.postset(q);
    if (!disjoint(qpost, others)) return "a consumer of " + q + " also consumes p";
  }
  for (std::size_t i = 0; i < tau->outputs.size(); ++i)
    for (std::size_t j = i + 1; j < tau->outputs.size(); ++j)
      if (!disjoint(net.postset(tau->outputs[i]), net.postset(tau->outputs[j])))
        return "branches share a consumer";
  return std::nullopt;
}

Transition merge_forward(const Transition& t1, const Transition& t2, const std::string& p) {
  Transition t = t1;
  t.outputs = concat(without(t1.outputs, p), t2.outputs);
  if (t1.is_tau()) t.id = fuse_id(t1.id, t2.id);
  t.order = std::min(t1.order, t2.order);
  t.provenance = concat(t1.provenance, t2.provenance);
  return t;
}

Transition merge_backward(const Transition& t1, const Transition& t2, const std::string& p) {
  Transition t = t2;
  Ids rest = without(t2.inputs, p);
  t.inputs = concat(rest, t1.inputs);
  if (t2.is_tau()) t.id = fuse_id(t1.id, t2.id);
  t.order = std::min(t1.order, t2.order);
  t.provenance = concat(t1.provenance, t2.provenance);
  return t;
}

PetriNet rewrite_series(const PetriNet& net, char rule, const Ids& site) {
  const Transition& t1 = *net.find_transition(site[0]);
  const Transition& t2 = *net.find_transition(site[2]);
  const std::string& p = site[1];
  bool forward = false;
  switch (rule) {
    case 'a': forward = !t1.is_tau(); break;
    case 'b': case 'e': case 'f': forward = true; break;
    default: forward = false; break;
  }
  Transition fused = forward ? merge_forward(t1, t2, p) : merge_backward(t1, t2, p);
  PetriNet out;
  out.source = net.source;
  out.sink = net.sink;
  for (const auto& pl : net.places)
    if (pl.id != p) out.places.push_back(pl);
  for (const auto& t : net.transitions) {
    if (t.id == t1.id) out.transitions.push_back(fused);
    else if (t.id != t2.id) out.transitions.push_back(t);
  }
  out.canonicalize();
  return out;
}

void rename_place(PetriNet& net, const std::string& from, const std::string& to) {
  for (auto& t : net.transitions) {
    std::replace(t.inputs.begin(), t.inputs.end(), from, to);
    std::replace(t.outputs.begin(), t.outputs.end(), from, to);
  }
}

PetriNet rewrite_places(const PetriNet& net, const Ids& site) {
  const std::string& p1 = site[0];
  const std::string& p2 = site[2];
  const Place& a = *net.find_place(p1);
  const Place& b = *net.find_place(p2);
  std::string merged = fuse_id(p1, p2);
  if (p1 == net.source || p2 == net.source) merged = net.source;
  if (p1 == net.sink || p2 == net.sink) merged = net.sink;
  PetriNet out;
  out.source = net.source;
  out.sink = net.sink;
  for (const auto& pl : net.places) {
    if (pl.id == p1) out.places.push_back({merged, std::min(a.order, b.order)});
    else if (pl.id != p2) out.places.push_back(pl);
  }
  for (const auto& t : net.transitions)
    if (t.id != site[1]) out.transitions.push_back(t);
  rename_place(out, p1, merged);
  rename_place(out, p2, merged);
  out.canonicalize();
  return out;
}

PetriNet rewrite_split(const PetriNet& net, const Ids& site) {
  const std::string& p = site[0];
  const Transition& tau = *net.find_transition(site[1]);
  const Place& pp = *net.find_place(p);
  Ids fresh;
  PetriNet out;
  out.source = net.source;
  out.sink = net.sink;
  for (const auto& pl : net.places) {
    if (pl.id == p) {
      for (std::size_t i = 0; i < tau.outputs.size(); ++i) {
        OrderKey k = pp.order;
        k.push_back(static_cast<std::uint32_t>(i));
        fresh.push_back("split(" + p + "," + tau.outputs[i] + ")");
        out.places.push_back({fresh.back(), k});
      }
    } else if (!has(tau.outputs, pl.id)) {
      out.places.push_back(pl);
    }
  }
  auto expand = [&](Ids& arcs) {
    if (!has(arcs, p)) return;
    arcs = concat(without(arcs, p), fresh);
  };
  for (auto t : net.transitions) {
    if (t.id == tau.id) continue;
    expand(t.inputs);
    expand(t.outputs);
    for (std::size_t i = 0; i < tau.outputs.size(); ++i)
      std::replace(t.inputs.begin(), t.inputs.end(), tau.outputs[i], fresh[i]);
    out.transitions.push_back(std::move(t));
  }
  out.canonicalize();
  return out;
}

constexpr const char* kRules = "abcdefghi";

}  // namespace

std::optional<std::string> match_rule(const PetriNet& net, char rule, const std::vector<std::string>& site) {
  switch (rule) {
    case 'a': case 'b': case 'e': case 'f': case 'g': case 'h':
      return match_series_rule(net, rule, site);
    case 'c': case 'd':
      return match_place_rule(net, rule, site);
    case 'i':
      return match_split_rule(net, site);
    default:
      return std::string("unknown rule '") + rule + "'";
  }
}

PetriNet apply_rule(const PetriNet& net, char rule, const std::vector<std::string>& site) {
  if (auto why = match_rule(net, rule, site)) {
    std::string s;
    for (const auto& x : site) s += (s.empty() ? "" : ",") + x;
    throw Error(ErrorKind::PatternMismatch, std::string("rule ") + rule + " at {" + s + "}: " + *why);
  }
  switch (rule) {
    case 'c': case 'd': return rewrite_places(net, site);
    case 'i': return rewrite_split(net, site);
    default: return rewrite_series(net, rule, site);
  }
}

std::vector<std::vector<std::string>> find_sites(const PetriNet& net, char rule) {
  std::vector<Ids> out;
  if (rule == 'c' || rule == 'd' || rule == 'i') {
    for (const auto& t : net.transitions) {
      if (!t.is_tau() || t.inputs.size() != 1) continue;
      Ids site = rule == 'i' ? Ids{t.inputs[0], t.id}
                             : (t.outputs.size() == 1 ? Ids{t.inputs[0], t.id, t.outputs[0]} : Ids{});
      if (!site.empty() && !match_rule(net, rule, site)) out.push_back(site);
    }
    return out;
  }
  for (const auto& p : net.places) {
    Ids pre = net.preset(p.id), post = net.postset(p.id);
    if (pre.size() != 1 || post.size() != 1) continue;
    Ids site{pre[0], p.id, post[0]};
    if (!match_rule(net, rule, site)) out.push_back(site);
  }
  return out;
}

Reduction reduce(const PetriNet& net, const ReduceOptions& options) {
  if (options.verify_input) {
    auto rep = check_soundness_and_safeness(net, options.budget);
    if (!rep.safe) throw Error(ErrorKind::NonSafeInput, "input net is not safe", rep.witness);
  }
  Reduction r{net, {}};
  r.net.canonicalize();
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  for (;;) {
    bool changed = false;
    if (options.shuffle_seed) {
      // Random rule and site among everything applicable.
      std::vector<std::pair<char, Ids>> all;
      for (const char* c = kRules; *c; ++c)
        for (auto& s : find_sites(r.net, *c)) all.emplace_back(*c, std::move(s));
      if (!all.empty()) {
        auto& [rule, site] = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        r.net = apply_rule(r.net, rule, site);
        r.trace.push_back({rule, site, net_hash(r.net)});
        changed = true;
      }
    } else {
      for (const char* c = kRules; *c && !changed; ++c) {
        auto sites = find_sites(r.net, *c);
        if (sites.empty()) continue;
        r.net = apply_rule(r.net, *c, sites.front());
        r.trace.push_back({*c, sites.front(), net_hash(r.net)});
        changed = true;
      }
    }
    if (!changed) break;
  }
  return r;
}

PetriNet replay_trace(const PetriNet& original, const ReductionTrace& trace) {
  PetriNet net = original;
  net.canonicalize();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    net = apply_rule(net, trace[i].rule, trace[i].site);
    if (net_hash(net) != trace[i].hash)
      throw Error(ErrorKind::PatternMismatch, "replay diverged at step " + std::to_string(i + 1));
  }
  return net;
}

std::string render_trace(const ReductionTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += std::to_string(i + 1) + ". (" + trace[i].rule + ") {";
    for (std::size_t k = 0; k < trace[i].site.size(); ++k) out += (k ? ", " : "") + trace[i].site[k];
    out += "} -> " + trace[i].hash + "\n";
  }
  return out;
}

}  // namespace bpmnc
