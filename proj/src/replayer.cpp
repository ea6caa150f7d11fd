#include "bpmnc/replayer.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "bpmnc/error.hpp"
#include "bpmnc/token_game.hpp"

namespace bpmnc {

namespace {

std::optional<double> ratio_saving(std::optional<double> opt, std::optional<double> base) {
  if (!opt || !base || *base <= 0) return std::nullopt;
  return 1.0 - *opt / *base;
}

std::string fmt(std::optional<double> v, int precision = 1) {
  if (!v) return "";
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(precision);
  o << *v;
  return o.str();
}

}  // namespace

ReplayReport replay_log(const ContractImage& image, const EventLog& log, const GasModel& gas) {
  ReplayReport r;
  r.backend = image.backend;
  double inst = 0, exec = 0, event_gas = 0, event_count = 0;
  for (const auto& t : log.traces) {
    TraceRow row{t.id, t.weight, t.events.size(), conformance_verdict(image, t.events, gas)};
    const auto& v = row.verdict;
    (v.conforming ? r.conforming : r.nonconforming)++;
    r.rejected += v.rejected;
    r.completed += v.completed ? 1 : 0;
    double w = static_cast<double>(t.weight);
    r.total_weight += t.weight;
    inst += w * static_cast<double>(v.deploy_gas);
    exec += w * static_cast<double>(v.execution_gas);
    for (std::size_t i = 1; i < v.accepted.size(); ++i)
      if (v.accepted[i]) {
        event_gas += w * static_cast<double>(v.event_gas[i]);
        event_count += w;
      }
    r.rows.push_back(std::move(row));
  }
  if (r.total_weight) {
    double tw = static_cast<double>(r.total_weight);
    r.avg_instantiation = inst / tw;
    r.avg_execution = exec / tw;
    r.avg_total = (inst + exec) / tw;
  }
  if (event_count > 0) r.avg_event_gas = event_gas / event_count;
  return r;
}

CostComparison compare_reports(const ReplayReport& opt, const ReplayReport& base) {
  CostComparison c;
  c.instantiation_savings = ratio_saving(opt.avg_instantiation, base.avg_instantiation);
  c.execution_savings = ratio_saving(opt.avg_execution, base.avg_execution);
  c.combined_savings = ratio_saving(opt.avg_total, base.avg_total);
  for (std::size_t i = 0; i < std::min(opt.rows.size(), base.rows.size()); ++i)
    if (opt.rows[i].verdict.total_gas >= base.rows[i].verdict.total_gas) c.dominance_violations.push_back(opt.rows[i].id);
  return c;
}

std::string render_report(const ReplayReport& r) {
  std::ostringstream out;
  out << "trace_id,weight,conforming,failing_index,rejected,completed,deploy_gas,execution_gas,total_gas\n";
  for (const auto& row : r.rows) {
    const auto& v = row.verdict;
    out << row.id << ',' << row.weight << ',' << (v.conforming ? 1 : 0) << ','
        << (v.failing_index ? std::to_string(*v.failing_index) : "") << ',' << v.rejected << ','
        << (v.completed ? 1 : 0) << ',' << v.deploy_gas << ','
        << v.execution_gas << ',' << v.total_gas << '\n';
  }
  return out.str();
}

std::string render_summary(const ReplayReport& r, const ReplayReport* baseline) {
  std::ostringstream out;
  out << "tested_traces,backend,avg_instantiation,avg_execution,instantiation_savings,execution_savings,"
         "combined_savings\n";
  auto row = [&](const ReplayReport& x, const CostComparison* c) {
    auto pct = [](std::optional<double> v) { return v ? std::optional<double>(*v * 100) : std::nullopt; };
    out << x.rows.size() << ',' << to_string(x.backend) << ',' << fmt(x.avg_instantiation) << ','
        << fmt(x.avg_execution) << ',';
    if (c) out << fmt(pct(c->instantiation_savings), 2) << ',' << fmt(pct(c->execution_savings), 2) << ','
               << fmt(pct(c->combined_savings), 2);
    else out << ",,";
    out << '\n';
  };
  if (baseline) {
    CostComparison c = compare_reports(r, *baseline);
    row(r, &c);
    row(*baseline, nullptr);
  } else {
    row(r, nullptr);
  }
  return out.str();
}

std::string render_series(const ThroughputResult& res) {
  std::ostringstream out;
  out << "block,creations,events,gas,active,completed,smoothed_tx\n";
  for (std::size_t i = 0; i < res.blocks.size(); ++i) {
    const auto& b = res.blocks[i];
    out << i + 1 << ',' << b.creations << ',' << b.events << ',' << b.gas << ',' << b.active << ','
        << b.completed << ',' << fmt(b.smoothed_tx, 2) << '\n';
  }
  return out.str();
}

ThroughputResult simulate_throughput(const ContractImage& image, const EventLog& log, const ThroughputConfig& cfg,
                                     const GasModel& gas) {
  ReplayReport report = replay_log(image, log, gas);
  std::vector<const TraceRow*> pool;
  std::vector<double> weights;
  for (const auto& row : report.rows)
    if (row.verdict.conforming) {
      pool.push_back(&row);
      weights.push_back(static_cast<double>(row.weight));
    }
  if (pool.empty()) throw Error(ErrorKind::MalformedLog, "no conforming trace to simulate");
  for (const auto* row : pool)
    for (auto g : row->verdict.event_gas)
      if (g > cfg.block_gas_limit)
        throw Error(ErrorKind::TransactionExceedsBlockLimit,
                    "trace " + row->id + " needs " + std::to_string(g) + " gas in one call, limit " +
                        std::to_string(cfg.block_gas_limit));

  ThroughputResult res;
  double ev_gas = 0, ev_n = 0;
  for (const auto* row : pool) {
    double w = static_cast<double>(row->weight);
    for (std::size_t i = 1; i < row->verdict.event_gas.size(); ++i) {
      ev_gas += w * static_cast<double>(row->verdict.event_gas[i]);
      ev_n += w;
    }
  }
  res.avg_event_gas = ev_n > 0 ? ev_gas / ev_n : 0;
  res.capacity = res.avg_event_gas > 0
                     ? static_cast<std::uint64_t>(static_cast<double>(cfg.block_gas_limit) / res.avg_event_gas)
                     : 0;

  std::mt19937_64 rng(cfg.seed);
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  std::vector<const Verdict*> instance(cfg.instances);
  for (auto& v : instance) v = &pool[draw(rng)]->verdict;

  struct Tx {
    std::size_t instance;
    std::size_t index;  // 0 = creation
  };
  std::deque<Tx> queue;
  for (std::size_t i = 0; i < instance.size(); ++i) queue.push_back({i, 0});
  std::size_t created = 0, finished = 0;
  std::deque<std::size_t> window;
  std::size_t window_sum = 0;
  while (!queue.empty()) {
    BlockStats b;
    std::vector<Tx> next;
    while (!queue.empty()) {
      Tx tx = queue.front();
      std::uint64_t g = instance[tx.instance]->event_gas[tx.index];
      if (b.gas + g > cfg.block_gas_limit) break;
      queue.pop_front();
      b.gas += g;
      if (tx.index == 0) {
        ++b.creations;
        ++created;
      } else {
        ++b.events;
      }
      if (tx.index + 1 < instance[tx.instance]->event_gas.size()) next.push_back({tx.instance, tx.index + 1});
      else ++finished;
    }
    for (const auto& tx : next) queue.push_back(tx);
    b.active = created - finished;
    b.completed = finished;
    std::size_t txs = b.creations + b.events;
    window.push_back(txs);
    window_sum += txs;
    if (window.size() > cfg.smoothing_window) {
      window_sum -= window.front();
      window.pop_front();
    }
    b.smoothed_tx = static_cast<double>(window_sum) / static_cast<double>(window.size());
    res.blocks.push_back(b);
  }
  if (!res.blocks.empty()) res.creations_per_block = res.blocks.front().creations;
  // Peak over windows made only of event-only blocks.
  std::size_t run = 0;
  for (const auto& b : res.blocks) {
    run = b.creations == 0 ? run + 1 : 0;
    if (run >= cfg.smoothing_window) res.peak_events_per_block = std::max(res.peak_events_per_block, b.smoothed_tx);
  }
  return res;
}

namespace {

class Walker {
 public:
  Walker(const Compilation& c, std::mt19937_64& rng) : c_(c), net_(c.annotated), rng_(rng) {
    for (const auto& t : net_.transitions)
      if (t.external && t.label) labels_.push_back(&t);
  }

  // One random conforming run; empty when the walk got stuck or ran too long.
  std::vector<TraceEvent> walk(std::size_t max_len) {
    std::vector<TraceEvent> trace{{c_.optimized.start_label, {}}};
    Marking m = initial_marking(net_);
    Assignment preds;
    const Marking fin = final_marking(net_);
    settle(m, preds);
    while (m != fin) {
      if (trace.size() > max_len) return {};
      std::vector<const Transition*> ext;
      for (const auto& id : enabled(net_, m, preds)) {
        const Transition* t = net_.find_transition(id);
        if (t->external) ext.push_back(t);
      }
      if (ext.empty()) return {};
      const Transition* t = ext[pick(ext.size())];
      TraceEvent e{*t->label, {}};
      for (const auto& a : t->evals) preds[a] = false;
      for (const auto& a : t->evals) preds[a] = e.assignment[a] = coin();
      m = fire(net_, m, t->id);
      trace.push_back(std::move(e));
      settle(m, preds);
    }
    return trace;
  }

  TraceEvent random_event() {
    if (labels_.empty()) return {c_.optimized.start_label, {}};
    const Transition* t = labels_[pick(labels_.size())];
    TraceEvent e{*t->label, {}};
    for (const auto& a : t->evals) e.assignment[a] = coin();
    return e;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

 private:
  void settle(Marking& m, Assignment& preds) {
    for (std::size_t guard = 0; guard < 10'000; ++guard) {
      std::vector<const Transition*> silent;
      for (const auto& id : enabled(net_, m, preds)) {
        const Transition* t = net_.find_transition(id);
        if (!t->external) silent.push_back(t);
      }
      if (silent.empty()) return;
      const Transition* t = silent[pick(silent.size())];
      for (const auto& a : t->evals) preds[a] = false;
      m = fire(net_, m, t->id);
    }
  }

  const Compilation& c_;
  const PetriNet& net_;
  std::mt19937_64& rng_;
  std::vector<const Transition*> labels_;
};

std::string trace_id(char prefix, std::size_t n) {
  std::string digits = std::to_string(n);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return std::string(1, prefix) + digits;
}

}  // namespace

EventLog generate_log(const Compilation& c, const LogGenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  Walker walker(c, rng);
  const std::string& start = c.optimized.start_label;
  auto conforms = [&](const std::vector<TraceEvent>& t) {
    return guarded_token_game(c.annotated, start, t).conforming;
  };

  std::set<std::vector<TraceEvent>, decltype([](const auto& a, const auto& b) {
             return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                 [](const TraceEvent& x, const TraceEvent& y) {
                                                   return std::tie(x.label, x.assignment) <
                                                          std::tie(y.label, y.assignment);
                                                 });
           })>
      seen;
  EventLog log;
  std::vector<std::vector<TraceEvent>> good;
  std::size_t attempts = 0, limit = 500 * (opt.conforming + 1);
  while (good.size() < opt.conforming && attempts++ < limit) {
    auto t = walker.walk(opt.max_trace_length);
    if (t.empty() || !conforms(t) || !seen.insert(t).second) continue;
    good.push_back(std::move(t));
  }
  if (good.size() < opt.conforming)
    throw Error(ErrorKind::InsufficientDistinctTraces, "found " + std::to_string(good.size()) + " of " +
                                                           std::to_string(opt.conforming) + " conforming traces");

  std::vector<std::uint64_t> weights(good.size(), 1);
  if (opt.total_weight && !good.empty()) {
    if (*opt.total_weight < good.size())
      throw Error(ErrorKind::InsufficientDistinctTraces, "total weight below the trace count");
    // Skewed shares, like real process logs where a few variants dominate.
    std::exponential_distribution<double> share(1.0);
    std::vector<double> r(good.size());
    double sum = 0;
    for (auto& x : r) sum += (x = share(rng));
    std::uint64_t spare = *opt.total_weight - good.size(), given = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      auto extra = static_cast<std::uint64_t>(static_cast<double>(spare) * r[i] / sum);
      weights[i] += extra;
      given += extra;
    }
    weights[0] += spare - given;
  }
  for (std::size_t i = 0; i < good.size(); ++i) log.traces.push_back({trace_id('c', i + 1), weights[i], good[i]});

  std::size_t bad = 0;
  attempts = 0;
  limit = 500 * (opt.nonconforming + 1);
  while (bad < opt.nonconforming && attempts++ < limit && !good.empty()) {
    auto t = good[walker.pick(good.size())];
    std::size_t n = t.size();
    switch (walker.pick(5)) {
      case 0:  // swap two neighbours after the creation
        if (n < 3) continue;
        {
          std::size_t i = 1 + walker.pick(n - 2);
          std::swap(t[i], t[i + 1]);
        }
        break;
      case 1:
        if (n < 2) continue;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(1 + walker.pick(n - 1)));
        break;
      case 2:
        if (n < 2) continue;
        {
          std::size_t i = 1 + walker.pick(n - 1);
          TraceEvent dup = t[i];
          t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), std::move(dup));
        }
        break;
      case 3:
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(1 + walker.pick(n)), walker.random_event());
        break;
      case 4: {
        std::vector<std::size_t> deciding;
        for (std::size_t i = 1; i < n; ++i)
          if (!t[i].assignment.empty()) deciding.push_back(i);
        if (deciding.empty()) continue;
        auto& a = t[deciding[walker.pick(deciding.size())]].assignment;
        auto it = a.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(walker.pick(a.size())));
        it->second = !it->second;
        break;
      }
    }
    if (conforms(t) || !seen.insert(t).second) continue;
    log.traces.push_back({trace_id('n', ++bad), 1, std::move(t)});
  }
  if (bad < opt.nonconforming)
    throw Error(ErrorKind::InsufficientDistinctTraces, "found " + std::to_string(bad) + " of " +
                                                           std::to_string(opt.nonconforming) +
                                                           " non-conforming traces");
  return log;
}

}  // namespace bpmnc
