// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "bpmnc/analysis.hpp"
#include "bpmnc/model_generator.hpp"
#include "bpmnc/replayer.hpp"
#include "bpmnc/token_game.hpp"
#include "rule_fixtures.hpp"
#include "support.hpp"

using namespace bpmnc;
using namespace testing_support;

namespace {

// Runtime limits, seconds.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 300.0;
constexpr double kLimit3 = 120.0;
constexpr double kLimit6 = 120.0;

constexpr std::uint64_t kRandomModels = 200;
constexpr std::size_t kMaxDepth = 8;
constexpr double kSavingsLow = 0.15;
constexpr double kSavingsHigh = 0.35;
constexpr std::uint64_t kBlockGasLimit = 4'700'000;
constexpr std::size_t kInstances = 500;
constexpr std::size_t kCreationsOptimized = 5;
constexpr std::size_t kCreationsBaseline = 4;
constexpr double kCapacityOptimized = 180;
constexpr double kCapacityBaseline = 140;
constexpr double kCapacityTolerance = 0.15;
constexpr std::size_t kRuleDepth = 6;
constexpr std::size_t kNaiveNets = 3000;
constexpr std::size_t kRejections = 10'000;
constexpr std::size_t kInvoicingDistinct = 49;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double limit;  // seconds; 0 when unbounded
  std::function<Outcome()> run;
  bool soft = false;
};

Outcome criterion1() {
  Compilation c = compile_fixture("loan.bpmn", MergePolicy::Never);
  std::ostringstream why;
  const PetriNet& net = c.annotated;
  std::size_t bit_places = c.optimized.place_ids.size();
  if (bit_places != 8) why << "bit places " << bit_places << "; ";
  if (net.tau_count() != 1) why << "τ count " << net.tau_count() << "; ";
  std::string tau;
  for (const auto& t : net.transitions)
    if (t.is_tau()) tau = t.id;
  auto check = [&](const std::string& id, const char* expect) {
    if (!equivalent(c.guards.guard_of(id), Condition::parse(expect)))
      why << "guard(" << id << ")=" << c.guards.guard_of(id).str() << "; ";
  };
  check("C", "!P");
  check("D", "P");
  check("E", "P&Q");
  check(tau, "P&!Q");
  if (c.guards.evals_of("B") != std::vector<std::string>{"P", "Q"}) why << "evals(B) wrong; ";
  for (auto lit : {"uint marking = 1", "marking & 2 == 2", "marking & uint(~2) | 12", "predicates & uint(~3)",
                   "tmpMarking & uint(~8) | 32"})
    if (c.optimized.source_text.find(lit) == std::string::npos) why << "missing '" << lit << "'; ";
  std::string d = why.str();
  return {d.empty(), d.empty() ? "8 places, 1 τ, guards and literals exact" : d};
}

Outcome criterion2() {
  std::size_t models = 0, violations = 0;
  std::string first;
  auto probe = [&](const ProcessModel& m, const std::string& name) {
    Compilation c = compile_model(m);
    auto before = weak_trace_language(c.translation.net, kMaxDepth);
    auto after = weak_trace_language(c.reduction.net, kMaxDepth);
    bool ok = true;
    for (std::size_t d = 1; d <= kMaxDepth; ++d) ok = ok && truncate(before, d) == truncate(after, d);
    ok = ok && check_soundness_and_safeness(c.reduction.net).safe;
    ++models;
    if (!ok) {
      ++violations;
      if (first.empty()) first = name;
    }
  };
  for (const auto& fc : fixture_cases()) probe(load_model(fixture(fc.model)), fc.model);
  for (std::uint64_t seed = 1; seed <= kRandomModels; ++seed) probe(generate_model(seed), "seed " + std::to_string(seed));
  std::ostringstream d;
  d << models << " models, depth 1.." << kMaxDepth << ", " << violations << " violations";
  if (!first.empty()) d << " (first: " << first << ")";
  return {violations == 0, d.str()};
}

Outcome criterion3() {
  std::size_t false_accepts = 0, false_rejects = 0, traces = 0;
  std::ostringstream d;
  bool counts_ok = true;
  for (const auto& fc : fixture_cases()) {
    Compilation c = compile_fixture(fc.model);
    EventLog log = read_log_file(fixture(fc.log));
    std::size_t conforming = 0;
    std::set<std::vector<TraceEvent>, std::function<bool(const std::vector<TraceEvent>&, const std::vector<TraceEvent>&)>>
        distinct([](const auto& a, const auto& b) { return write_log({{{"x", 1, a}}}) < write_log({{{"x", 1, b}}}); });
    for (const auto& t : log.traces) {
      bool oracle = guarded_token_game(c.annotated, c.optimized.start_label, t.events).conforming;
      for (const ContractImage* img : {&c.optimized, &c.baseline}) {
        bool vm = conformance_verdict(*img, t.events).conforming;
        false_accepts += vm && !oracle;
        false_rejects += !vm && oracle;
      }
      if (oracle) {
        ++conforming;
        distinct.insert(t.events);
      }
      ++traces;
    }
    std::size_t nonconforming = log.traces.size() - conforming;
    d << fc.model.substr(0, fc.model.find('.')) << " " << conforming << "/" << nonconforming << ", ";
    if (fc.model == "invoicing.bpmn") counts_ok = counts_ok && distinct.size() >= kInvoicingDistinct;
    else counts_ok = counts_ok && conforming == fc.conforming && nonconforming == fc.nonconforming;
  }
  d << traces << " traces x 2 backends, false accepts " << false_accepts << ", false rejects " << false_rejects;
  return {counts_ok && false_accepts == 0 && false_rejects == 0, d.str()};
}

struct Savings {
  bool dominance = true;
  double invoicing_combined = 0;
};

Savings savings() {
  static std::optional<Savings> cached;
  if (cached) return *cached;
  Savings s;
  for (const auto& fc : fixture_cases()) {
    Compilation c = compile_fixture(fc.model);
    EventLog log = read_log_file(fixture(fc.log));
    CostComparison cmp = compare_reports(replay_log(c.optimized, log), replay_log(c.baseline, log));
    s.dominance = s.dominance && cmp.dominance_violations.empty();
    if (fc.model == "invoicing.bpmn") s.invoicing_combined = cmp.combined_savings.value_or(0);
  }
  cached = s;
  return s;
}

Outcome criterion4() {
  std::size_t traces = 0, violations = 0;
  for (const auto& fc : fixture_cases()) {
    Compilation c = compile_fixture(fc.model);
    EventLog log = read_log_file(fixture(fc.log));
    CostComparison cmp = compare_reports(replay_log(c.optimized, log), replay_log(c.baseline, log));
    traces += log.traces.size();
    violations += cmp.dominance_violations.size();
  }
  return {violations == 0, std::to_string(traces) + " traces, " + std::to_string(violations) + " where optimized >= baseline"};
}

Outcome criterion5() {
  Savings s = savings();
  char buf[128];
  std::snprintf(buf, sizeof buf, "invoicing combined weighted savings %.2f%% (band %.0f-%.0f%%)",
                s.invoicing_combined * 100, kSavingsLow * 100, kSavingsHigh * 100);
  return {s.invoicing_combined >= kSavingsLow && s.invoicing_combined <= kSavingsHigh, buf};
}

Outcome criterion6() {
  Compilation c = compile_fixture("invoicing.bpmn");
  EventLog log = read_log_file(fixture("logs/invoicing.log"));
  ThroughputConfig cfg;
  cfg.block_gas_limit = kBlockGasLimit;
  cfg.instances = kInstances;
  ThroughputResult o = simulate_throughput(c.optimized, log, cfg);
  ThroughputResult b = simulate_throughput(c.baseline, log, cfg);
  auto near = [](double v, double target) { return std::abs(v - target) <= kCapacityTolerance * target; };
  bool ok = o.creations_per_block == kCreationsOptimized && b.creations_per_block == kCreationsBaseline &&
            near(static_cast<double>(o.capacity), kCapacityOptimized) &&
            near(static_cast<double>(b.capacity), kCapacityBaseline) && o.blocks.size() < b.blocks.size();
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "creations/block %zu vs %zu, capacity %llu vs %llu, blocks %zu vs %zu (ratio %.3f)",
                o.creations_per_block, b.creations_per_block, static_cast<unsigned long long>(o.capacity),
                static_cast<unsigned long long>(b.capacity), o.blocks.size(), b.blocks.size(),
                static_cast<double>(o.blocks.size()) / static_cast<double>(b.blocks.size()));
  return {ok, buf};
}

Outcome criterion7() {
  std::ostringstream d;
  std::size_t rule_fail = 0;
  for (const auto& r : rule_pairs()) {
    bool ok = !match_rule(r.before, r.rule, r.site);
    if (ok) {
      auto lang = weak_trace_language(r.before, kRuleDepth);
      ok = weak_trace_language(apply_rule(r.before, r.rule, r.site), kRuleDepth) == lang &&
           weak_trace_language(r.after, kRuleDepth) == lang;
    }
    rule_fail += !ok;
  }
  std::mt19937_64 rng(2024);
  std::size_t disagreements = 0, compared = 0;
  const std::size_t budget = 2000;
  for (std::size_t i = 0; i < kNaiveNets; ++i) {
    PetriNet net = random_net(rng, std::uniform_int_distribution<std::size_t>(2, 10)(rng));
    NaiveVerdict naive = naive_enumerate(net, budget);
    if (naive.exhausted) {
      bool threw = false;
      try {
        check_soundness_and_safeness(net, budget);
      } catch (const Error&) {
        threw = true;
      }
      disagreements += !threw;
      continue;
    }
    auto r = check_soundness_and_safeness(net, budget);
    disagreements += r.sound != naive.sound || r.safe != naive.safe;
    ++compared;
  }
  RejectionStats rej = probe_rejections(7, kRejections);
  d << "rules a-i: " << rule_pairs().size() - rule_fail << "/" << rule_pairs().size() << " equal at depth " << kRuleDepth
    << "; naive enumerator: " << disagreements << " disagreements over " << compared << " nets"
    << "; rejections: " << rej.violations << " state changes over " << rej.rejections;
  return {rule_fail == 0 && disagreements == 0 && rej.violations == 0 && rej.rejections >= kRejections, d.str()};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "running example pipeline", kLimit1, criterion1},
      {2, "reduction correctness", kLimit2, criterion2},
      {3, "conformance correctness", kLimit3, criterion3},
      {4, "per-trace cost dominance", 0, criterion4},
      {5, "savings magnitude (soft)", 0, criterion5, true},
      {6, "throughput shape", kLimit6, criterion6},
      {7, "oracle battery", 0, criterion7},
  };
  bool gate_ok = true;
  bool dominance = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit == 0 || secs < c.limit;
    bool pass = o.pass && in_time;
    if (c.number == 4) dominance = pass;
    std::printf("%s criterion %d: %s: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(),
                o.detail.c_str(), secs, in_time ? "" : ", over time limit");
    // The savings band only gates when per-trace dominance also failed.
    if (!pass && (!c.soft || !dominance)) gate_ok = false;
  }
  return gate_ok ? 0 : 1;
}
