#include <gtest/gtest.h>

#include "bpmnc/analysis.hpp"
#include "bpmnc/model_generator.hpp"
#include "bpmnc/replayer.hpp"
#include "bpmnc/token_game.hpp"
#include "support.hpp"

using namespace bpmnc;

namespace {

constexpr std::uint64_t kModels = 200;
constexpr std::size_t kDepth = 8;

EventLog some_log(const Compilation& c, std::uint64_t seed) {
  for (std::size_t n : {4, 2, 1}) {
    try {
      return generate_log(c, {n, 3 * n, seed, std::nullopt, 120});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientDistinctTraces) throw;
    }
  }
  return {};
}

}  // namespace

TEST(Properties, GeneratedModelsAreValidAndBounded) {
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    ProcessModel m = generate_model(seed);
    EXPECT_NO_THROW(validate_model(m)) << seed;
    std::size_t activities = 0;
    for (const auto& n : m.nodes) activities += is_activity(n.kind);
    EXPECT_LE(activities, 12u) << seed;
    EXPECT_EQ(serialize_model(generate_model(seed)), serialize_model(m)) << seed;
  }
}

TEST(Properties, ReductionPreservesWeakTracesAndSafeness) {
  std::size_t with_tau_left = 0;
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    Compilation c = compile_model(generate_model(seed));
    auto before = weak_trace_language(c.translation.net, kDepth);
    auto after = weak_trace_language(c.reduction.net, kDepth);
    for (std::size_t d = 1; d <= kDepth; ++d)
      ASSERT_EQ(truncate(before, d), truncate(after, d)) << "seed " << seed << " depth " << d;
    auto r = check_soundness_and_safeness(c.reduction.net);
    ASSERT_TRUE(r.safe) << seed;
    ASSERT_TRUE(r.sound) << seed;
    EXPECT_LE(c.reduction.net.places.size(), c.translation.net.places.size());
    with_tau_left += c.reduction.net.tau_count() > 0;
  }
  RecordProperty("models_with_tau_left", static_cast<int>(with_tau_left));
}

TEST(Properties, ReductionIsDeterministic) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Compilation a = compile_model(generate_model(seed)), b = compile_model(generate_model(seed));
    EXPECT_EQ(a.reduction.trace, b.reduction.trace);
    EXPECT_EQ(a.optimized, b.optimized);
    EXPECT_EQ(a.baseline, b.baseline);
  }
}

TEST(Properties, BackendsAndOraclesAgreeOnRandomModels) {
  std::size_t traces = 0;
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    Compilation c = compile_model(generate_model(seed));
    EventLog log = some_log(c, seed);
    for (const auto& t : log.traces) {
      OracleResult reduced = guarded_token_game(c.annotated, c.optimized.start_label, t.events);
      OracleResult original = original_net_game(c.translation.net, c.model, c.translation.map,
                                                c.optimized.evals_by_label, t.events);
      Verdict opt = conformance_verdict(c.optimized, t.events);
      Verdict base = conformance_verdict(c.baseline, t.events);
      ASSERT_EQ(original.conforming, reduced.conforming) << seed << ' ' << t.id;
      ASSERT_EQ(opt.conforming, reduced.conforming) << seed << ' ' << t.id;
      ASSERT_EQ(base.conforming, reduced.conforming) << seed << ' ' << t.id;
      ASSERT_EQ(opt.failing_index, base.failing_index) << seed << ' ' << t.id;
      // Deploy can favour the baseline on the smallest models, whose step loop
      // outweighs a handful of cells; execution cannot.
      if (opt.conforming) {
        EXPECT_LT(opt.execution_gas, base.execution_gas) << seed << ' ' << t.id;
      }
      ++traces;
    }
  }
  EXPECT_GT(traces, 1000u);
}
