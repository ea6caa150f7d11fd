#include <gtest/gtest.h>

#include <sstream>

#include "bpmnc/analysis.hpp"
#include "bpmnc/reducer.hpp"
#include "bpmnc/translator.hpp"
#include "rule_fixtures.hpp"
#include "support.hpp"

using namespace bpmnc;
using testing_support::RulePair;
using testing_support::rule_pairs;

namespace {

// Shape summary that ignores generated ids: per transition its label and
// arc counts, sorted.
std::multiset<std::tuple<std::string, std::size_t, std::size_t>> shape(const PetriNet& net) {
  std::multiset<std::tuple<std::string, std::size_t, std::size_t>> s;
  for (const auto& t : net.transitions) s.emplace(t.label.value_or("τ"), t.inputs.size(), t.outputs.size());
  return s;
}

PetriNet translated(const std::string& name) {
  return translate(normalize_conditions(load_model(testing_support::fixture(name)))).net;
}

}  // namespace

class RuleFixture : public ::testing::TestWithParam<RulePair> {};

TEST_P(RuleFixture, PreservesTraceLanguageAtDepthSix) {
  const RulePair& r = GetParam();
  ASSERT_EQ(match_rule(r.before, r.rule, r.site), std::nullopt);
  PetriNet got = apply_rule(r.before, r.rule, r.site);
  auto lang = weak_trace_language(r.before, 6);
  EXPECT_EQ(weak_trace_language(got, 6), lang);
  EXPECT_EQ(weak_trace_language(r.after, 6), lang);
  EXPECT_EQ(got.places.size(), r.after.places.size());
  EXPECT_EQ(shape(got), shape(r.after));
  EXPECT_EQ(got.tau_count() + 1, r.before.tau_count());  // every rule removes one τ
  auto sr = check_soundness_and_safeness(got);
  EXPECT_EQ(sr.safe, check_soundness_and_safeness(r.before).safe);
}

INSTANTIATE_TEST_SUITE_P(AllRules, RuleFixture, ::testing::ValuesIn(rule_pairs()),
                         [](const auto& info) { return std::string("rule_") + info.param.rule; });

TEST(Reducer, RuleRejectsWrongShapes) {
  auto pairs = rule_pairs();
  const PetriNet& a = pairs[0].before;
  EXPECT_NE(match_rule(a, 'b', {"A", "p", "t"}), std::nullopt);  // A is labeled
  EXPECT_NE(match_rule(a, 'a', {"A", "q", "t"}), std::nullopt);  // q is not between them
  EXPECT_NE(match_rule(a, 'z', {"A", "p", "t"}), std::nullopt);
  EXPECT_THROW(apply_rule(a, 'b', {"A", "p", "t"}), Error);
}

TEST(Reducer, LoanReducesToEightBitPlacesAndOneTau) {
  Reduction r = reduce(translated("loan.bpmn"));
  EXPECT_EQ(r.net.places.size() - 1, 8u);  // sink excluded
  EXPECT_EQ(r.net.tau_count(), 1u);
  std::string rules;
  for (const auto& s : r.trace) rules += s.rule;
  EXPECT_EQ(rules, "aaabchi");
}

TEST(Reducer, TraceReplayReproducesResult) {
  for (auto name : {"loan.bpmn", "insurance.bpmn", "invoicing.bpmn"}) {
    PetriNet net = translated(name);
    Reduction r = reduce(net);
    EXPECT_EQ(replay_trace(net, r.trace), r.net) << name;
    EXPECT_FALSE(render_trace(r.trace).empty());
  }
}

TEST(Reducer, ReducedNetIsIrreducible) {
  Reduction r = reduce(translated("invoicing.bpmn"));
  for (char rule : std::string("abcdefghi")) EXPECT_TRUE(find_sites(r.net, rule).empty()) << rule;
}

TEST(Reducer, ShuffledOrderKeepsLanguage) {
  PetriNet net = translated("insurance.bpmn");
  auto lang = weak_trace_language(net, 6);
  std::size_t same = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ReduceOptions o;
    o.shuffle_seed = seed;
    Reduction r = reduce(net, o);
    EXPECT_EQ(weak_trace_language(r.net, 6), lang) << seed;
    same += serialize_net(r.net) == serialize_net(reduce(net).net);
  }
  RecordProperty("confluent_runs", static_cast<int>(same));
}

TEST(Reducer, UnsafeInputRejected) {
  try {
    reduce(translated("unsafe_and_xor.bpmn"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonSafeInput);
  }
}
