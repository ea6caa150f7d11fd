#include <gtest/gtest.h>

#include "bpmnc/bpmn_model.hpp"
#include "bpmnc/condition.hpp"
#include "bpmnc/error.hpp"
#include "support.hpp"

using namespace bpmnc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Io;
}

const char* kTiny = R"(name tiny
atoms P
node s StartEvent
node A UserTask label=A
node g XorSplit
node B UserTask label=B
node C UserTask label=C
node e1 EndEvent
node e2 EndEvent
flow s -> A
flow A -> g
flow g -> B cond=P
flow g -> C default
flow B -> e1
flow C -> e2
)";

}  // namespace

TEST(Condition, ParseAndPrintRoundTrip) {
  for (std::string text : {"P", "!P", "P&Q", "!(P&Q)&R", "true", "false"}) {
    Condition c = Condition::parse(text);
    EXPECT_EQ(Condition::parse(c.str()), c) << text;
  }
}

TEST(Condition, SimplifiesDoubleNegationAndConstants) {
  EXPECT_EQ(Condition::negate(Condition::negate(Condition::atom("P"))), Condition::atom("P"));
  EXPECT_TRUE(Condition::conjoin(Condition::truth(), Condition::truth()).is_true());
  EXPECT_TRUE(Condition::conjoin(Condition::atom("P"), Condition::falsity()).is_false());
}

TEST(Condition, EquivalenceByTruthTable) {
  EXPECT_TRUE(equivalent(Condition::parse("!(!P&!Q)&!Q"), Condition::parse("P&!Q")));
  EXPECT_FALSE(equivalent(Condition::parse("P"), Condition::parse("Q")));
}

TEST(Condition, CubesMatchEvaluation) {
  Condition c = Condition::parse("!(P&Q)&R");
  std::map<std::string, std::size_t> bits{{"P", 0}, {"Q", 1}, {"R", 2}};
  auto cubes = c.to_cubes(bits, 8);
  for (unsigned v = 0; v < 8; ++v) {
    Bits b = Bits::from_u64(8, v);
    bool any = false;
    for (const auto& cube : cubes) any = any || (b & cube.mask) == cube.expected;
    Assignment a{{"P", (v & 1) != 0}, {"Q", (v & 2) != 0}, {"R", (v & 4) != 0}};
    EXPECT_EQ(any, c.eval(a)) << v;
  }
}

TEST(Condition, MalformedExpressionRejected) {
  EXPECT_EQ(kind_of([] { Condition::parse("P&"); }), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of([] { Condition::parse("(P"); }), ErrorKind::MalformedDocument);
}

TEST(Model, ParseSerializeRoundTrip) {
  ProcessModel m = parse_model(kTiny);
  EXPECT_EQ(parse_model(serialize_model(m)), m);
  ProcessModel loan = load_model(testing_support::fixture("loan.bpmn"));
  EXPECT_EQ(parse_model(serialize_model(loan)), loan);
}

TEST(Model, DefaultFlowBecomesNegationOfSibling) {
  ProcessModel m = normalize_conditions(parse_model(kTiny));
  for (const auto& f : m.flows) {
    ASSERT_TRUE(f.condition.has_value());
    if (f.is_default) {
      EXPECT_TRUE(equivalent(*f.condition, Condition::parse("!P")));
    }
  }
}

TEST(Model, ThreeWayDefaultIsExclusive) {
  std::string text = R"(name three
atoms P,Q
node s StartEvent
node A UserTask
node g XorSplit
node B UserTask
node C UserTask
node D UserTask
node j XorJoin
node e EndEvent
flow s -> A
flow A -> g
flow g -> B cond=P
flow g -> C cond=Q
flow g -> D default
flow B -> j
flow C -> j
flow D -> j
flow j -> e
)";
  ProcessModel m = normalize_conditions(parse_model(text));
  const SequenceFlow& d = m.flows[m.outgoing("g")[2]];
  ASSERT_TRUE(d.is_default);
  EXPECT_TRUE(equivalent(*d.condition, Condition::parse("!P&!Q")));
  // The outgoing conditions still cover every valuation.
  for (int v = 0; v < 4; ++v) {
    Assignment a{{"P", (v & 1) != 0}, {"Q", (v & 2) != 0}};
    bool any = false;
    for (auto fi : m.outgoing("g")) any = any || m.flows[fi].condition->eval(a);
    EXPECT_TRUE(any);
  }
}

TEST(Model, TwoDefaultFlowsAreAmbiguous) {
  ProcessModel m = parse_model(kTiny);
  for (auto& f : m.flows)
    if (f.source == "g") f.is_default = true, f.condition.reset();
  EXPECT_EQ(kind_of([&] { normalize_conditions(m); }), ErrorKind::DefaultFlowAmbiguity);
}

TEST(Model, StructuralErrors) {
  auto replace = [](std::string s, const std::string& from, const std::string& to) {
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  std::string base = kTiny;
  EXPECT_EQ(kind_of([&] { parse_model(replace(base, "flow B -> e1", "flow B -> nowhere")); }),
            ErrorKind::DanglingFlowReference);
  EXPECT_EQ(kind_of([&] { parse_model(replace(base, "node A UserTask label=A", "node A TimerEvent")); }),
            ErrorKind::UnsupportedElement);
  EXPECT_EQ(kind_of([&] { parse_model(replace(base, "node s StartEvent\n", "")); }),
            ErrorKind::CardinalityViolation);
  EXPECT_EQ(kind_of([&] { parse_model(replace(base, "cond=P", "cond=Z")); }), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of([&] { parse_model(replace(base, "flow B -> e1\n", "")); }), ErrorKind::CardinalityViolation);
  EXPECT_EQ(kind_of([&] { parse_model("name x\nbogus line\n"); }), ErrorKind::MalformedDocument);
}

TEST(Model, EventGatewayNeedsMessageEvents) {
  std::string text = R"(name ev
node s StartEvent
node g EventBasedSplit
node A UserTask
node M MessageEvent
node j XorJoin
node e EndEvent
flow s -> g
flow g -> A
flow g -> M
flow A -> j
flow M -> j
flow j -> e
)";
  EXPECT_EQ(kind_of([&] { parse_model(text); }), ErrorKind::UnsupportedElement);
}
