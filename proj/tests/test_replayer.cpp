#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <sys/wait.h>

#include "bpmnc/event_log.hpp"
#include "bpmnc/manifest.hpp"
#include "bpmnc/replayer.hpp"
#include "support.hpp"

using namespace bpmnc;
using testing_support::compile_fixture;
using testing_support::fixture;

namespace fs = std::filesystem;

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

int run_cli(const std::string& args) {
  std::string cmd = std::string(BPMNC_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bpmnc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(EventLog, RoundTripWithWeights) {
  EventLog log;
  log.traces.push_back({"a", 3, {{"Start", {}}, {"B", {{"P", true}, {"Q", false}}}}});
  log.traces.push_back({"b", 1, {{"Start", {}}}});
  std::string text = write_log(log);
  EXPECT_EQ(parse_log(text), log);
  EXPECT_NE(text.find("#!weight a=3"), std::string::npos);
}

TEST(EventLog, MalformedLinesNamed) {
  auto message = [](const std::string& text) {
    try {
      parse_log(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MalformedLog);
      return std::string(e.what());
    }
    ADD_FAILURE() << "accepted: " << text;
    return std::string();
  };
  EXPECT_NE(message("t,0,Start,\nt,1,B,P=2\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("t,0,Start,\nt,2,A,\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("t,0,Start\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("#!weight t=0\nt,0,Start,\n").find("line 1"), std::string::npos);
}

TEST(EventLog, HeaderAndCommentsIgnored) {
  EventLog log = parse_log("trace_id,seq,label,assignments\n# note\nx,0,Start,\nx,1,A,\n");
  ASSERT_EQ(log.traces.size(), 1u);
  EXPECT_EQ(log.traces[0].events.size(), 2u);
}

TEST(LogGen, FixtureLogsRegenerateIdentically) {
  struct Gen {
    std::string model, log;
    LogGenOptions opt;
  };
  std::vector<Gen> gens{{"supply_chain.bpmn", "logs/supply_chain.log", {5, 57, 11, std::nullopt, 120}},
                        {"incident.bpmn", "logs/incident.log", {4, 120, 12, std::nullopt, 120}},
                        {"insurance.bpmn", "logs/insurance.log", {17, 262, 13, std::nullopt, 120}},
                        {"invoicing.bpmn", "logs/invoicing.log", {49, 0, 14, 5316, 120}}};
  for (const auto& g : gens) {
    Compilation c = compile_fixture(g.model);
    std::string text = write_log(generate_log(c, g.opt));
    EXPECT_EQ(text, read_text_file(fixture(g.log))) << g.model;
    EXPECT_EQ(text, write_log(generate_log(c, g.opt))) << g.model;
  }
}

TEST(LogGen, InvoicingWeightsSum) {
  EventLog log = read_log_file(fixture("logs/invoicing.log"));
  std::uint64_t total = 0;
  for (const auto& t : log.traces) total += t.weight;
  EXPECT_EQ(log.traces.size(), 49u);
  EXPECT_EQ(total, 5316u);
}

TEST(LogGen, InsufficientDistinctTraces) {
  Compilation c = compile_fixture("loan.bpmn");
  EXPECT_EQ(kind_of([&] { generate_log(c, {50, 0, 1, std::nullopt, 120}); }), ErrorKind::InsufficientDistinctTraces);
}

TEST(Replay, EmptyLogHasNoAverages) {
  Compilation c = compile_fixture("loan.bpmn");
  ReplayReport r = replay_log(c.optimized, EventLog{});
  EXPECT_TRUE(r.rows.empty());
  EXPECT_FALSE(r.avg_instantiation.has_value());
  EXPECT_FALSE(r.avg_execution.has_value());
  EXPECT_FALSE(compare_reports(r, r).combined_savings.has_value());
}

TEST(Replay, WeightedAveragesRecomputeFromRows) {
  Compilation c = compile_fixture("invoicing.bpmn");
  EventLog log = read_log_file(fixture("logs/invoicing.log"));
  ReplayReport r = replay_log(c.optimized, log);
  double w = 0, inst = 0, exec = 0;
  for (const auto& row : r.rows) {
    w += static_cast<double>(row.weight);
    inst += static_cast<double>(row.weight * row.verdict.deploy_gas);
    exec += static_cast<double>(row.weight * row.verdict.execution_gas);
  }
  EXPECT_DOUBLE_EQ(*r.avg_instantiation, inst / w);
  EXPECT_DOUBLE_EQ(*r.avg_execution, exec / w);
  EXPECT_EQ(r.conforming, 49u);
  EXPECT_EQ(r.completed, 49u);
}

TEST(Replay, OptimizedCheaperOnEveryTrace) {
  for (const auto& fc : testing_support::fixture_cases()) {
    Compilation c = compile_fixture(fc.model);
    EventLog log = read_log_file(fixture(fc.log));
    CostComparison cmp = compare_reports(replay_log(c.optimized, log), replay_log(c.baseline, log));
    EXPECT_TRUE(cmp.dominance_violations.empty()) << fc.model << ": " << cmp.dominance_violations.size();
    EXPECT_GT(*cmp.combined_savings, 0.0) << fc.model;
  }
}

TEST(Replay, ReportRendering) {
  Compilation c = compile_fixture("supply_chain.bpmn");
  EventLog log = read_log_file(fixture("logs/supply_chain.log"));
  ReplayReport o = replay_log(c.optimized, log), b = replay_log(c.baseline, log);
  std::string rows = render_report(o);
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 63);
  std::string sum = render_summary(o, &b);
  EXPECT_NE(sum.find("62,optimized,"), std::string::npos);
  EXPECT_NE(sum.find("62,baseline,"), std::string::npos);
}

TEST(Throughput, ConservationAndLimits) {
  Compilation c = compile_fixture("insurance.bpmn");
  EventLog log = read_log_file(fixture("logs/insurance.log"));
  ThroughputConfig cfg;
  cfg.instances = 60;
  for (const ContractImage* img : {&c.optimized, &c.baseline}) {
    ThroughputResult r = simulate_throughput(*img, log, cfg);
    std::size_t creations = 0, events = 0;
    for (const auto& b : r.blocks) {
      EXPECT_LE(b.gas, cfg.block_gas_limit);
      creations += b.creations;
      events += b.events;
      EXPECT_EQ(b.active + b.completed, creations);
    }
    EXPECT_EQ(creations, cfg.instances);
    EXPECT_EQ(r.blocks.back().completed, cfg.instances);
    // Every sampled trace is conforming, so events = sum of (length - 1).
    EXPECT_GT(events, cfg.instances);
  }
}

TEST(Throughput, SingleInstanceOneTransactionPerBlock) {
  Compilation c = compile_fixture("supply_chain.bpmn");
  EventLog log = read_log_file(fixture("logs/supply_chain.log"));
  ThroughputConfig cfg;
  cfg.instances = 1;
  ThroughputResult r = simulate_throughput(c.optimized, log, cfg);
  for (const auto& b : r.blocks) EXPECT_EQ(b.creations + b.events, 1u);
  EXPECT_EQ(r.blocks.size(), 11u);  // creation plus ten tasks
}

TEST(Throughput, LimitBelowDeployCost) {
  Compilation c = compile_fixture("supply_chain.bpmn");
  EventLog log = read_log_file(fixture("logs/supply_chain.log"));
  ThroughputConfig cfg;
  cfg.block_gas_limit = 100'000;
  EXPECT_EQ(kind_of([&] { simulate_throughput(c.optimized, log, cfg); }), ErrorKind::TransactionExceedsBlockLimit);
}

TEST(Throughput, InvoicingRampUp) {
  Compilation c = compile_fixture("invoicing.bpmn");
  EventLog log = read_log_file(fixture("logs/invoicing.log"));
  ThroughputConfig cfg;
  cfg.instances = 50;
  EXPECT_EQ(simulate_throughput(c.optimized, log, cfg).creations_per_block, 5u);
  EXPECT_EQ(simulate_throughput(c.baseline, log, cfg).creations_per_block, 4u);
}

TEST(Cli, ExitCodes) {
  fs::path out = scratch_dir("cli");
  EXPECT_EQ(run_cli("compile " + fixture("loan.bpmn") + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "LoanAssessment.optimized.sol"));
  EXPECT_TRUE(fs::exists(out / "LoanAssessment.baseline.manifest.json"));
  EXPECT_EQ(run_cli("compile " + fixture("unsafe_and_xor.bpmn")), 4);
  EXPECT_EQ(run_cli("compile " + fixture("unsound_xor_and.bpmn")), 3);
  EXPECT_EQ(run_cli("compile /nonexistent/model.bpmn"), 9);
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli("compile " + fixture("invoicing.bpmn") + " --budget 10"), 8);
  write_text_file((out / "bad.log").string(), "t,0,Start,\nt,1,A,P=maybe\n");
  EXPECT_EQ(run_cli("replay " + (out / "bad.log").string() + " " + (out / "LoanAssessment.optimized.manifest.json").string()),
            6);
  EXPECT_EQ(run_cli("replay " + fixture("logs/supply_chain.log") + " " +
                    (out / "LoanAssessment.optimized.manifest.json").string()),
            6);  // supply-chain labels are unknown to the loan contract
  EXPECT_EQ(run_cli("bench " + fixture("supply_chain.bpmn") + " --log " + fixture("logs/supply_chain.log") +
                    " --instances 3 --block-gas-limit 100000"),
            7);
  write_text_file((out / "big.bpmn").string(), [] {
    std::string s = "name big\nnode s StartEvent\nnode e EndEvent\n";
    for (int i = 0; i < 300; ++i) s += "node T" + std::to_string(i) + " UserTask\n";
    s += "flow s -> T0\n";
    for (int i = 0; i + 1 < 300; ++i) s += "flow T" + std::to_string(i) + " -> T" + std::to_string(i + 1) + "\n";
    return s + "flow T299 -> e\n";
  }());
  EXPECT_EQ(run_cli("compile " + (out / "big.bpmn").string() + " --out " + out.string()), 5);
  write_text_file((out / "broken.bpmn").string(), "name x\nnode s Nonsense\n");
  EXPECT_EQ(run_cli("compile " + (out / "broken.bpmn").string()), 2);
}

TEST(Cli, DeterministicOutputs) {
  fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(run_cli("gen-log " + fixture("incident.bpmn") + " --conforming 4 --nonconforming 20 --seed 5 --out " +
                      (dir / "x.log").string()),
              0);
    ASSERT_EQ(run_cli("compile " + fixture("incident.bpmn") + " --out " + dir.string()), 0);
  }
  for (const auto& f : fs::directory_iterator(a))
    EXPECT_EQ(read_text_file(f.path().string()), read_text_file((b / f.path().filename()).string()))
        << f.path().filename();
}
