#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/codegen.hpp"
#include "bpmnc/event_log.hpp"
#include "bpmnc/pipeline.hpp"
#include "bpmnc/vm.hpp"

namespace bpmnc {

struct TraceRow {
  std::string id;
  std::uint64_t weight = 1;
  std::size_t events = 0;  // creation included
  Verdict verdict;
};

struct ReplayReport {
  Backend backend = Backend::Optimized;
  std::vector<TraceRow> rows;
  std::size_t conforming = 0;
  std::size_t nonconforming = 0;
  std::uint64_t total_weight = 0;
  std::size_t rejected = 0;  // rejected event calls over all rows
  std::size_t completed = 0;
  // Weight-averaged over all rows; absent for an empty log.
  std::optional<double> avg_instantiation;
  std::optional<double> avg_execution;
  std::optional<double> avg_total;
  // Weight-averaged gas of an accepted event call, creation excluded.
  std::optional<double> avg_event_gas;
};

ReplayReport replay_log(const ContractImage& image, const EventLog& log, const GasModel& gas = {});

// Relative savings of the optimized backend, 1 - optimized/baseline. Absent
// when either report has no rows.
struct CostComparison {
  std::optional<double> instantiation_savings;
  std::optional<double> execution_savings;
  std::optional<double> combined_savings;
  // Traces where the optimized total is not strictly below the baseline.
  std::vector<std::string> dominance_violations;
};

CostComparison compare_reports(const ReplayReport& optimized, const ReplayReport& baseline);

// CSV: trace_id,weight,conforming,failing_index,rejected,completed,deploy_gas,execution_gas,total_gas
std::string render_report(const ReplayReport& report);

// CSV: tested_traces,backend,avg_instantiation,avg_execution,instantiation_savings,
// execution_savings,combined_savings. One row per report; savings only on the
// optimized row when a baseline report is given.
std::string render_summary(const ReplayReport& report, const ReplayReport* baseline = nullptr);

struct ThroughputConfig {
  std::uint64_t block_gas_limit = 4'700'000;
  std::size_t instances = 500;
  std::uint64_t seed = 1;
  std::size_t smoothing_window = 20;
};

struct BlockStats {
  std::size_t creations = 0;
  std::size_t events = 0;
  std::uint64_t gas = 0;
  std::size_t active = 0;     // created and not yet finished after this block
  std::size_t completed = 0;  // finished so far
  double smoothed_tx = 0;     // trailing mean of transactions per block
};

struct ThroughputResult {
  std::vector<BlockStats> blocks;
  std::size_t creations_per_block = 0;  // in the first block
  double avg_event_gas = 0;             // weighted, accepted events of conforming traces
  std::uint64_t capacity = 0;           // floor(limit / avg_event_gas)
  double peak_events_per_block = 0;     // best smoothed value once creations are done
};

// CSV: block,creations,events,gas,active,completed,smoothed_tx
std::string render_series(const ThroughputResult& result);

// Instances draw traces from the conforming rows of `log` by weight. All
// creations are queued at once; an instance queues its next event after the
// previous one is included. Blocks take queued transactions in FIFO order
// and close at the first one that does not fit. Throws
// TransactionExceedsBlockLimit when a single call exceeds the limit.
ThroughputResult simulate_throughput(const ContractImage& image, const EventLog& log,
                                     const ThroughputConfig& config = {}, const GasModel& gas = {});

struct LogGenOptions {
  std::size_t conforming = 10;
  std::size_t nonconforming = 0;
  std::uint64_t seed = 1;
  // When set, conforming traces get random weights summing to this.
  std::optional<std::uint64_t> total_weight;
  std::size_t max_trace_length = 120;
};

// Conforming traces from seeded random walks on the annotated net, and
// non-conforming ones from oracle-checked mutations (swap, drop, duplicate,
// inject, flip). Throws InsufficientDistinctTraces when the model does not
// admit the requested number of distinct traces.
EventLog generate_log(const Compilation& compilation, const LogGenOptions& options);

}  // namespace bpmnc
