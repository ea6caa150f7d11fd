#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/codegen.hpp"
#include "bpmnc/trace.hpp"

namespace bpmnc {

struct GasModel {
  std::uint64_t read = 50;            // first touch of a storage word within a call
  std::uint64_t compare = 3;
  std::uint64_t write_set = 20'000;   // zero word becomes nonzero
  std::uint64_t write_reset = 5'000;  // any other store
  std::uint64_t tx_base = 21'000;     // per accepted call and per creation
  DeployConstants deploy;
};

struct GasLedger {
  std::uint64_t deploy = 0;  // creation: base, code size, constructor stores
  std::uint64_t base = 0;
  std::uint64_t read = 0;
  std::uint64_t write = 0;
  std::uint64_t compare = 0;
  std::uint64_t execution() const { return base + read + write + compare; }
  std::uint64_t total() const { return deploy + execution(); }
  friend bool operator==(const GasLedger&, const GasLedger&) = default;
};

enum class InstanceStatus { Running, Completed };

struct InstanceState {
  const ContractImage* image = nullptr;
  Bits storage;
  InstanceStatus status = InstanceStatus::Running;
  GasLedger gas;
};

struct EventResult {
  bool accepted = false;
  std::uint64_t gas = 0;
  bool completed = false;
  std::string diagnostic;  // why an event was rejected
};

// Storage initialised per layout, creation gas charged to the deploy ledger.
InstanceState create_instance(const ContractImage& image, const GasModel& gas = {});

// Throws InstanceAlreadyCompleted, and UnknownLabel for labels the image does
// not know. A rejected event leaves the storage untouched and costs only the
// enablement check.
EventResult submit_event(InstanceState& inst, const std::string& label, const Assignment& assignment,
                         const GasModel& gas = {});

struct Verdict {
  bool conforming = false;
  std::optional<std::size_t> failing_index;
  bool completed = false;
  std::size_t rejected = 0;
  std::uint64_t deploy_gas = 0;
  std::uint64_t execution_gas = 0;
  std::uint64_t total_gas = 0;
  std::vector<std::uint64_t> event_gas;  // per event; [0] is the creation
  std::vector<bool> accepted;            // per event
};

// Replays one trace on a fresh instance. Every event is submitted; events
// after completion count as rejected at no cost.
Verdict conformance_verdict(const ContractImage& image, const std::vector<TraceEvent>& trace,
                            const GasModel& gas = {});

// Hex digest of storage and status.
std::string state_hash(const InstanceState& inst);

}  // namespace bpmnc
