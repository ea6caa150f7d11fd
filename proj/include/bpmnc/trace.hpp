#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpmnc/condition.hpp"

namespace bpmnc {

struct TraceEvent {
  std::string label;
  Assignment assignment;  // atoms decided by this event
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::string id;
  std::uint64_t weight = 1;
  std::vector<TraceEvent> events;  // events[0] creates the instance
  friend bool operator==(const Trace&, const Trace&) = default;
};

}  // namespace bpmnc
