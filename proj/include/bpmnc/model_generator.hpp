#pragma once

#include <cstdint>

#include "bpmnc/bpmn_model.hpp"

namespace bpmnc {

struct GeneratorOptions {
  std::size_t max_tasks = 12;  // activities, message events included
  std::size_t max_depth = 4;   // nesting of gateway blocks
  bool event_splits = true;
  bool script_tasks = true;
};

// Random block-structured model: sequences, XOR blocks preceded by a user
// task that decides fresh atoms, AND blocks and event-based races. An XOR
// block may leave only its last (default) branch empty. Deterministic per
// seed within one build.
ProcessModel generate_model(std::uint64_t seed, const GeneratorOptions& options = {});

}  // namespace bpmnc
