#pragma once

#include <string>

#include "bpmnc/analysis.hpp"
#include "bpmnc/bpmn_model.hpp"
#include "bpmnc/codegen.hpp"
#include "bpmnc/dataflow.hpp"
#include "bpmnc/reducer.hpp"
#include "bpmnc/translator.hpp"

namespace bpmnc {

struct CompileOptions {
  MergePolicy merge = MergePolicy::Auto;
  std::size_t budget = kDefaultStateBudget;
};

// Every intermediate product of one compilation.
struct Compilation {
  ProcessModel model;  // normalized
  Translation translation;
  SoundnessReport soundness;
  Reduction reduction;
  PetriNet annotated;  // reduced net with guards and evals
  GuardTable guards;
  ContractImage optimized;
  ContractImage baseline;
};

// parse -> normalize -> translate -> validate -> reduce -> dataflow -> emit.
// Throws UnsoundModel / UnsafeModel before reduction.
Compilation compile_model(const ProcessModel& model, const CompileOptions& options = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
ProcessModel load_model(const std::string& path);

}  // namespace bpmnc
