#include "bpmnc/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "bpmnc/error.hpp"

namespace bpmnc {

Compilation compile_model(const ProcessModel& input, const CompileOptions& options) {
  Compilation c;
  c.model = normalize_conditions(input);
  c.translation = translate(c.model);
  c.soundness = validate_translation(c.translation.net, options.budget);
  ReduceOptions ro;
  ro.verify_input = false;  // validate_translation already proved safeness
  ro.budget = options.budget;
  c.reduction = reduce(c.translation.net, ro);
  auto [net, table] = annotate(c.reduction.net, c.model, c.translation.map);
  c.annotated = std::move(net);
  c.guards = std::move(table);
  c.optimized = emit_optimized(c.annotated, c.guards, c.model, options.merge);
  c.baseline = emit_baseline(c.model, c.guards);
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "short write to " + path);
}

ProcessModel load_model(const std::string& path) { return parse_model(read_text_file(path)); }

}  // namespace bpmnc
