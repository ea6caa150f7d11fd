// bpmnc: compile process models to state-machine contracts, replay logs, bench.
//
// Exit codes:
//   0  success
//   1  usage error
//   2  model or manifest could not be parsed / validated
//   3  model is unsound
//   4  model is unsafe
//   5  marking or predicate width above 256 bits
//   6  log problem: unknown label or malformed line
//   7  a transaction exceeds the block gas limit
//   8  state-space budget exhausted
//   9  file I/O failure
//   10 anything else (including InsufficientDistinctTraces)

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "bpmnc/error.hpp"
#include "bpmnc/event_log.hpp"
#include "bpmnc/manifest.hpp"
#include "bpmnc/pipeline.hpp"
#include "bpmnc/replayer.hpp"

namespace fs = std::filesystem;
using namespace bpmnc;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedDocument:
    case ErrorKind::DanglingFlowReference:
    case ErrorKind::UnsupportedElement:
    case ErrorKind::CardinalityViolation:
    case ErrorKind::DefaultFlowAmbiguity:
    case ErrorKind::UnsupportedNodeKind:
    case ErrorKind::MalformedManifest:
      return 2;
    case ErrorKind::UnsoundModel: return 3;
    case ErrorKind::UnsafeModel:
    case ErrorKind::NonSafeInput:
      return 4;
    case ErrorKind::MarkingWidthExceeded:
    case ErrorKind::PredicateWidthExceeded:
      return 5;
    case ErrorKind::UnknownLabel:
    case ErrorKind::MalformedLog:
      return 6;
    case ErrorKind::TransactionExceedsBlockLimit: return 7;
    case ErrorKind::StateSpaceBudgetExceeded: return 8;
    case ErrorKind::Io: return 9;
    default: return 10;
  }
}

struct Options {
  std::string model;
  std::string backend = "both";
  std::string merge = "auto";
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t block_gas_limit = 4'700'000;
  std::size_t budget = kDefaultStateBudget;
  // replay
  std::string log;
  std::vector<std::string> manifests;
  // bench
  std::size_t instances = 500;
  // gen-log
  std::size_t conforming = 10;
  std::size_t nonconforming = 0;
  std::uint64_t total_weight = 0;
  // dump-net
  bool reduced = false;
  bool show_trace = false;
};

CompileOptions compile_options(const Options& o) {
  CompileOptions c;
  c.budget = o.budget;
  c.merge = o.merge == "never" ? MergePolicy::Never : MergePolicy::Auto;
  return c;
}

std::vector<const ContractImage*> selected(const Options& o, const Compilation& c) {
  std::vector<const ContractImage*> out;
  if (o.backend != "baseline") out.push_back(&c.optimized);
  if (o.backend != "optimized") out.push_back(&c.baseline);
  return out;
}

// Writes to --out when given, else stdout.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else write_text_file(o.out, text);
}

int cmd_compile(const Options& o) {
  Compilation c = compile_model(load_model(o.model), compile_options(o));
  fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string());
  for (const auto* img : selected(o, c)) {
    std::string stem = img->name + "." + std::string(to_string(img->backend));
    write_text_file((dir / (stem + ".sol")).string(), img->source_text);
    write_text_file((dir / (stem + ".manifest.json")).string(), write_manifest(*img));
    std::cout << stem << " words=" << img->words << " code_size=" << img->code_size
              << " deploy_estimate=" << estimate_deploy_cost(*img) << '\n';
  }
  return 0;
}

int cmd_replay(const Options& o) {
  EventLog log = read_log_file(o.log);
  std::vector<ContractImage> images;
  for (const auto& m : o.manifests) images.push_back(read_manifest(read_text_file(m)));
  std::vector<ReplayReport> reports;
  for (const auto& img : images) reports.push_back(replay_log(img, log));
  std::string text;
  for (const auto& r : reports) text += "# backend " + std::string(to_string(r.backend)) + "\n" + render_report(r);
  const ReplayReport* opt = nullptr;
  const ReplayReport* base = nullptr;
  for (const auto& r : reports) (r.backend == Backend::Optimized ? opt : base) = &r;
  if (opt && base) text += render_summary(*opt, base);
  else if (!reports.empty()) text += render_summary(reports.front());
  emit(o, text);
  for (const auto& r : reports)
    std::cerr << to_string(r.backend) << ": " << r.conforming << " conforming, " << r.nonconforming
              << " non-conforming, " << r.rejected << " rejected calls\n";
  return 0;
}

int cmd_gen_log(const Options& o) {
  Compilation c = compile_model(load_model(o.model), compile_options(o));
  LogGenOptions g;
  g.conforming = o.conforming;
  g.nonconforming = o.nonconforming;
  g.seed = o.seed;
  if (o.total_weight) g.total_weight = o.total_weight;
  emit(o, write_log(generate_log(c, g)));
  return 0;
}

int cmd_bench(const Options& o) {
  Compilation c = compile_model(load_model(o.model), compile_options(o));
  EventLog log;
  if (!o.log.empty()) {
    log = read_log_file(o.log);
  } else {
    LogGenOptions g;
    g.seed = o.seed;
    log = generate_log(c, g);
  }
  ThroughputConfig cfg;
  cfg.block_gas_limit = o.block_gas_limit;
  cfg.instances = o.instances;
  cfg.seed = o.seed;
  fs::path dir = o.out.empty() ? fs::path() : fs::path(o.out);
  if (!o.out.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string());
  }
  std::cout << "backend,instances,blocks,creations_per_block,avg_event_gas,capacity,peak_events_per_block\n";
  std::vector<std::size_t> blocks;
  for (const auto* img : selected(o, c)) {
    ThroughputResult r = simulate_throughput(*img, log, cfg);
    blocks.push_back(r.blocks.size());
    std::cout << to_string(img->backend) << ',' << cfg.instances << ',' << r.blocks.size() << ','
              << r.creations_per_block << ',' << static_cast<std::uint64_t>(r.avg_event_gas) << ','
              << r.capacity << ',' << r.peak_events_per_block << '\n';
    if (!o.out.empty())
      write_text_file((dir / (img->name + "." + std::string(to_string(img->backend)) + ".series.csv")).string(),
                      render_series(r));
  }
  if (blocks.size() == 2 && blocks[1])
    std::cerr << "block ratio optimized/baseline = " << static_cast<double>(blocks[0]) / static_cast<double>(blocks[1])
              << '\n';
  return 0;
}

int cmd_dump_net(const Options& o) {
  ProcessModel m = normalize_conditions(load_model(o.model));
  Translation t = translate(m);
  if (!o.reduced) {
    emit(o, serialize_net(t.net));
    return 0;
  }
  validate_translation(t.net, o.budget);
  ReduceOptions ro;
  ro.verify_input = false;
  ro.budget = o.budget;
  Reduction r = reduce(t.net, ro);
  if (o.show_trace) std::cerr << render_trace(r.trace);
  emit(o, serialize_net(r.net));
  return 0;
}

int cmd_dump_guards(const Options& o) {
  Compilation c = compile_model(load_model(o.model), compile_options(o));
  emit(o, render_guard_table(c.annotated, c.guards));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile process models to state-machine contracts and evaluate them"};
  app.set_config("--config", "", "TOML/INI file overriding flags");
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file or directory");
    sub->add_option("--budget", o.budget, "State-space budget for the soundness check");
    sub->add_option("--seed", o.seed, "Random seed");
  };
  auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "optimized, baseline or both")
        ->check(CLI::IsMember({"optimized", "baseline", "both"}));
    sub->add_option("--merge", o.merge, "Predicate packing: auto or never")->check(CLI::IsMember({"auto", "never"}));
  };

  auto* compile = app.add_subcommand("compile", "Emit contract source and manifests");
  compile->add_option("model", o.model, "Model file")->required();
  add_common(compile);
  add_backend(compile);

  auto* replay = app.add_subcommand("replay", "Replay an event log against compiled manifests");
  replay->add_option("log", o.log, "Event log")->required();
  replay->add_option("manifests", o.manifests, "One manifest per backend")->required();
  add_common(replay);

  auto* bench = app.add_subcommand("bench", "Block-gas-limited throughput simulation");
  bench->add_option("model", o.model, "Model file")->required();
  bench->add_option("--log", o.log, "Event log (default: generated)");
  bench->add_option("--instances", o.instances, "Process instances to run");
  bench->add_option("--block-gas-limit", o.block_gas_limit, "Gas per block");
  add_common(bench);
  add_backend(bench);

  auto* gen = app.add_subcommand("gen-log", "Generate a seeded event log");
  gen->add_option("model", o.model, "Model file")->required();
  gen->add_option("--conforming", o.conforming, "Distinct conforming traces");
  gen->add_option("--nonconforming", o.nonconforming, "Distinct non-conforming traces");
  gen->add_option("--total-weight", o.total_weight, "Spread this many occurrences over conforming traces");
  add_common(gen);

  auto* dnet = app.add_subcommand("dump-net", "Print the translated or reduced net");
  dnet->add_option("model", o.model, "Model file")->required();
  dnet->add_flag("--reduced", o.reduced, "Print the reduced net");
  dnet->add_flag("--trace", o.show_trace, "Print reduction steps to stderr");
  add_common(dnet);

  auto* dguards = app.add_subcommand("dump-guards", "Print guards and eval sets");
  dguards->add_option("model", o.model, "Model file")->required();
  add_common(dguards);
  dguards->add_option("--merge", o.merge, "Predicate packing: auto or never")
      ->check(CLI::IsMember({"auto", "never"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*compile) return cmd_compile(o);
    if (*replay) return cmd_replay(o);
    if (*bench) return cmd_bench(o);
    if (*gen) return cmd_gen_log(o);
    if (*dnet) return cmd_dump_net(o);
    if (*dguards) return cmd_dump_guards(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (!e.witness().empty()) {
      std::cerr << "witness:";
      for (const auto& step : e.witness()) std::cerr << ' ' << step;
      std::cerr << '\n';
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 10;
  }
  return 1;
}
