#include "bpmnc/manifest.hpp"

#include <json.hpp>

#include "bpmnc/error.hpp"

namespace bpmnc {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json bits_json(const Bits& b) { return b.to_hex(); }

Bits bits_from(const json& j, std::size_t width) {
  try {
    return Bits::from_hex(width, j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::MalformedManifest, std::string("bad mask: ") + e.what());
  }
}

json cubes_json(const std::vector<Cube>& cubes) {
  json arr = json::array();
  for (const auto& c : cubes) arr.push_back({{"mask", bits_json(c.mask)}, {"expected", bits_json(c.expected)}});
  return arr;
}

std::vector<Cube> cubes_from(const json& j, std::size_t width) {
  std::vector<Cube> out;
  for (const auto& c : j) out.push_back({bits_from(c.at("mask"), width), bits_from(c.at("expected"), width)});
  return out;
}

FunctionKind kind_from(std::string_view s) {
  if (s == "public") return FunctionKind::Public;
  if (s == "internal") return FunctionKind::Internal;
  if (s == "relay") return FunctionKind::Relay;
  throw Error(ErrorKind::MalformedManifest, "unknown function kind " + std::string(s));
}

json function_json(const FunctionSpec& f) {
  json j{{"id", f.id},
         {"name", f.name},
         {"kind", std::string(to_string(f.kind))},
         {"enable_mask", bits_json(f.enable_mask)},
         {"enable_expected", bits_json(f.enable_expected)},
         {"guarded", f.guarded},
         {"guard", cubes_json(f.guard)},
         {"clear_mask", bits_json(f.clear_mask)},
         {"set_mask", bits_json(f.set_mask)},
         {"predicate_clear", bits_json(f.predicate_clear)},
         {"gas_profile",
          {{"reads", f.gas_profile.reads}, {"writes", f.gas_profile.writes}, {"compares", f.gas_profile.compares}}}};
  j["label"] = f.label ? json(*f.label) : json(nullptr);
  json computes = json::array();
  for (const auto& [atom, bit] : f.computes) computes.push_back({atom, bit});
  j["computes"] = computes;
  return j;
}

FunctionSpec function_from(const json& j, std::size_t width) {
  FunctionSpec f;
  f.id = j.at("id").get<std::string>();
  f.name = j.at("name").get<std::string>();
  if (!j.at("label").is_null()) f.label = j.at("label").get<std::string>();
  f.kind = kind_from(j.at("kind").get<std::string>());
  f.enable_mask = bits_from(j.at("enable_mask"), width);
  f.enable_expected = bits_from(j.at("enable_expected"), width);
  f.guarded = j.at("guarded").get<bool>();
  f.guard = cubes_from(j.at("guard"), width);
  f.clear_mask = bits_from(j.at("clear_mask"), width);
  f.set_mask = bits_from(j.at("set_mask"), width);
  f.predicate_clear = bits_from(j.at("predicate_clear"), width);
  for (const auto& c : j.at("computes")) f.computes.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::size_t>());
  const auto& g = j.at("gas_profile");
  f.gas_profile = {g.at("reads").get<std::size_t>(), g.at("writes").get<std::size_t>(),
                   g.at("compares").get<std::size_t>()};
  return f;
}

json graph_json(const BaselineGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json out = json::array();
    for (const auto& f : n.out) {
      json fj{{"target", f.target}, {"conditional", f.conditional}, {"condition", cubes_json(f.condition)}};
      fj["join_cell"] = f.join_cell ? json(*f.join_cell) : json(nullptr);
      out.push_back(fj);
    }
    json nj{{"id", n.id},     {"label", n.label},           {"kind", std::string(to_string(n.kind))},
            {"out", out},     {"join_cells", n.join_cells}, {"race", n.race},
            {"reads_predicates", n.reads_predicates}};
    nj["cell"] = n.cell ? json(*n.cell) : json(nullptr);
    nodes.push_back(nj);
  }
  return {{"start", g.start}, {"nodes", nodes}};
}

BaselineGraph graph_from(const json& j, std::size_t width) {
  BaselineGraph g;
  g.start = j.at("start").get<std::size_t>();
  for (const auto& nj : j.at("nodes")) {
    BaselineNode n;
    n.id = nj.at("id").get<std::string>();
    n.label = nj.at("label").get<std::string>();
    auto kind = node_kind_from_string(nj.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorKind::MalformedManifest, "unknown node kind in graph");
    n.kind = *kind;
    if (!nj.at("cell").is_null()) n.cell = nj.at("cell").get<std::size_t>();
    for (const auto& fj : nj.at("out")) {
      BaselineFlow f;
      f.target = fj.at("target").get<std::size_t>();
      f.conditional = fj.at("conditional").get<bool>();
      f.condition = cubes_from(fj.at("condition"), width);
      if (!fj.at("join_cell").is_null()) f.join_cell = fj.at("join_cell").get<std::size_t>();
      n.out.push_back(std::move(f));
    }
    n.join_cells = nj.at("join_cells").get<std::vector<std::size_t>>();
    n.race = nj.at("race").get<std::vector<std::size_t>>();
    n.reads_predicates = nj.at("reads_predicates").get<bool>();
    g.nodes.push_back(std::move(n));
  }
  return g;
}

}  // namespace

std::string write_manifest(const ContractImage& img) {
  json layout = json::array();
  for (const auto& c : img.state_layout) layout.push_back({{"id", c.id}, {"offset", c.offset}, {"width", c.width}});
  json tasks = json::array(), internals = json::array();
  for (const auto& f : img.task_functions) tasks.push_back(function_json(f));
  for (const auto& f : img.internal_functions) internals.push_back(function_json(f));
  json j{{"format", kFormatVersion},
         {"backend", std::string(to_string(img.backend))},
         {"name", img.name},
         {"words", img.words},
         {"state_layout", layout},
         {"initial_state", bits_json(img.initial_state)},
         {"control_region", bits_json(img.control_region)},
         {"predicate_region", bits_json(img.predicate_region)},
         {"merged", img.merged},
         {"place_ids", img.place_ids},
         {"predicate_bits", img.predicate_bits},
         {"task_functions", tasks},
         {"internal_functions", internals},
         {"step_order", img.step_order},
         {"evals_by_label", img.evals_by_label},
         {"start_label", img.start_label},
         {"code_size", img.code_size},
         {"source_text", img.source_text}};
  j["graph"] = img.graph ? graph_json(*img.graph) : json(nullptr);
  return j.dump(2) + "\n";
}

ContractImage read_manifest(std::string_view text) {
  try {
    json j = json::parse(text);
    if (j.at("format").get<int>() != kFormatVersion) throw Error(ErrorKind::MalformedManifest, "unsupported format");
    ContractImage img;
    auto backend = j.at("backend").get<std::string>();
    if (backend == to_string(Backend::Optimized)) img.backend = Backend::Optimized;
    else if (backend == to_string(Backend::Baseline)) img.backend = Backend::Baseline;
    else throw Error(ErrorKind::MalformedManifest, "unknown backend " + backend);
    img.name = j.at("name").get<std::string>();
    img.words = j.at("words").get<std::size_t>();
    if (img.words == 0 || img.words > 64) throw Error(ErrorKind::MalformedManifest, "bad word count");
    const std::size_t w = img.width();
    for (const auto& c : j.at("state_layout"))
      img.state_layout.push_back(
          {c.at("id").get<std::string>(), c.at("offset").get<std::size_t>(), c.at("width").get<std::size_t>()});
    img.initial_state = bits_from(j.at("initial_state"), w);
    img.control_region = bits_from(j.at("control_region"), w);
    img.predicate_region = bits_from(j.at("predicate_region"), w);
    img.merged = j.at("merged").get<bool>();
    img.place_ids = j.at("place_ids").get<std::vector<std::string>>();
    img.predicate_bits = j.at("predicate_bits").get<std::map<std::string, std::size_t>>();
    for (const auto& f : j.at("task_functions")) img.task_functions.push_back(function_from(f, w));
    for (const auto& f : j.at("internal_functions")) img.internal_functions.push_back(function_from(f, w));
    img.step_order = j.at("step_order").get<std::vector<std::string>>();
    img.evals_by_label = j.at("evals_by_label").get<std::map<std::string, std::vector<std::string>>>();
    img.start_label = j.at("start_label").get<std::string>();
    img.code_size = j.at("code_size").get<std::size_t>();
    img.source_text = j.at("source_text").get<std::string>();
    if (!j.at("graph").is_null()) img.graph = graph_from(j.at("graph"), w);
    for (const auto& c : img.state_layout)
      if (c.offset + c.width > w) throw Error(ErrorKind::MalformedManifest, "cell " + c.id + " outside state");
    return img;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedManifest, e.what());
  }
}

}  // namespace bpmnc
