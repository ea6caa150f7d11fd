#include "bpmnc/codegen.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "bpmnc/error.hpp"

namespace bpmnc {

std::string_view to_string(Backend b) { return b == Backend::Optimized ? "optimized" : "baseline"; }

std::string_view to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::Public: return "public";
    case FunctionKind::Internal: return "internal";
    case FunctionKind::Relay: return "relay";
  }
  return "?";
}

const FunctionSpec* ContractImage::public_function(std::string_view label) const {
  for (const auto& f : task_functions)
    if (f.label && *f.label == label) return &f;
  return nullptr;
}

bool ContractImage::initial_step() const {
  if (backend != Backend::Optimized) return false;
  return std::any_of(internal_functions.begin(), internal_functions.end(),
                     [&](const FunctionSpec& f) { return (f.enable_mask & initial_state).any(); });
}

const FunctionSpec* ContractImage::internal_function(std::string_view id) const {
  for (const auto& f : internal_functions)
    if (f.id == id) return &f;
  return nullptr;
}

namespace {

// Bits [offset, offset + width) of `b`, moved down to bit 0.
Bits slice(const Bits& b, std::size_t offset, std::size_t width) {
  Bits r(width);
  for (std::size_t i = 0; i < width; ++i)
    if (b.test(offset + i)) r.set(i);
  return r;
}

std::string identifier(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "_" + out;
  return out;
}

std::string contract_name(const std::string& model_name) {
  std::string out;
  bool up = true;
  for (char c : model_name) {
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      up = true;
      continue;
    }
    out.push_back(up ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    up = false;
  }
  return out.empty() ? "Process" : out;
}

// One storage variable as seen by the emitted source.
struct Var {
  std::string name;
  std::size_t offset;
};

std::string dec(const Bits& b) { return b.to_decimal(); }

// "x & m == e" per cube, or-ed.
std::string cube_test(const std::vector<Cube>& cubes, const Var& var, std::size_t width) {
  std::vector<std::string> parts;
  for (const auto& c : cubes) {
    Bits m = slice(c.mask, var.offset, width), e = slice(c.expected, var.offset, width);
    parts.push_back(var.name + " & " + dec(m) + " == " + dec(e));
  }
  if (parts.empty()) return "false";
  if (parts.size() == 1) return parts[0];
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " || " : "") + parts[i];
  return s + ")";
}

std::size_t cube_compares(const FunctionSpec& f) { return f.guarded ? std::max<std::size_t>(f.guard.size(), 1) : 0; }

std::string script_comment(const std::string& label, const std::optional<std::string>& script) {
  std::string s = "// Task " + label + "'s script goes here";
  if (script) s += ": " + *script;
  return s;
}

}  // namespace

ContractImage emit_optimized(const PetriNet& net, const GuardTable& guards, const ProcessModel& model,
                             MergePolicy policy) {
  ContractImage img;
  img.backend = Backend::Optimized;
  img.name = contract_name(model.name);
  std::map<std::string, std::size_t> place_bit;
  for (const auto& p : net.places) {
    if (p.id == net.sink && p.id != net.source) continue;
    place_bit[p.id] = img.place_ids.size();
    img.place_ids.push_back(p.id);
  }
  const std::size_t n = img.place_ids.size();
  const std::size_t atoms = guards.predicate_order.size();
  if (n > kWordBits) throw Error(ErrorKind::MarkingWidthExceeded, std::to_string(n) + " places exceed 256 bits");
  if (atoms > kWordBits)
    throw Error(ErrorKind::PredicateWidthExceeded, std::to_string(atoms) + " predicates exceed 256 bits");
  img.merged = policy == MergePolicy::Auto && n + atoms <= kWordBits;
  img.words = img.merged || atoms == 0 ? 1 : 2;
  const std::size_t pred_base = img.merged ? n : kWordBits;
  const std::size_t W = img.width();
  img.state_layout.push_back({img.merged ? "state" : "marking", 0, img.merged ? n + atoms : n});
  if (!img.merged && atoms) img.state_layout.push_back({"predicates", kWordBits, atoms});
  img.control_region = Bits(W);
  for (std::size_t i = 0; i < n; ++i) img.control_region.set(i);
  img.predicate_region = Bits(W);
  for (const auto& a : guards.predicate_order) {
    img.predicate_bits[a] = pred_base + guards.predicate_bits.at(a);
    img.predicate_region.set(img.predicate_bits[a]);
  }
  img.initial_state = Bits(W);
  if (place_bit.count(net.source)) img.initial_state.set(place_bit[net.source]);
  img.start_label = model.start().label;

  std::size_t tau_index = 0;
  std::set<std::string> names;
  for (const auto& t : net.transitions) {
    FunctionSpec f;
    f.id = t.id;
    f.label = t.label;
    std::string base = t.label ? identifier(*t.label) : "tau" + std::to_string(++tau_index);
    f.name = base;
    for (int k = 2; names.count(f.name); ++k) f.name = base + "_" + std::to_string(k);
    names.insert(f.name);
    f.enable_mask = Bits(W);
    f.clear_mask = Bits(W);
    f.set_mask = Bits(W);
    f.predicate_clear = Bits(W);
    for (const auto& p : t.inputs)
      if (auto it = place_bit.find(p); it != place_bit.end()) f.enable_mask.set(it->second);
    for (const auto& p : t.outputs)
      if (auto it = place_bit.find(p); it != place_bit.end()) f.set_mask.set(it->second);
    f.enable_expected = f.enable_mask;
    f.clear_mask = f.enable_mask;
    f.guarded = !t.guard.is_true();
    if (f.guarded) f.guard = t.guard.to_cubes(img.predicate_bits, W);
    for (const auto& a : t.evals) {
      f.predicate_clear.set(img.predicate_bits.at(a));
      f.computes.emplace_back(a, img.predicate_bits.at(a));
    }
    if (t.label) img.evals_by_label[*t.label] = t.evals;
    if (t.external) {
      f.kind = FunctionKind::Public;
      const bool touches_preds = f.guarded || !f.computes.empty();
      f.gas_profile.reads = 1 + (touches_preds && !img.merged ? 1 : 0);
      f.gas_profile.compares = 1 + cube_compares(f) + f.computes.size();
      f.gas_profile.writes = 1 + (!f.computes.empty() && !img.merged ? 1 : 0);
      img.task_functions.push_back(std::move(f));
    } else {
      f.kind = (t.is_tau() && !f.guarded) ? FunctionKind::Relay : FunctionKind::Internal;
      f.gas_profile.compares = 1 + cube_compares(f);
      img.step_order.push_back(f.id);
      img.internal_functions.push_back(std::move(f));
    }
  }

  // Source text.
  const Var mvar{img.merged ? "state" : "marking", 0};
  const Var pvar{img.merged ? "state" : "predicates", pred_base};
  const Var tm{img.merged ? "tmpState" : "tmpMarking", 0};
  const Var tp{img.merged ? "tmpState" : "tmpPredicates", pred_base};
  auto marking_lit = [&](const Bits& b) { return dec(slice(b, 0, n)); };
  auto pred_lit = [&](const Bits& b) { return dec(slice(b, pred_base, atoms)); };
  auto node_of = [&](const std::string& label) -> const Node* {
    for (const auto& nd : model.nodes)
      if (nd.label == label) return &nd;
    return nullptr;
  };

  std::ostringstream s;
  s << "contract " << img.name << " {\n";
  if (img.merged) {
    s << "  uint state = " << dec(slice(img.initial_state, 0, n)) << ";  // marking: bits 0-" << (n ? n - 1 : 0)
      << ", predicates: bits " << n << "-" << n + atoms - 1 << "\n";
  } else {
    s << "  uint marking = " << marking_lit(img.initial_state) << ";\n";
    s << "  uint predicates = 0;\n";
  }
  if (img.initial_step())
    s << "\n  constructor() {\n    step(" << (img.merged ? "state" : "marking, predicates") << ");\n  }\n";
  auto guard_clause = [&](const FunctionSpec& f, const Var& m, const Var& p) {
    std::string c = m.name + " & " + marking_lit(f.enable_mask) + " == " + marking_lit(f.enable_expected);
    if (f.guarded) c += " && " + cube_test(f.guard, p, img.merged ? n + atoms : atoms);
    return c;
  };
  auto eval_lines = [&](const FunctionSpec& f, const std::string& indent) {
    std::string out = indent + "uint tmpPreds = 0;\n";
    for (const auto& [a, bit] : f.computes) {
      Bits b(atoms);
      b.set(bit - pred_base);
      out += indent + "if (" + identifier(a) + ") tmpPreds |= " + dec(b) + ";  // eval " + a + "\n";
    }
    return out;
  };
  for (const auto& f : img.task_functions) {
    const Node* nd = node_of(*f.label);
    s << "\n  function " << f.name << "(";
    for (std::size_t i = 0; i < f.computes.size(); ++i) s << (i ? ", " : "") << "bool " << identifier(f.computes[i].first);
    s << ") public returns (bool) {\n";
    s << "    if (" << guard_clause(f, mvar, pvar) << ") {\n";
    s << "      " << script_comment(*f.label, nd ? nd->script : std::nullopt) << "\n";
    if (img.merged) {
      std::string upd = "state & uint(~" + dec(slice(f.clear_mask | f.predicate_clear, 0, n + atoms)) + ") | " +
                        marking_lit(f.set_mask);
      if (!f.computes.empty()) {
        s << eval_lines(f, "      ");
        upd += " | tmpPreds << " + std::to_string(n);
      }
      s << "      step(" << upd << ");\n";
    } else {
      std::string mupd = "marking & uint(~" + marking_lit(f.clear_mask) + ") | " + marking_lit(f.set_mask);
      std::string pupd = "predicates";
      if (!f.computes.empty()) {
        s << eval_lines(f, "      ");
        pupd = "predicates & uint(~" + pred_lit(f.predicate_clear) + ") | tmpPreds";
      }
      s << "      step(\n        " << mupd << ",  // new marking\n        " << pupd << "  // new predicates\n      );\n";
    }
    s << "      return true;\n    }\n    return false;\n  }\n";
  }
  for (const auto& f : img.internal_functions) {
    if (f.kind != FunctionKind::Internal || !f.label) continue;
    const Node* nd = node_of(*f.label);
    std::string mupd = tm.name + " & uint(~" + marking_lit(f.clear_mask) + ") | " + marking_lit(f.set_mask);
    if (f.computes.empty() || img.merged) {
      s << "\n  function " << f.name << "(uint " << tm.name << ") internal returns (uint) {\n";
      s << "    " << script_comment(*f.label, nd ? nd->script : std::nullopt) << "\n";
      if (!f.computes.empty()) s << "    // predicates " << pred_lit(f.predicate_clear) << " reset, evaluated false\n";
      if (img.merged && !f.computes.empty())
        mupd = tm.name + " & uint(~" + dec(slice(f.clear_mask | f.predicate_clear, 0, n + atoms)) + ") | " +
               marking_lit(f.set_mask);
      s << "    return " << mupd << ";\n  }\n";
    } else {
      s << "\n  function " << f.name << "(uint " << tm.name << ", uint " << tp.name
        << ") internal returns (uint, uint) {\n";
      s << "    " << script_comment(*f.label, nd ? nd->script : std::nullopt) << "\n";
      s << "    return (" << mupd << ", " << tp.name << " & uint(~" << pred_lit(f.predicate_clear) << "));\n  }\n";
    }
  }
  s << "\n  function step(uint " << tm.name << (img.merged ? "" : ", uint " + tp.name) << ") internal {\n";
  s << "    if (" << tm.name << (img.merged ? " & " + marking_lit(img.control_region) : "")
    << " == 0) { " << mvar.name << " = " << (img.merged ? tm.name : "0") << "; return; }  // process end reached\n";
  s << "    bool done = false;\n    while (!done) {\n";
  for (const auto& id : img.step_order) {
    const FunctionSpec& f = *img.internal_function(id);
    s << "      if (" << guard_clause(f, tm, tp) << ") {\n";
    if (f.kind == FunctionKind::Internal && f.label) {
      if (!f.computes.empty() && !img.merged)
        s << "        (" << tm.name << ", " << tp.name << ") = " << f.name << "(" << tm.name << ", " << tp.name << ");\n";
      else
        s << "        " << tm.name << " = " << f.name << "(" << tm.name << ");\n";
    } else {
      s << "        " << tm.name << " = " << tm.name << " & uint(~" << marking_lit(f.clear_mask) << ") | "
        << marking_lit(f.set_mask) << ";\n";
    }
    s << "        continue;\n      }\n";
  }
  s << "      done = true;\n    }\n";
  if (img.merged) {
    s << "    state = " << tm.name << ";\n";
  } else {
    s << "    marking = " << tm.name << ";\n";
    if (atoms) s << "    if (" << tp.name << " != predicates) predicates = " << tp.name << ";\n";
  }
  s << "  }\n}\n";
  img.source_text = s.str();
  img.code_size = estimate_code_size(img.source_text);
  return img;
}

ContractImage emit_baseline(const ProcessModel& input, const GuardTable& guards) {
  const ProcessModel model = normalize_conditions(input);
  ContractImage img;
  img.backend = Backend::Baseline;
  img.name = contract_name(model.name);
  BaselineGraph g;
  std::map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < model.nodes.size(); ++i) node_index[model.nodes[i].id] = i;

  // Cells in node order: a task's own cell, or one per incoming flow of a join.
  std::vector<std::string> cell_ids;
  std::map<std::size_t, std::size_t> flow_cell;
  for (const auto& nd : model.nodes) {
    BaselineNode bn{nd.id, nd.label, nd.kind, std::nullopt, {}, {}, {}};
    if (is_activity(nd.kind)) {
      bn.cell = cell_ids.size();
      cell_ids.push_back("task." + nd.id);
    } else if (is_join(nd.kind)) {
      for (auto fi : model.incoming(nd.id)) {
        flow_cell[fi] = cell_ids.size();
        bn.join_cells.push_back(cell_ids.size());
        cell_ids.push_back("edge." + model.flows[fi].source + "." + nd.id);
      }
    }
    g.nodes.push_back(std::move(bn));
  }
  const std::size_t cells_per_word = kWordBits / 8;
  const std::size_t cell_words = std::max<std::size_t>(1, (cell_ids.size() + cells_per_word - 1) / cells_per_word);
  const std::size_t atoms = guards.predicate_order.size();
  if (atoms > kWordBits)
    throw Error(ErrorKind::PredicateWidthExceeded, std::to_string(atoms) + " predicates exceed 256 bits");
  img.words = cell_words + (atoms ? 1 : 0);
  const std::size_t W = img.width();
  const std::size_t pred_base = cell_words * kWordBits;
  img.control_region = Bits(W);
  for (std::size_t c = 0; c < cell_ids.size(); ++c) {
    std::size_t off = (c / cells_per_word) * kWordBits + (c % cells_per_word) * 8;
    img.state_layout.push_back({cell_ids[c], off, 8});
    for (std::size_t k = 0; k < 8; ++k) img.control_region.set(off + k);
  }
  img.predicate_region = Bits(W);
  if (atoms) img.state_layout.push_back({"predicates", pred_base, atoms});
  for (const auto& a : guards.predicate_order) {
    img.predicate_bits[a] = pred_base + guards.predicate_bits.at(a);
    img.predicate_region.set(img.predicate_bits[a]);
  }
  img.initial_state = Bits(W);
  img.start_label = model.start().label;

  for (std::size_t i = 0; i < model.nodes.size(); ++i) {
    for (auto fi : model.outgoing(model.nodes[i].id)) {
      const auto& f = model.flows[fi];
      BaselineFlow bf;
      bf.target = node_index.at(f.target);
      const Node& src = model.nodes[i];
      if (src.kind == NodeKind::XorSplit) {
        bf.conditional = true;
        bf.condition = f.condition.value_or(Condition::truth()).to_cubes(img.predicate_bits, W);
      }
      if (auto it = flow_cell.find(fi); it != flow_cell.end()) bf.join_cell = it->second;
      g.nodes[i].out.push_back(std::move(bf));
    }
    if (model.nodes[i].kind == NodeKind::EventBasedSplit) {
      std::vector<std::size_t> cells;
      for (const auto& bf : g.nodes[i].out)
        if (g.nodes[bf.target].cell) cells.push_back(*g.nodes[bf.target].cell);
      for (const auto& bf : g.nodes[i].out) {
        auto& tgt = g.nodes[bf.target];
        for (auto c : cells)
          if (c != tgt.cell) tgt.race.push_back(c);
      }
    }
  }
  g.start = node_index.at(model.start().id);
  {
    // Fixpoint over "the walk from here meets an XOR split".
    auto walks_on = [](NodeKind k) { return k != NodeKind::UserTask && k != NodeKind::MessageEvent; };
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& nd : g.nodes) {
        bool r = nd.reads_predicates;
        for (const auto& bf : nd.out) {
          const auto& t = g.nodes[bf.target];
          r = r || t.kind == NodeKind::XorSplit || (walks_on(t.kind) && t.reads_predicates);
        }
        if (nd.kind == NodeKind::XorSplit) r = true;
        if (r != nd.reads_predicates) {
          nd.reads_predicates = r;
          changed = true;
        }
      }
    }
  }

  auto cell_mask = [&](std::size_t c) {
    Bits b(W);
    for (std::size_t k = 0; k < 8; ++k) b.set(img.state_layout[c].offset + k);
    return b;
  };
  for (const auto& nd : g.nodes) {
    if (!nd.cell) continue;
    FunctionSpec f;
    f.id = nd.id;
    f.name = identifier(nd.label);
    f.label = nd.label;
    f.kind = is_external(nd.kind) ? FunctionKind::Public : FunctionKind::Internal;
    f.enable_mask = cell_mask(*nd.cell);
    f.enable_expected = f.enable_mask;
    f.clear_mask = f.enable_mask;
    f.set_mask = Bits(W);
    f.predicate_clear = Bits(W);
    // Same eval hooks as the optimized backend: the reduced transition of a
    // task carries the task's id.
    const std::vector<std::string> ev = guards.evals_of(nd.id);
    for (const auto& a : ev) {
      f.predicate_clear.set(img.predicate_bits.at(a));
      f.computes.emplace_back(a, img.predicate_bits.at(a));
    }
    img.evals_by_label[nd.label] = ev;
    // Own cell cleared, withdrawn rivals, at least one cell per outgoing flow.
    f.gas_profile.reads = 1;
    f.gas_profile.compares = 1 + f.computes.size();
    f.gas_profile.writes = 1 + nd.race.size() + nd.out.size() + (f.computes.empty() ? 0 : 1);
    (f.kind == FunctionKind::Public ? img.task_functions : img.internal_functions).push_back(std::move(f));
  }
  img.graph = std::move(g);
  const BaselineGraph& G = *img.graph;

  // Source text: task functions inline the walk to the next tasks; every join
  // gets its own internal function so shared continuations are emitted once.
  std::ostringstream s;
  auto cell_ref = [&](std::size_t c) { return "cells[" + std::to_string(c) + "]"; };
  std::function<void(std::size_t, const std::optional<std::size_t>&, const std::string&)> enter;
  enter = [&](std::size_t ni, const std::optional<std::size_t>& via_cell, const std::string& ind) {
    const BaselineNode& nd = G.nodes[ni];
    switch (nd.kind) {
      case NodeKind::UserTask:
      case NodeKind::MessageEvent:
        s << ind << cell_ref(*nd.cell) << " = 255;  // enable " << nd.label << "\n";
        break;
      case NodeKind::ScriptTask:
        s << ind << script_comment(nd.label, model.nodes[ni].script) << "\n";
        for (const auto& bf : nd.out) enter(bf.target, bf.join_cell, ind);
        break;
      case NodeKind::EndEvent:
        s << ind << "// " << nd.label << ": process end reached\n";
        break;
      case NodeKind::XorJoin:
      case NodeKind::AndJoin:
        s << ind << "join_" << identifier(nd.id) << "(" << (via_cell ? *via_cell : 0)
          << (nd.reads_predicates ? ", tmpPreds" : "") << ");\n";
        break;
      case NodeKind::AndSplit:
      case NodeKind::EventBasedSplit:
        for (const auto& bf : nd.out) enter(bf.target, bf.join_cell, ind);
        break;
      case NodeKind::XorSplit: {
        bool first = true;
        for (const auto& bf : nd.out) {
          s << ind << (first ? "if (" : "} else if (")
            << cube_test(bf.condition, Var{"tmpPreds", pred_base}, atoms) << ") {\n";
          enter(bf.target, bf.join_cell, ind + "  ");
          first = false;
        }
        s << ind << "}\n";
        break;
      }
      case NodeKind::StartEvent:
        for (const auto& bf : nd.out) enter(bf.target, bf.join_cell, ind);
        break;
    }
  };

  s << "contract " << img.name << " {\n";
  s << "  uint8[" << cell_ids.size() << "] cells;  // 0 = disabled, 255 = enabled\n";
  if (atoms) s << "  uint predicates = 0;\n";
  s << "\n";
  s << "  constructor() {\n";
  if (G.nodes[G.start].reads_predicates) s << "    uint tmpPreds = 0;\n";
  enter(G.start, std::nullopt, "    ");
  s << "  }\n";
  for (const auto& f : img.task_functions) {
    const BaselineNode* nd = nullptr;
    for (const auto& x : G.nodes)
      if (x.id == f.id) nd = &x;
    s << "\n  function " << f.name << "(";
    for (std::size_t i = 0; i < f.computes.size(); ++i) s << (i ? ", " : "") << "bool " << identifier(f.computes[i].first);
    s << ") public returns (bool) {\n";
    s << "    if (" << cell_ref(*nd->cell) << " == 255) {\n";
    s << "      " << script_comment(nd->label, std::nullopt) << "\n";
    if (!f.computes.empty() || nd->reads_predicates) s << "      uint tmpPreds = predicates;\n";
    if (!f.computes.empty()) {
      s << "      tmpPreds = tmpPreds & uint(~" << dec(slice(f.predicate_clear, pred_base, atoms)) << ");\n";
      for (const auto& [a, bit] : f.computes) {
        Bits b(W);
        b.set(bit);
        s << "      if (" << identifier(a) << ") tmpPreds |= " << dec(slice(b, pred_base, atoms)) << ";\n";
      }
    }
    for (auto c : nd->race) s << "      " << cell_ref(c) << " = 0;  // withdraw competing event\n";
    for (const auto& bf : nd->out) enter(bf.target, bf.join_cell, "      ");
    s << "      " << cell_ref(*nd->cell) << " = 0;\n";
    if (!f.computes.empty()) s << "      if (tmpPreds != predicates) predicates = tmpPreds;\n";
    s << "      return true;\n    }\n    return false;\n  }\n";
  }
  for (const auto& nd : G.nodes) {
    if (!is_join(nd.kind)) continue;
    s << "\n  function join_" << identifier(nd.id) << "(uint edge" << (nd.reads_predicates ? ", uint tmpPreds" : "")
      << ") internal {\n";
    if (nd.kind == NodeKind::AndJoin) {
      s << "    cells[edge] = 255;\n    if (";
      for (std::size_t i = 0; i < nd.join_cells.size(); ++i)
        s << (i ? " && " : "") << cell_ref(nd.join_cells[i]) << " == 255";
      s << ") {\n";
      for (auto c : nd.join_cells) s << "      " << cell_ref(c) << " = 0;\n";
      for (const auto& bf : nd.out) enter(bf.target, bf.join_cell, "      ");
      s << "    }\n";
    } else {
      for (const auto& bf : nd.out) enter(bf.target, bf.join_cell, "    ");
    }
    s << "  }\n";
  }
  s << "}\n";
  img.source_text = s.str();
  img.code_size = estimate_code_size(img.source_text);
  return img;
}

std::size_t estimate_code_size(const std::string& src) {
  // Calibrated so the invoicing-scale model deploys at the measured scale
  // (~0.8M optimized, ~1.1M baseline).
  constexpr std::size_t kTokenBytes = 1;      // operators and names map to about one opcode
  constexpr std::size_t kFunctionBytes = 24;  // selector dispatch and argument decoding
  constexpr std::size_t kIndexBytes = 10;     // packed-array element: slot, shift and mask
  std::size_t bytes = 0;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // Byte length of the decimal literal: ceil(bits / 8), bits ~ digits * log2(10).
      std::size_t digits = j - i;
      std::size_t lit_bytes = std::max<std::size_t>(1, (digits * 3322 / 1000 + 7) / 8);
      bytes += 1 + lit_bytes;
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      bytes += src.compare(i, j - i, "function") == 0 && j - i == 8 ? kFunctionBytes : kTokenBytes;
      i = j;
    } else {
      bytes += c == '[' ? kIndexBytes : kTokenBytes;
      ++i;
    }
  }
  return bytes;
}

std::uint64_t estimate_deploy_cost(const ContractImage& image, const DeployConstants& c) {
  return c.base + c.per_byte * image.code_size;
}

}  // namespace bpmnc
