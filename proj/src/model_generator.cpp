#include "bpmnc/model_generator.hpp"

#include <random>
#include <string>
#include <utility>

namespace bpmnc {

namespace {

using Fragment = std::pair<std::string, std::string>;  // entry node, exit node

class Builder {
 public:
  Builder(std::uint64_t seed, const GeneratorOptions& o) : rng_(seed), opt_(o) {
    model_.name = "random_" + std::to_string(seed);
  }

  ProcessModel build() {
    add_node("start", NodeKind::StartEvent);
    auto [in, out] = block(0, std::max<std::size_t>(opt_.max_tasks, 1));
    add_node("end", NodeKind::EndEvent);
    flow("start", in);
    flow(out, "end");
    return std::move(model_);
  }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string add_node(std::string id, NodeKind kind, std::optional<std::string> script = std::nullopt) {
    model_.nodes.push_back({id, id, kind, std::move(script)});
    return id;
  }

  void flow(const std::string& s, const std::string& t, std::optional<Condition> cond = std::nullopt,
            bool is_default = false) {
    model_.flows.push_back({s, t, std::move(cond), is_default});
  }

  std::string task(bool force_user = false) {
    ++tasks_;
    std::string id = "T" + std::to_string(tasks_);
    if (!force_user && opt_.script_tasks && chance(0.15)) return add_node(id, NodeKind::ScriptTask, "run" + id);
    return add_node(id, NodeKind::UserTask);
  }

  std::string fresh_atom() {
    std::string a = "A" + std::to_string(model_.atoms.size() + 1);
    model_.atoms.push_back(a);
    return a;
  }

  // Uses at most `budget` (>= 1) activities.
  Fragment block(std::size_t depth, std::size_t budget) {
    if (budget <= 1 || depth >= opt_.max_depth) {
      auto t = task();
      return {t, t};
    }
    for (;;) {
      switch (pick(0, 9)) {
        case 0: case 1: case 2: {
          auto t = task();
          return {t, t};
        }
        case 3: case 4: case 5: return sequence(depth, budget);
        case 6: case 7:
          if (budget >= 3) return xor_block(depth, budget);
          break;
        case 8:
          return and_block(depth, budget);
        case 9:
          if (opt_.event_splits) return event_block(depth, budget);
          break;
      }
    }
  }

  Fragment sequence(std::size_t depth, std::size_t budget) {
    std::size_t parts = std::min<std::size_t>(pick(2, 3), budget);
    std::size_t left = budget;
    Fragment whole;
    for (std::size_t i = 0; i < parts; ++i) {
      std::size_t give = std::max<std::size_t>(1, left / (parts - i));
      std::size_t before = tasks_;
      auto f = block(depth, give);
      left -= std::min(left, tasks_ - before);
      if (i == 0) whole.first = f.first;
      else flow(whole.second, f.first);
      whole.second = f.second;
    }
    return whole;
  }

  Fragment xor_block(std::size_t depth, std::size_t budget) {
    std::size_t g = ++gateways_;
    auto decide = task(true);
    auto split = add_node("x" + std::to_string(g), NodeKind::XorSplit);
    auto join = add_node("x" + std::to_string(g) + "j", NodeKind::XorJoin);
    flow(decide, split);
    std::size_t branches = budget >= 4 && chance(0.33) ? 3 : 2;
    std::vector<Condition> conds;
    auto a = Condition::atom(fresh_atom());
    conds.push_back(a);
    if (branches == 3) conds.push_back(Condition::conjoin(Condition::negate(a), Condition::atom(fresh_atom())));
    std::size_t left = budget - 1;
    for (std::size_t i = 0; i < branches; ++i) {
      bool last = i + 1 == branches;
      std::optional<Condition> cond = last ? std::nullopt : std::optional<Condition>(conds[i]);
      if (last && chance(0.3)) {
        flow(split, join, cond, true);
        continue;
      }
      std::size_t give = std::max<std::size_t>(1, left / (branches - i));
      std::size_t before = tasks_;
      auto f = block(depth + 1, give);
      left -= std::min(left, tasks_ - before);
      flow(split, f.first, cond, last);
      flow(f.second, join);
    }
    return {decide, join};
  }

  Fragment and_block(std::size_t depth, std::size_t budget) {
    std::size_t g = ++gateways_;
    auto split = add_node("p" + std::to_string(g), NodeKind::AndSplit);
    auto join = add_node("p" + std::to_string(g) + "j", NodeKind::AndJoin);
    std::size_t branches = budget >= 3 && chance(0.3) ? 3 : 2;
    std::size_t left = budget;
    for (std::size_t i = 0; i < branches; ++i) {
      std::size_t give = std::max<std::size_t>(1, left / (branches - i));
      std::size_t before = tasks_;
      auto f = block(depth + 1, give);
      left -= std::min(left, tasks_ - before);
      flow(split, f.first);
      flow(f.second, join);
    }
    return {split, join};
  }

  Fragment event_block(std::size_t depth, std::size_t budget) {
    std::size_t g = ++gateways_;
    auto split = add_node("e" + std::to_string(g), NodeKind::EventBasedSplit);
    auto join = add_node("e" + std::to_string(g) + "j", NodeKind::XorJoin);
    std::size_t branches = budget >= 3 && chance(0.3) ? 3 : 2;
    std::size_t left = budget;
    for (std::size_t i = 0; i < branches; ++i) {
      ++tasks_;
      auto msg = add_node("M" + std::to_string(tasks_), NodeKind::MessageEvent);
      --left;
      flow(split, msg);
      // Keep one activity for each remaining message event.
      std::size_t spare = left - std::min(left, branches - i - 1);
      if (spare >= 1 && chance(0.5)) {
        std::size_t give = std::max<std::size_t>(1, spare / (branches - i));
        std::size_t before = tasks_;
        auto f = block(depth + 1, give);
        left -= std::min(left, tasks_ - before);
        flow(msg, f.first);
        flow(f.second, join);
      } else {
        flow(msg, join);
      }
    }
    return {split, join};
  }

  std::mt19937_64 rng_;
  GeneratorOptions opt_;
  ProcessModel model_;
  std::size_t tasks_ = 0;
  std::size_t gateways_ = 0;
};

}  // namespace

ProcessModel generate_model(std::uint64_t seed, const GeneratorOptions& options) {
  return normalize_conditions(Builder(seed, options).build());
}

}  // namespace bpmnc
