#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpmnc/petri.hpp"

namespace bpmnc {

// Rule ids 'a'..'i'. Sites name the matched elements:
//   a, b, e, f, g, h : {t1, p, t2}   transition series t1 -> p -> t2
//   c, d             : {p1, tau, p2} place series p1 -> tau -> p2
//   i                : {p, tau}      tau splitting the token of a shared place
struct ReductionStep {
  char rule;
  std::vector<std::string> site;
  std::string hash;  // net_hash after the rewrite
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

using ReductionTrace = std::vector<ReductionStep>;

struct ReduceOptions {
  // Run the safeness oracle on the input first (NonSafeInput on failure).
  bool verify_input = true;
  std::size_t budget = 1'000'000;
  // When set, candidate sites are visited in a seeded random order instead of
  // key order. Used to probe confluence.
  std::optional<std::uint64_t> shuffle_seed;
};

struct Reduction {
  PetriNet net;
  ReductionTrace trace;
};

Reduction reduce(const PetriNet& net, const ReduceOptions& options = {});

// Reason the rule does not match at `site`, or nullopt when it does.
std::optional<std::string> match_rule(const PetriNet& net, char rule, const std::vector<std::string>& site);

// Local rewrite; throws Error(PatternMismatch) when match_rule fails.
PetriNet apply_rule(const PetriNet& net, char rule, const std::vector<std::string>& site);

// All sites where `rule` applies, in key order.
std::vector<std::vector<std::string>> find_sites(const PetriNet& net, char rule);

// Re-applies every step to `original`, checking each snapshot hash. Throws
// Error(PatternMismatch) on divergence.
PetriNet replay_trace(const PetriNet& original, const ReductionTrace& trace);

std::string render_trace(const ReductionTrace& trace);

}  // namespace bpmnc
