#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bpmnc/petri.hpp"

namespace bpmnc {

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

struct SoundnessReport {
  bool sound = false;
  bool safe = false;
  // Shortest firing sequence (transition ids) reaching a violating marking:
  // a doubly-marked place when unsafe, otherwise a marking from which the
  // final marking is unreachable. Empty when both properties hold.
  std::vector<std::string> witness;
  std::size_t states = 0;
};

// Exhaustive exploration from the initial marking with guards ignored.
// Throws Error(StateSpaceBudgetExceeded) past `budget` markings.
SoundnessReport check_soundness_and_safeness(const PetriNet& net, std::size_t budget = kDefaultStateBudget);

using LabelSequence = std::vector<std::string>;
using TraceLanguage = std::set<LabelSequence>;

// Prefix-closed set of visible label sequences of length <= max_depth, with
// τ transitions silent. Guards ignored.
TraceLanguage weak_trace_language(const PetriNet& net, std::size_t max_depth,
                                  std::size_t budget = kDefaultStateBudget);

// Sequences of `lang` no longer than `depth`.
TraceLanguage truncate(const TraceLanguage& lang, std::size_t depth);

}  // namespace bpmnc
