#pragma once

// Before/after net pairs for each reduction rule, written by hand.

#include <sstream>
#include <string>
#include <vector>

#include "bpmnc/petri.hpp"

namespace testing_support {

using bpmnc::PetriNet;

struct TransSpec {
  std::string id;
  std::string label;  // empty for τ
  std::string in;
  std::string out;
};

// Places named in declaration order; "i" is the source and "o" the sink.
inline PetriNet build(const std::vector<std::string>& places, const std::vector<TransSpec>& trans) {
  std::ostringstream s;
  s << "source i\nsink o\n";
  std::uint32_t k = 0;
  for (const auto& p : places) s << "place " << p << " order=" << k++ << '\n';
  for (const auto& t : trans) {
    s << "trans " << t.id;
    if (!t.label.empty()) s << " label=" << t.label << " external";
    s << " order=" << k++ << " from=" << t.id << " in=" << t.in << " out=" << t.out << '\n';
  }
  PetriNet net = bpmnc::parse_net(s.str());
  net.canonicalize();
  return net;
}

struct RulePair {
  char rule;
  std::vector<std::string> site;
  PetriNet before;
  PetriNet after;  // written by hand, ids aside
};

// Keeps gtest from dumping the raw bytes of a parameter.
inline void PrintTo(const RulePair& r, std::ostream* os) { *os << "rule " << r.rule; }

inline std::vector<RulePair> rule_pairs() {
  std::vector<RulePair> v;
  // (a) labeled task absorbs the τ after it.
  v.push_back({'a', {"A", "p", "t"},
               build({"i", "p", "q", "o"}, {{"A", "A", "i", "p"}, {"t", "", "p", "q"}, {"B", "B", "q", "o"}}),
               build({"i", "q", "o"}, {{"A", "A", "i", "q"}, {"B", "B", "q", "o"}})});
  // (b) two plain τ in a row.
  v.push_back({'b', {"t1", "q", "t2"},
               build({"i", "p", "q", "r", "o"},
                     {{"A", "A", "i", "p"}, {"t1", "", "p", "q"}, {"t2", "", "q", "r"}, {"B", "B", "r", "o"}}),
               build({"i", "p", "r", "o"}, {{"A", "A", "i", "p"}, {"u", "", "p", "r"}, {"B", "B", "r", "o"}})});
  // (c) τ choice branch folded into its input place.
  v.push_back({'c', {"p", "t", "q"},
               build({"i", "p", "q", "o"},
                     {{"A", "A", "i", "p"}, {"X", "X", "p", "o"}, {"t", "", "p", "q"}, {"Y", "Y", "q", "o"}}),
               build({"i", "m", "o"}, {{"A", "A", "i", "m"}, {"X", "X", "m", "o"}, {"Y", "Y", "m", "o"}})});
  // (d) τ merge branch folded into its output place.
  v.push_back({'d', {"p", "t", "q"},
               build({"i", "p", "q", "o"},
                     {{"A", "A", "i", "p"}, {"B", "B", "i", "q"}, {"t", "", "p", "q"}, {"C", "C", "q", "o"}}),
               build({"i", "m", "o"}, {{"A", "A", "i", "m"}, {"B", "B", "i", "m"}, {"C", "C", "m", "o"}})});
  // (e) labeled task absorbs the AND-split τ after it.
  v.push_back({'e', {"A", "p", "t"},
               build({"i", "p", "q1", "q2", "r1", "r2", "s", "o"},
                     {{"A", "A", "i", "p"},
                      {"t", "", "p", "q1,q2"},
                      {"B", "B", "q1", "r1"},
                      {"C", "C", "q2", "r2"},
                      {"j", "", "r1,r2", "s"},
                      {"D", "D", "s", "o"}}),
               build({"i", "q1", "q2", "r1", "r2", "s", "o"},
                     {{"A", "A", "i", "q1,q2"},
                      {"B", "B", "q1", "r1"},
                      {"C", "C", "q2", "r2"},
                      {"j", "", "r1,r2", "s"},
                      {"D", "D", "s", "o"}})});
  // (f) plain τ fused forward into a forking τ.
  v.push_back({'f', {"t1", "q", "t2"},
               build({"i", "p", "q", "r1", "r2", "s1", "s2", "o"},
                     {{"A", "A", "i", "p"},
                      {"t1", "", "p", "q"},
                      {"t2", "", "q", "r1,r2"},
                      {"B", "B", "r1", "s1"},
                      {"C", "C", "r2", "s2"},
                      {"D", "D", "s1,s2", "o"}}),
               build({"i", "p", "r1", "r2", "s1", "s2", "o"},
                     {{"A", "A", "i", "p"},
                      {"u", "", "p", "r1,r2"},
                      {"B", "B", "r1", "s1"},
                      {"C", "C", "r2", "s2"},
                      {"D", "D", "s1,s2", "o"}})});
  // (g) plain τ fused backward into a synchronizing τ.
  v.push_back({'g', {"t1", "p", "t2"},
               build({"i", "a1", "a2", "p", "q", "r", "o"},
                     {{"A", "A", "i", "a1,a2"},
                      {"t1", "", "a1", "p"},
                      {"B", "B", "a2", "q"},
                      {"t2", "", "p,q", "r"},
                      {"C", "C", "r", "o"}}),
               build({"i", "a1", "a2", "q", "r", "o"},
                     {{"A", "A", "i", "a1,a2"},
                      {"B", "B", "a2", "q"},
                      {"u", "", "a1,q", "r"},
                      {"C", "C", "r", "o"}})});
  // (h) labeled task absorbs the AND-join τ before it.
  v.push_back({'h', {"j", "p", "D"},
               build({"i", "a1", "a2", "b", "c", "p", "o"},
                     {{"A", "A", "i", "a1,a2"},
                      {"B", "B", "a1", "b"},
                      {"C", "C", "a2", "c"},
                      {"j", "", "b,c", "p"},
                      {"D", "D", "p", "o"}}),
               build({"i", "a1", "a2", "b", "c", "o"},
                     {{"A", "A", "i", "a1,a2"},
                      {"B", "B", "a1", "b"},
                      {"C", "C", "a2", "c"},
                      {"D", "D", "b,c", "o"}})});
  // (i) AND-split τ with an alternative consumer on its input place.
  v.push_back({'i', {"p", "t"},
               build({"i", "p", "q1", "q2", "r1", "r2", "o"},
                     {{"A", "A", "i", "p"},
                      {"t", "", "p", "q1,q2"},
                      {"X", "X", "p", "o"},
                      {"B", "B", "q1", "r1"},
                      {"C", "C", "q2", "r2"},
                      {"D", "D", "r1,r2", "o"}}),
               build({"i", "n1", "n2", "r1", "r2", "o"},
                     {{"A", "A", "i", "n1,n2"},
                      {"X", "X", "n1,n2", "o"},
                      {"B", "B", "n1", "r1"},
                      {"C", "C", "n2", "r2"},
                      {"D", "D", "r1,r2", "o"}})});
  return v;
}

}  // namespace testing_support
