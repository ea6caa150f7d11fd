#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bpmnc/bits.hpp"

namespace bpmnc {

// Total valuation of condition atoms; atoms absent from the map read as false.
using Assignment = std::map<std::string, bool>;

// One conjunctive cube over predicate bits: satisfied by `bits` iff
// (bits & mask) == expected.
struct Cube {
  Bits mask;
  Bits expected;
  friend bool operator==(const Cube&, const Cube&) = default;
};

// Immutable boolean expression over named atoms, built from TRUE, FALSE,
// atoms, negation and conjunction. Copies share structure.
class Condition {
 public:
  enum class Kind { True, False, Atom, Not, And };

  Condition();  // TRUE

  static Condition truth();
  static Condition falsity();
  static Condition atom(std::string name);
  // Simplifying constructors: double negation, constant folding, flattening.
  static Condition negate(const Condition& c);
  static Condition conjoin(const Condition& a, const Condition& b);
  static Condition conjoin(const std::vector<Condition>& parts);

  // Grammar: expr := term ('&' term)* ; term := '!' term | '(' expr ')' |
  // 'true' | 'false' | identifier. Throws Error(MalformedDocument).
  static Condition parse(std::string_view text);

  Kind kind() const;
  const std::string& name() const;  // Atom only
  const std::vector<Condition>& children() const;

  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  std::set<std::string> atoms() const;
  // Atoms in left-to-right first-occurrence order.
  std::vector<std::string> atoms_in_order() const;
  bool eval(const Assignment& a) const;
  // Evaluation against a predicate word, with atom_bits giving each atom's bit.
  bool eval_bits(const Bits& preds, const std::map<std::string, std::size_t>& atom_bits) const;

  // Disjunction of cubes equivalent to this condition (truth-table derived,
  // adjacent minterms merged). TRUE gives one empty cube, FALSE none.
  std::vector<Cube> to_cubes(const std::map<std::string, std::size_t>& atom_bits,
                             std::size_t width) const;

  // Canonical ASCII rendering accepted by parse().
  std::string str() const;
  // Display rendering with logical symbols, e.g. "P∧¬Q".
  std::string pretty() const;

  friend bool operator==(const Condition& a, const Condition& b) { return a.str() == b.str(); }

 private:
  struct Node;
  static const std::shared_ptr<const Node>& true_node();
  static const std::shared_ptr<const Node>& false_node();
  explicit Condition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Semantic equivalence by exhaustive truth table over the union of atoms.
bool equivalent(const Condition& a, const Condition& b);
// True when `c` holds under every valuation of its atoms.
bool is_tautology(const Condition& c);

}  // namespace bpmnc
