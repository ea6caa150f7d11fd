#include "bpmnc/condition.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "bpmnc/error.hpp"

namespace bpmnc {

struct Condition::Node {
  Kind kind;
  std::string name;
  std::vector<Condition> children;
};

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Condition parse() {
    Condition c = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return c;
  }

 private:
  Condition expr() {
    std::vector<Condition> parts{term()};
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '&') {
        ++pos_;
        parts.push_back(term());
      } else {
        break;
      }
    }
    return Condition::conjoin(parts);
  }

  Condition term() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '!') {
      ++pos_;
      return Condition::negate(term());
    }
    if (c == '(') {
      ++pos_;
      Condition inner = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("unexpected character '") + c + "'");
    std::string id(s_.substr(start, pos_ - start));
    if (id == "true" || id == "TRUE") return Condition::truth();
    if (id == "false" || id == "FALSE") return Condition::falsity();
    return Condition::atom(std::move(id));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::MalformedDocument,
                "condition '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect_atoms(const Condition& c, std::vector<std::string>& out) {
  if (c.kind() == Condition::Kind::Atom) {
    if (std::find(out.begin(), out.end(), c.name()) == out.end()) out.push_back(c.name());
    return;
  }
  for (const auto& ch : c.children()) collect_atoms(ch, out);
}

std::string render(const Condition& c, bool pretty, bool nested) {
  switch (c.kind()) {
    case Condition::Kind::True: return pretty ? "true" : "true";
    case Condition::Kind::False: return "false";
    case Condition::Kind::Atom: return c.name();
    case Condition::Kind::Not: {
      const auto& inner = c.children().front();
      bool paren = inner.kind() == Condition::Kind::And;
      std::string s = render(inner, pretty, false);
      return std::string(pretty ? "¬" : "!") + (paren ? "(" + s + ")" : s);
    }
    case Condition::Kind::And: {
      std::string s;
      for (std::size_t i = 0; i < c.children().size(); ++i) {
        if (i) s += pretty ? "∧" : "&";
        s += render(c.children()[i], pretty, true);
      }
      return nested ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace

const std::shared_ptr<const Condition::Node>& Condition::true_node() {
  static const auto n = std::make_shared<const Node>(Node{Kind::True, {}, {}});
  return n;
}
const std::shared_ptr<const Condition::Node>& Condition::false_node() {
  static const auto n = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return n;
}

Condition::Condition() : node_(true_node()) {}

Condition Condition::truth() { return Condition(true_node()); }
Condition Condition::falsity() { return Condition(false_node()); }

Condition Condition::atom(std::string name) {
  return Condition(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Condition Condition::negate(const Condition& c) {
  switch (c.kind()) {
    case Kind::True: return falsity();
    case Kind::False: return truth();
    case Kind::Not: return c.children().front();
    default: return Condition(std::make_shared<const Node>(Node{Kind::Not, {}, {c}}));
  }
}

Condition Condition::conjoin(const Condition& a, const Condition& b) { return conjoin(std::vector{a, b}); }

Condition Condition::conjoin(const std::vector<Condition>& parts) {
  std::vector<Condition> flat;
  for (const auto& p : parts) {
    if (p.is_false()) return falsity();
    if (p.is_true()) continue;
    if (p.kind() == Kind::And) {
      for (const auto& ch : p.children())
        if (std::find(flat.begin(), flat.end(), ch) == flat.end()) flat.push_back(ch);
    } else if (std::find(flat.begin(), flat.end(), p) == flat.end()) {
      flat.push_back(p);
    }
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  return Condition(std::make_shared<const Node>(Node{Kind::And, {}, std::move(flat)}));
}

Condition Condition::parse(std::string_view text) { return Parser(text).parse(); }

Condition::Kind Condition::kind() const { return node_->kind; }
const std::string& Condition::name() const { return node_->name; }
const std::vector<Condition>& Condition::children() const { return node_->children; }

std::set<std::string> Condition::atoms() const {
  auto v = atoms_in_order();
  return {v.begin(), v.end()};
}

std::vector<std::string> Condition::atoms_in_order() const {
  std::vector<std::string> out;
  collect_atoms(*this, out);
  return out;
}

bool Condition::eval(const Assignment& a) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      auto it = a.find(name());
      return it != a.end() && it->second;
    }
    case Kind::Not: return !children().front().eval(a);
    case Kind::And:
      return std::all_of(children().begin(), children().end(), [&](const Condition& c) { return c.eval(a); });
  }
  return false;
}

bool Condition::eval_bits(const Bits& preds, const std::map<std::string, std::size_t>& atom_bits) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      auto it = atom_bits.find(name());
      return it != atom_bits.end() && preds.test(it->second);
    }
    case Kind::Not: return !children().front().eval_bits(preds, atom_bits);
    case Kind::And:
      return std::all_of(children().begin(), children().end(),
                         [&](const Condition& c) { return c.eval_bits(preds, atom_bits); });
  }
  return false;
}

std::vector<Cube> Condition::to_cubes(const std::map<std::string, std::size_t>& atom_bits,
                                      std::size_t width) const {
  auto names = atoms_in_order();
  const std::size_t k = names.size();
  if (k > 20) throw Error(ErrorKind::PredicateWidthExceeded, "guard over more than 20 atoms: " + str());
  // Minterms as (care, value) over local atom indices; merge pairs that
  // differ in exactly one cared-for position until nothing merges.
  struct Term {
    std::uint32_t care, value;
    bool operator<(const Term& o) const { return std::tie(care, value) < std::tie(o.care, o.value); }
    bool operator==(const Term& o) const { return care == o.care && value == o.value; }
  };
  std::vector<Term> terms;
  const std::uint32_t full = k == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << k); ++v) {
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) a[names[i]] = (v >> i) & 1U;
    if (eval(a)) terms.push_back({full, v});
  }
  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<Term> next;
    std::vector<bool> used(terms.size(), false);
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        if (terms[i].care != terms[j].care) continue;
        std::uint32_t diff = terms[i].value ^ terms[j].value;
        if (__builtin_popcount(diff) != 1) continue;
        next.push_back({terms[i].care & ~diff, terms[i].value & ~diff});
        used[i] = used[j] = true;
        merged = true;
      }
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (!used[i]) next.push_back(terms[i]);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    terms = std::move(next);
  }
  // Drop cubes subsumed by another cube.
  std::vector<Term> kept;
  for (const auto& t : terms) {
    bool subsumed = std::any_of(terms.begin(), terms.end(), [&](const Term& o) {
      return !(o == t) && (o.care & t.care) == o.care && (t.value & o.care) == o.value;
    });
    if (!subsumed) kept.push_back(t);
  }
  std::vector<Cube> out;
  for (const auto& t : kept) {
    Cube c{Bits(width), Bits(width)};
    for (std::size_t i = 0; i < k; ++i) {
      if (!((t.care >> i) & 1U)) continue;
      auto it = atom_bits.find(names[i]);
      if (it == atom_bits.end()) throw Error(ErrorKind::UnresolvedProvenance, "atom without bit: " + names[i]);
      c.mask.set(it->second);
      if ((t.value >> i) & 1U) c.expected.set(it->second);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Condition::str() const { return render(*this, false, false); }
std::string Condition::pretty() const { return render(*this, true, false); }

bool equivalent(const Condition& a, const Condition& b) {
  auto names = a.atoms_in_order();
  for (const auto& n : b.atoms_in_order())
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << names.size()); ++v) {
    Assignment asg;
    for (std::size_t i = 0; i < names.size(); ++i) asg[names[i]] = (v >> i) & 1U;
    if (a.eval(asg) != b.eval(asg)) return false;
  }
  return true;
}

bool is_tautology(const Condition& c) { return equivalent(c, Condition::truth()); }

}  // namespace bpmnc
