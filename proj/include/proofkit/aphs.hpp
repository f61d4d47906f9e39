#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "proofkit/term.hpp"

namespace proofkit {

// One inference step: a premise sequence and a conclusion. Instances are the
// first-class citizens; two instances with equal premises and conclusion but
// different ids stay distinct.
struct Instance {
  std::string id;
  std::vector<Term> prem;
  Term concl;

  std::size_t arity() const { return prem.size(); }
  const Term& premise(std::size_t i) const { return prem.at(i - 1); }  // 1-based

  friend bool operator==(const Instance&, const Instance&) = default;
};

bool same_shape(const Instance& a, const Instance& b);  // equal (prem, concl)

std::string instance_shape_string(const std::vector<Term>& prem, const Term& concl);

// A rule is a set of instances with premise/conclusion projections. Three
// backings: a finite list, schemes instantiated over a term universe, or a
// membership predicate enumerated over a universe.
class UnnamedRule {
 public:
  struct ExplicitList {
    std::vector<Instance> instances;
  };
  struct SchemeBacked {
    std::vector<Scheme> prem;
    Scheme concl;
  };
  struct PredicateBacked {
    std::size_t arity = 0;
    std::function<bool(const std::vector<Term>&, const Term&)> member;
  };

  static UnnamedRule explicit_list(std::vector<Instance> instances);
  static UnnamedRule scheme(std::vector<Scheme> prem, Scheme concl);
  static UnnamedRule predicate(std::size_t arity,
                               std::function<bool(const std::vector<Term>&, const Term&)> member);

  bool is_explicit() const;
  const ExplicitList* as_explicit() const;
  const SchemeBacked* as_scheme() const;
  const PredicateBacked* as_predicate() const;

  // Deterministic enumeration. Explicit rules yield all of their instances;
  // scheme and predicate rules instantiate over the given universe, so the
  // result is a fragment of a possibly larger instance set.
  std::vector<Instance> enumerate(const std::vector<Term>& universe) const;

  // Instances whose conclusion is exactly `goal`. Scheme rules bind
  // conclusion variables by matching and let the remaining premise variables
  // range over the universe, so premises may leave the universe.
  std::vector<Instance> concluding(const Term& goal, const std::vector<Term>& universe) const;

  // Resolves an instance id back to its data; universe-independent.
  std::optional<Instance> find_instance(const std::string& id) const;

  // Universe-independent membership: does this exact instance (id included)
  // belong to the rule?
  bool member(const Instance& inst) const;

 private:
  std::variant<ExplicitList, SchemeBacked, PredicateBacked> backing_;
};

// Axiom formulas may mention meta-variables; such an entry names the whole
// family of its ground instances. Several entries may share one name.
struct NamedAxiom {
  Scheme formula;
  std::string name;
};

struct NamedRule {
  UnnamedRule rule;
  std::string name;
};

// Formulas are the terms over `signature`; names are implicit in the axiom
// and rule entries. `universe_hint`, when nonempty, replaces the size-bounded
// term enumeration as the formula universe for bounded procedures.
struct Aphs {
  Signature signature;
  std::vector<NamedAxiom> axioms;
  std::vector<NamedRule> rules;
  std::vector<Term> universe_hint;

  const NamedRule* find_rule(const std::string& name) const;
  std::set<std::string> axiom_names() const;
  std::set<std::string> rule_names() const;
};

struct Diagnostic {
  std::string code;  // e.g. "naming-i", "naming-ii", "formula"
  std::string message;
};

// Empty result iff the system satisfies the naming constraints — (i) no name
// is shared between an axiom and a rule, (ii) distinct rules carry distinct
// names — and every declared formula is well-formed over the signature.
std::vector<Diagnostic> validate_system(const Aphs& s);

// Search/enumeration budget; all fields must be positive.
struct Budget {
  std::size_t max_depth = 10;
  std::size_t max_universe_size = 5;  // node-count bound for universe terms
  std::size_t max_nodes_expanded = 1000000;
};

void validate_budget(const Budget& b);

// The formula universe a budget denotes for this system.
std::vector<Term> universe_for(const Aphs& s, const Budget& b);

// A prooftree: leaves are axiom references or assumptions, inner nodes are
// named rule instances applied to subderivations.
class Derivation {
 public:
  enum class Kind { Axiom, Assumption, Rule };

  static Derivation axiom(std::string axiom_name, Term formula);
  static Derivation assume(Term formula);
  static Derivation rule(std::string rule_name, Instance instance,
                         std::vector<Derivation> children);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // axiom or rule name
  const Term& formula() const;                       // the node's formula
  const Instance& instance() const { return *instance_; }
  const std::vector<Derivation>& children() const { return children_; }

  friend bool operator==(const Derivation& a, const Derivation& b);
  friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Assumption;
  std::string name_;
  std::optional<Term> leaf_formula_;
  std::shared_ptr<const Instance> instance_;
  std::vector<Derivation> children_;
};

TermSet assumptions(const Derivation& d);
const Term& conclusion(const Derivation& d);

using NodePath = std::vector<std::size_t>;  // child indices from the root

std::string path_string(const NodePath& path);

struct Defect {
  NodePath path;
  std::string message;
};

struct CheckResult {
  std::vector<Defect> defects;
  bool valid() const { return defects.empty(); }
};

// Checks every prooftree invariant against the system; defects carry the
// path of the failing node.
CheckResult check_derivation(const Aphs& s, const Derivation& d);

// Number of rule nodes citing the named rule.
std::size_t count_rule_nodes(const Derivation& d, const std::string& rule_name);

// Replaces every assumption leaf whose formula is mapped by a derivation of
// that formula. Pure Hilbert composition: the result is again a derivation.
Derivation graft_assumptions(const Derivation& d,
                             const std::map<Term, Derivation, TermLess>& plugs);

Derivation replace_subtree(const Derivation& d, const NodePath& path,
                           const Derivation& replacement);

// Copy of the system with one more named rule; throws NameClash if the name
// is taken by an axiom or rule.
Aphs extend_with_rule(const Aphs& s, const NamedRule& r);

Aphs extend_with_axiom(const Aphs& s, const NamedAxiom& ax);

// First of base, base_2, base_3, ... that names no axiom or rule of s.
std::string fresh_name(const Aphs& s, const std::string& base);

// Materializes the system over the budget universe as an all-explicit,
// all-ground system: ground axioms and explicit instances are kept as given;
// scheme axioms and scheme/predicate rules contribute exactly their
// instances whose formulas lie in the universe. `lossless` reports whether
// nothing was cut, i.e. the restriction is the entire system.
struct RestrictedSystem {
  Aphs system;
  bool lossless = false;
};
RestrictedSystem restrict_to_universe(const Aphs& s, const std::vector<Term>& universe);

enum class Verdict { Yes, No, Unknown };

const char* to_string(Verdict v);

// --- bounded proof search -------------------------------------------------

struct ProveResult {
  std::optional<Derivation> witness;  // present iff proved
  bool refuted = false;  // certified: no derivation from the assumptions exists
  bool proved() const { return witness.has_value(); }
};

// Deterministic bounded search for a derivation of `goal` whose assumptions
// are contained in `assumptions`: goal-directed backward search first, then
// a forward-closure fallback. `refuted` is set only when the forward closure
// is exhaustive for the whole system and still misses the goal.
ProveResult derives(const Aphs& s, const TermSet& assumptions, const Term& goal,
                    const Budget& b);

struct TheoremSet {
  TermSet formulas;
  bool saturated = false;   // forward closure reached a fixpoint within budget
  bool exhaustive = false;  // saturated and the enumeration covered the system
};

// Forward-chaining closure of the axioms under the budgeted rule instances.
TheoremSet theorem_set(const Aphs& s, const Budget& b);

struct TheoremResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Derivation> witness;
};

// Yes carries a closed valid witness; No only under exhaustive saturation.
TheoremResult is_theorem(const Aphs& s, const Term& formula, const Budget& b);

// Forward closure with witness reconstruction, seeded with assumption
// formulas. Shared by derives/theorem_set and the rule analyses.
class ForwardClosure {
 public:
  ForwardClosure(const Aphs& s, const TermSet& seeds, const Budget& b);

  const TermSet& derived() const { return derived_; }
  bool saturated() const { return saturated_; }
  bool exhaustive() const { return exhaustive_; }
  bool contains(const Term& t) const { return derived_.count(t) > 0; }

  // Derivation of a derived formula; seeds become assumption leaves.
  Derivation witness(const Term& t) const;

 private:
  struct Provenance {
    enum class Kind { Seed, Axiom, Rule } kind = Kind::Seed;
    std::string name;
    std::optional<Instance> instance;
  };
  TermSet derived_;
  std::map<Term, Provenance, TermLess> provenance_;
  bool saturated_ = false;
  bool exhaustive_ = false;
};

}  // namespace proofkit
