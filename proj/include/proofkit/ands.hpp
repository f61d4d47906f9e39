#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofkit/aphs.hpp"
#include "proofkit/rule_analysis.hpp"

namespace proofkit {

// A formula decorated with the marker that identifies its assumption class.
struct MarkedAssumption {
  Term formula;
  std::string marker;

  friend bool operator==(const MarkedAssumption&, const MarkedAssumption&) = default;
};

struct MarkedLess {
  bool operator()(const MarkedAssumption& a, const MarkedAssumption& b) const {
    if (a.marker != b.marker) return a.marker < b.marker;
    return term_less(a.formula, b.formula);
  }
};

using MarkedSet = std::set<MarkedAssumption, MarkedLess>;

// A natural-deduction inference step: premises and conclusion plus, per
// premise, the marked assumptions that must be present, and the marked
// assumptions discharged at the step. Only present assumptions discharge.
struct AndsInstance {
  std::string id;
  std::vector<Term> prem;
  Term concl;
  std::vector<MarkedSet> pmassm;  // one set per premise
  MarkedSet dmassm;

  std::size_t arity() const { return prem.size(); }

  friend bool operator==(const AndsInstance&, const AndsInstance&) = default;
};

// One premise slot of a rule scheme: its formula, the marked-assumption
// patterns that must be present (markers are variables over the marker
// pool), and optionally a context variable standing for an arbitrary set of
// further marked assumptions. Equal context names share one assignment.
struct AndsPremiseSpec {
  Scheme formula;
  std::vector<std::pair<Scheme, std::string>> present;
  std::optional<std::string> context;
};

// An instance family: term meta-variables range over the term universe,
// marker variables over the pool, context variables over bounded antecedent
// sets. Discharged entries must repeat `present` entries verbatim.
struct AndsSchemeGroup {
  std::vector<AndsPremiseSpec> premises;
  Scheme concl;
  std::vector<std::pair<Scheme, std::string>> discharged;
};

// A named rule given by explicit instances (literal markers), instance
// families, or both.
struct AndsRule {
  std::string name;
  std::vector<AndsInstance> instances;
  std::vector<AndsSchemeGroup> groups;
};

struct Ands {
  Signature signature;
  std::vector<NamedAxiom> axioms;
  std::vector<AndsRule> rules;

  const AndsRule* find_rule(const std::string& name) const;
};

std::vector<Diagnostic> validate_ands(const Ands& n);

struct Sequent {
  MarkedSet antecedent;
  Term succedent;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Sequents live inside the encoded system as ordinary terms over a reserved
// vocabulary: seq(<antecedent list>, <formula>) with the antecedent as a
// canonically ordered scons/snil list of mk(<marker>, <formula>) pairs.
Term sequent_to_term(const Sequent& s);
std::optional<Sequent> term_to_sequent(const Term& t);
std::string sequent_string(const Sequent& s);

// Bounds for encoding: which terms may appear as succedents, which as
// antecedent formulas, how many pool markers, and how many marked
// assumptions one antecedent may hold.
struct EncodeOptions {
  std::vector<Term> term_universe;
  std::vector<Term> antecedent_terms;  // defaults to term_universe when empty
  std::size_t marker_count = 1;
  std::size_t max_antecedent = 1;
};

std::vector<std::string> marker_pool(const EncodeOptions& opt);

// Sequent-style image of one instance: premise i becomes
// pmassm_i => prem_i, the conclusion becomes (union of pmassm) \ dmassm =>
// concl. Instance ids survive unchanged.
Instance encode_instance(const AndsInstance& inst);

// All instances of a rule under the bounds, explicit ones first, generated
// ones deduplicated by content.
std::vector<AndsInstance> enumerate_ands_rule(const AndsRule& r, const EncodeOptions& opt);

struct EncodedSystem {
  Aphs system;                       // explicit rules, ground axioms
  std::vector<Term> sequent_universe;  // also installed as the universe hint
  std::string assumption_axiom_name;
};

// The whole system as a pure Hilbert system over sequents: every axiom A
// becomes the sequent axiom {} => A, every rule is encoded instance-wise,
// and an axiom family {(A,m)} => A introduces assumptions. The pool markers
// must not occur literally in user rules.
EncodedSystem encode_system(const Ands& n, const EncodeOptions& opt);

// Derivability/admissibility of a natural-deduction rule, decided on the
// encoded instances inside the encoded system.
RuleStatus check_nd_derivable(const Ands& n, const AndsRule& r, const EncodeOptions& opt,
                              const Budget& b);
RuleStatus check_nd_admissible(const Ands& n, const AndsRule& r, const EncodeOptions& opt,
                               const Budget& b);

}  // namespace proofkit
