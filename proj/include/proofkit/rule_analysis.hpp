#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proofkit/aphs.hpp"

namespace proofkit {

// Combined classification of one rule against one system. `fragment` is set
// when the rule is not explicitly backed, so affirmative verdicts cover the
// enumerated instances only.
struct RuleStatus {
  Verdict derivable = Verdict::Unknown;
  Verdict correct = Verdict::Unknown;
  Verdict admissible = Verdict::Unknown;
  bool fragment = false;
  std::map<std::string, Derivation> witnesses;  // instance id -> mimicking derivation
  std::optional<Instance> counterexample;
};

struct MimicResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Derivation> witness;
};

// A mimicking derivation for an instance: assumptions among the premises,
// conclusion equal to the instance's conclusion. No is certified by an
// exhaustive forward closure over the premises.
MimicResult find_mimicking_derivation(const Aphs& s, const Instance& inst, const Budget& b);

// Derivable: every enumerated instance has a mimicking derivation.
RuleStatus check_derivable(const Aphs& s, const UnnamedRule& rule, const Budget& b);

// Correct: whenever all premises of an instance are theorems, so is the
// conclusion; unprovable premises satisfy the implication vacuously.
RuleStatus check_correct(const Aphs& s, const UnnamedRule& rule, const Budget& b);

// Admissible: the extension by the rule has the same theorems. Decided only
// when both closures are exhaustive, so only certified answers are emitted.
RuleStatus check_admissible(const Aphs& s, const UnnamedRule& rule, const Budget& b);

RuleStatus classify_rule(const Aphs& s, const UnnamedRule& rule, const Budget& b);

// Executable audit of the interrelation laws on one (system, rule) pair:
// (i) admissible iff correct, (ii) derivable implies admissible, (iii)
// derivability witnesses survive sampled extensions, (iv) for a rule that is
// not derivable, some extension refutes its admissibility.
struct PropositionAudit {
  RuleStatus status;
  bool checked_i = false;
  bool i_holds = true;
  bool checked_ii = false;
  bool ii_holds = true;
  std::size_t extensions_sampled = 0;
  bool derivable_stable = true;
  bool sought_refutation = false;
  bool refutation_found = false;
  std::string refutation_note;
  std::optional<Aphs> refuting_extension;
  std::vector<std::string> violations;
};

PropositionAudit proposition_audit(const Aphs& s, const UnnamedRule& rule, const Budget& b,
                                   std::size_t extension_samples, std::uint64_t seed);

// Instance-id -> derivation table used to rewrite a rule out of derivations.
// Entries must be valid in the base system, free of the eliminated rule,
// assume at most the instance's premises, and conclude its conclusion.
class MimicryTable {
 public:
  static MimicryTable validated(const Aphs& base, const NamedRule& r,
                                std::map<std::string, Derivation> entries);
  // Auto-fill from the derivability check; throws Error unless derivable.
  static MimicryTable from_derivable(const Aphs& base, const NamedRule& r, const Budget& b);

  const Derivation* find(const std::string& instance_id) const;
  const std::map<std::string, Derivation>& entries() const { return entries_; }

 private:
  std::map<std::string, Derivation> entries_;
};

enum class EliminationStrategy { LeftmostInnermost, LeftmostOutermost, RandomSeeded };

std::optional<EliminationStrategy> parse_strategy(const std::string& name);
const char* to_string(EliminationStrategy strategy);

struct EliminationStep {
  NodePath path;
  std::string instance_id;
  std::size_t rule_nodes_before = 0;
  std::size_t rule_nodes_after = 0;
};

struct EliminationTrace {
  Derivation initial;
  std::vector<EliminationStep> steps;
  Derivation final;
  std::size_t step_count() const { return steps.size(); }
};

// Repeatedly replaces occurrences of the named rule by mimicking derivations
// until none remain. Terminates for every strategy; with rule-free table
// entries each step consumes exactly one occurrence.
EliminationTrace eliminate_rule(const Aphs& s, const NamedRule& r, const Derivation& d,
                                const MimicryTable& m, EliminationStrategy strategy,
                                std::uint64_t seed = 0);

// For a closed derivation in the extension by an admissible rule, finds a
// closed derivation of the same conclusion in the base system by re-proving.
Derivation translate_closed_derivation(const Aphs& s, const NamedRule& r, const Derivation& d,
                                       const Budget& b);

struct ComparisonVerdict {
  Verdict value = Verdict::Unknown;
  bool certified = false;  // exact, not merely relative to the budget universe
};

struct SystemComparison {
  ComparisonVerdict same_theorems;
  ComparisonVerdict same_consequence;
  ComparisonVerdict mutual_admissibility;
  ComparisonVerdict mutual_derivability;
  bool theorems_equiv_ok = true;     // same theorems <=> mutual admissibility
  bool consequence_equiv_ok = true;  // same consequence <=> mutual derivability
  std::vector<std::string> notes;
};

// Requires equal signatures; throws SignatureMismatch otherwise. Axioms take
// part as zero-premise rules, so the two equivalences are exact on the
// budget-restricted systems.
SystemComparison compare_systems(const Aphs& s1, const Aphs& s2, const Budget& b);

struct VecTermLess {
  bool operator()(const std::vector<Term>& a, const std::vector<Term>& b) const;
};

struct ShapeLess {
  bool operator()(const std::pair<std::vector<Term>, Term>& a,
                  const std::pair<std::vector<Term>, Term>& b) const;
};

// Partial-function rule description: premise sequence -> conclusion. The map
// shape itself rules out two conclusions for one premise sequence.
using RuleDescription = std::map<std::vector<Term>, Term, VecTermLess>;

// Relational description: a set of (premise sequence, conclusion) pairs. Two
// instances with the same shape collapse by construction.
using RuleRelation = std::set<std::pair<std::vector<Term>, Term>, ShapeLess>;

UnnamedRule rule_from_partial_function(const RuleDescription& desc);
UnnamedRule rule_from_relation(const RuleRelation& rel);

// Pairs of distinct instance ids sharing premises and conclusion.
std::vector<std::pair<std::string, std::string>> intensional_duplicates(
    const UnnamedRule& rule, const std::vector<Term>& universe);

}  // namespace proofkit
