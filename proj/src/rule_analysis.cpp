#include "proofkit/rule_analysis.hpp"

#include <algorithm>

#include "proofkit/sampler.hpp"

namespace proofkit {

MimicResult find_mimicking_derivation(const Aphs& s, const Instance& inst, const Budget& b) {
  TermSet premises(inst.prem.begin(), inst.prem.end());
  ProveResult r = derives(s, premises, inst.concl, b);
  if (r.proved()) return {Verdict::Yes, std::move(r.witness)};
  if (r.refuted) return {Verdict::No, std::nullopt};
  return {Verdict::Unknown, std::nullopt};
}

RuleStatus check_derivable(const Aphs& s, const UnnamedRule& rule, const Budget& b) {
  RuleStatus status;
  status.fragment = !rule.is_explicit();
  bool all_yes = true;
  for (const Instance& inst : rule.enumerate(universe_for(s, b))) {
    MimicResult m = find_mimicking_derivation(s, inst, b);
    if (m.verdict == Verdict::Yes) {
      status.witnesses.emplace(inst.id, std::move(*m.witness));
      continue;
    }
    all_yes = false;
    if (m.verdict == Verdict::No) {
      status.derivable = Verdict::No;
      status.counterexample = inst;
      return status;
    }
  }
  status.derivable = all_yes ? Verdict::Yes : Verdict::Unknown;
  return status;
}

RuleStatus check_correct(const Aphs& s, const UnnamedRule& rule, const Budget& b) {
  RuleStatus status;
  status.fragment = !rule.is_explicit();
  TheoremSet theorems = theorem_set(s, b);
  bool undecided = false;
  for (const Instance& inst : rule.enumerate(universe_for(s, b))) {
    bool premises_all_theorems = true;
    bool premise_refuted = false;
    bool premise_unknown = false;
    for (const Term& p : inst.prem) {
      if (theorems.formulas.count(p)) continue;
      premises_all_theorems = false;
      if (theorems.exhaustive)
        premise_refuted = true;
      else
        premise_unknown = true;
    }
    if (premise_refuted) continue;  // vacuously satisfied
    if (premise_unknown) {
      undecided = true;
      continue;
    }
    if (premises_all_theorems) {
      if (theorems.formulas.count(inst.concl)) continue;
      if (theorems.exhaustive) {
        status.correct = Verdict::No;
        status.counterexample = inst;
        return status;
      }
      undecided = true;
    }
  }
  status.correct = undecided ? Verdict::Unknown : Verdict::Yes;
  return status;
}

RuleStatus check_admissible(const Aphs& s, const UnnamedRule& rule, const Budget& b) {
  RuleStatus status;
  status.fragment = !rule.is_explicit();
  TheoremSet base = theorem_set(s, b);
  Aphs extended = extend_with_rule(s, NamedRule{rule, fresh_name(s, "r")});
  TheoremSet ext = theorem_set(extended, b);
  if (!base.exhaustive || !ext.exhaustive) {
    status.admissible = Verdict::Unknown;
    return status;
  }
  if (base.formulas == ext.formulas) {
    status.admissible = Verdict::Yes;
    return status;
  }
  status.admissible = Verdict::No;
  // The first rule instance that introduces a formula outside the base
  // theorem set; one exists whenever the sets differ.
  for (const Instance& inst : rule.enumerate(universe_for(s, b))) {
    bool ready = true;
    for (const Term& p : inst.prem) ready = ready && base.formulas.count(p) > 0;
    if (ready && !base.formulas.count(inst.concl)) {
      status.counterexample = inst;
      break;
    }
  }
  return status;
}

RuleStatus classify_rule(const Aphs& s, const UnnamedRule& rule, const Budget& b) {
  RuleStatus derivable = check_derivable(s, rule, b);
  RuleStatus correct = check_correct(s, rule, b);
  RuleStatus admissible = check_admissible(s, rule, b);
  RuleStatus out;
  out.derivable = derivable.derivable;
  out.correct = correct.correct;
  out.admissible = admissible.admissible;
  out.fragment = derivable.fragment;
  out.witnesses = std::move(derivable.witnesses);
  if (derivable.counterexample)
    out.counterexample = derivable.counterexample;
  else if (correct.counterexample)
    out.counterexample = correct.counterexample;
  else
    out.counterexample = admissible.counterexample;
  return out;
}

PropositionAudit proposition_audit(const Aphs& s, const UnnamedRule& rule, const Budget& b,
                                   std::size_t extension_samples, std::uint64_t seed) {
  PropositionAudit audit;
  audit.status = classify_rule(s, rule, b);
  const RuleStatus& st = audit.status;

  if (st.admissible != Verdict::Unknown && st.correct != Verdict::Unknown) {
    audit.checked_i = true;
    audit.i_holds = st.admissible == st.correct;
    if (!audit.i_holds)
      audit.violations.push_back("admissible and correct verdicts disagree: admissible=" +
                                 std::string(to_string(st.admissible)) +
                                 " correct=" + to_string(st.correct));
  }
  if (st.derivable == Verdict::Yes && st.admissible != Verdict::Unknown) {
    audit.checked_ii = true;
    audit.ii_holds = st.admissible == Verdict::Yes;
    if (!audit.ii_holds)
      audit.violations.push_back("derivable rule judged not admissible");
  }

  Rng rng(seed);
  if (st.derivable == Verdict::Yes) {
    for (std::size_t i = 0; i < extension_samples; ++i) {
      Aphs ext = sample_extension(rng, s, b.max_universe_size);
      audit.extensions_sampled++;
      for (const auto& [id, witness] : st.witnesses) {
        if (!check_derivation(ext, witness).valid()) {
          audit.derivable_stable = false;
          audit.violations.push_back("mimicking derivation for instance '" + id +
                                     "' stopped checking in a sampled extension");
        }
      }
    }
  }

  if (st.derivable == Verdict::No) {
    audit.sought_refutation = true;
    if (st.admissible == Verdict::No) {
      audit.refutation_found = true;
      audit.refutation_note = "not admissible in the system itself";
      audit.refuting_extension = s;
    } else if (st.counterexample) {
      // Make the counterexample's premises axioms; its conclusion stays out
      // of reach, so the rule stops being admissible there.
      Aphs ext = s;
      for (const Term& p : st.counterexample->prem)
        ext = extend_with_axiom(ext, NamedAxiom{Scheme(p), fresh_name(ext, "wit_ax")});
      RuleStatus there = check_admissible(ext, rule, b);
      if (there.admissible == Verdict::No) {
        audit.refutation_found = true;
        audit.refutation_note = "extension adding the premises of instance '" +
                                st.counterexample->id + "' as axioms";
        audit.refuting_extension = std::move(ext);
      }
    }
    if (!audit.refutation_found) {
      for (std::size_t i = 0; i < extension_samples && !audit.refutation_found; ++i) {
        Aphs ext = sample_extension(rng, s, b.max_universe_size);
        RuleStatus there = check_admissible(ext, rule, b);
        if (there.admissible == Verdict::No) {
          audit.refutation_found = true;
          audit.refutation_note = "randomly sampled extension";
          audit.refuting_extension = std::move(ext);
        }
      }
    }
  }
  return audit;
}

MimicryTable MimicryTable::validated(const Aphs& base, const NamedRule& r,
                                     std::map<std::string, Derivation> entries) {
  for (const auto& [id, derivation] : entries) {
    auto inst = r.rule.find_instance(id);
    if (!inst)
      throw ValidationError("mimicry table: '" + id + "' is not an instance of rule '" +
                            r.name + "'");
    if (count_rule_nodes(derivation, r.name) != 0)
      throw ValidationError("mimicry table: entry for '" + id + "' uses rule '" + r.name +
                            "' itself");
    if (!check_derivation(base, derivation).valid())
      throw ValidationError("mimicry table: entry for '" + id +
                            "' is not a valid derivation in the base system");
    if (conclusion(derivation) != inst->concl)
      throw ValidationError("mimicry table: entry for '" + id + "' concludes " +
                            to_string(conclusion(derivation)) + " instead of " +
                            to_string(inst->concl));
    TermSet allowed(inst->prem.begin(), inst->prem.end());
    for (const Term& a : assumptions(derivation))
      if (!allowed.count(a))
        throw ValidationError("mimicry table: entry for '" + id + "' assumes " + to_string(a) +
                              ", which is not among the instance's premises");
  }
  MimicryTable table;
  table.entries_ = std::move(entries);
  return table;
}

MimicryTable MimicryTable::from_derivable(const Aphs& base, const NamedRule& r,
                                          const Budget& b) {
  RuleStatus status = check_derivable(base, r.rule, b);
  if (status.derivable != Verdict::Yes)
    throw Error("rule '" + r.name + "' is not derivable within the budget; cannot build a "
                "mimicry table from witnesses");
  return validated(base, r, std::move(status.witnesses));
}

const Derivation* MimicryTable::find(const std::string& instance_id) const {
  auto it = entries_.find(instance_id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<EliminationStrategy> parse_strategy(const std::string& name) {
  if (name == "leftmost-innermost") return EliminationStrategy::LeftmostInnermost;
  if (name == "leftmost-outermost") return EliminationStrategy::LeftmostOutermost;
  if (name == "random") return EliminationStrategy::RandomSeeded;
  return std::nullopt;
}

const char* to_string(EliminationStrategy strategy) {
  switch (strategy) {
    case EliminationStrategy::LeftmostInnermost: return "leftmost-innermost";
    case EliminationStrategy::LeftmostOutermost: return "leftmost-outermost";
    case EliminationStrategy::RandomSeeded: return "random";
  }
  return "random";
}

namespace {

void collect_rule_paths_pre(const Derivation& d, const std::string& rule_name, NodePath& path,
                            std::vector<NodePath>& out) {
  if (d.kind() == Derivation::Kind::Rule && d.name() == rule_name) out.push_back(path);
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    path.push_back(i);
    collect_rule_paths_pre(d.children()[i], rule_name, path, out);
    path.pop_back();
  }
}

void collect_rule_paths_post(const Derivation& d, const std::string& rule_name, NodePath& path,
                             std::vector<NodePath>& out) {
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    path.push_back(i);
    collect_rule_paths_post(d.children()[i], rule_name, path, out);
    path.pop_back();
  }
  if (d.kind() == Derivation::Kind::Rule && d.name() == rule_name) out.push_back(path);
}

const Derivation* at_path(const Derivation& d, const NodePath& path) {
  const Derivation* node = &d;
  for (std::size_t idx : path) node = &node->children().at(idx);
  return node;
}

}  // namespace

EliminationTrace eliminate_rule(const Aphs& s, const NamedRule& r, const Derivation& d,
                                const MimicryTable& m, EliminationStrategy strategy,
                                std::uint64_t seed) {
  Aphs extended = extend_with_rule(s, r);
  if (!check_derivation(extended, d).valid())
    throw ValidationError("derivation is not valid in the extension by rule '" + r.name + "'");

  EliminationTrace trace;
  trace.initial = d;
  Derivation current = d;
  Rng rng(seed);
  while (true) {
    std::vector<NodePath> paths;
    NodePath buf;
    if (strategy == EliminationStrategy::LeftmostInnermost)
      collect_rule_paths_post(current, r.name, buf, paths);
    else
      collect_rule_paths_pre(current, r.name, buf, paths);
    if (paths.empty()) break;
    const NodePath& path =
        strategy == EliminationStrategy::RandomSeeded ? paths[rng.below(paths.size())] : paths[0];

    const Derivation* node = at_path(current, path);
    const Instance& inst = node->instance();
    const Derivation* entry = m.find(inst.id);
    if (entry == nullptr)
      throw MissingMimicry("no mimicry entry for instance '" + inst.id + "'");

    std::map<Term, Derivation, TermLess> plugs;
    for (std::size_t i = 0; i < inst.prem.size(); ++i)
      plugs.emplace(inst.prem[i], node->children()[i]);

    EliminationStep step;
    step.path = path;
    step.instance_id = inst.id;
    step.rule_nodes_before = count_rule_nodes(current, r.name);
    current = replace_subtree(current, path, graft_assumptions(*entry, plugs));
    step.rule_nodes_after = count_rule_nodes(current, r.name);
    trace.steps.push_back(std::move(step));
  }
  trace.final = std::move(current);
  return trace;
}

Derivation translate_closed_derivation(const Aphs& s, const NamedRule& r, const Derivation& d,
                                       const Budget& b) {
  Aphs extended = extend_with_rule(s, r);
  if (!check_derivation(extended, d).valid())
    throw ValidationError("derivation is not valid in the extension by rule '" + r.name + "'");
  if (!assumptions(d).empty())
    throw ValidationError("derivation has assumptions; only closed derivations translate");
  if (count_rule_nodes(d, r.name) == 0) return d;
  ProveResult result = derives(s, {}, conclusion(d), b);
  if (!result.proved())
    throw BudgetExceeded("could not re-derive " + to_string(conclusion(d)) +
                         " in the base system within the budget");
  return std::move(*result.witness);
}

namespace {

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Yes;
}

// Rules of `from`, with axioms as zero-premise rules, checked against `to`.
Verdict rules_admissible_in(const Aphs& from, const Aphs& to, const Budget& b) {
  Verdict all = Verdict::Yes;
  for (const NamedRule& r : from.rules)
    all = combine(all, check_admissible(to, r.rule, b).admissible);
  for (const NamedAxiom& ax : from.axioms) {
    UnnamedRule as_rule = UnnamedRule::explicit_list(
        {Instance{"ax", {}, *ax.formula.as_term()}});
    all = combine(all, check_admissible(to, as_rule, b).admissible);
  }
  return all;
}

Verdict rules_derivable_in(const Aphs& from, const Aphs& to, const Budget& b) {
  Verdict all = Verdict::Yes;
  for (const NamedRule& r : from.rules)
    all = combine(all, check_derivable(to, r.rule, b).derivable);
  for (const NamedAxiom& ax : from.axioms) {
    UnnamedRule as_rule = UnnamedRule::explicit_list(
        {Instance{"ax", {}, *ax.formula.as_term()}});
    all = combine(all, check_derivable(to, as_rule, b).derivable);
  }
  return all;
}

}  // namespace

SystemComparison compare_systems(const Aphs& s1, const Aphs& s2, const Budget& b) {
  if (!(s1.signature == s2.signature))
    throw SignatureMismatch("systems compare only over one signature");
  validate_budget(b);

  SystemComparison out;
  std::vector<Term> universe =
      !s1.universe_hint.empty() ? s1.universe_hint : universe_for(s2, b);

  RestrictedSystem r1 = restrict_to_universe(s1, universe);
  RestrictedSystem r2 = restrict_to_universe(s2, universe);
  bool lossless = r1.lossless && r2.lossless;
  if (!lossless)
    out.notes.push_back("systems were restricted to the budget universe; verdicts are "
                        "relative to that fragment");

  TheoremSet t1 = theorem_set(r1.system, b);
  TheoremSet t2 = theorem_set(r2.system, b);
  if (t1.saturated && t2.saturated) {
    out.same_theorems.value = t1.formulas == t2.formulas ? Verdict::Yes : Verdict::No;
    out.same_theorems.certified = lossless && t1.exhaustive && t2.exhaustive;
  }

  // Consequence relation over assumption sets from the universe.
  bool full_subsets = universe.size() <= 12;
  std::vector<TermSet> assumption_sets;
  if (full_subsets) {
    for (std::uint64_t mask = 0; mask < (1ull << universe.size()); ++mask) {
      TermSet gamma;
      for (std::size_t i = 0; i < universe.size(); ++i)
        if (mask & (1ull << i)) gamma.insert(universe[i]);
      assumption_sets.push_back(std::move(gamma));
    }
  } else {
    out.notes.push_back("consequence comparison capped at assumption sets of size 2");
    assumption_sets.push_back({});
    for (std::size_t i = 0; i < universe.size(); ++i) {
      assumption_sets.push_back({universe[i]});
      for (std::size_t j = i + 1; j < universe.size(); ++j)
        assumption_sets.push_back(TermSet{universe[i], universe[j]});
    }
  }
  Verdict consequence = Verdict::Yes;
  for (const TermSet& gamma : assumption_sets) {
    ForwardClosure c1(r1.system, gamma, b);
    ForwardClosure c2(r2.system, gamma, b);
    if (!c1.saturated() || !c2.saturated()) {
      consequence = Verdict::Unknown;
      break;
    }
    if (!(c1.derived() == c2.derived())) {
      consequence = Verdict::No;
      break;
    }
  }
  out.same_consequence.value = consequence;
  out.same_consequence.certified = lossless && full_subsets && consequence != Verdict::Unknown;

  out.mutual_admissibility.value = combine(rules_admissible_in(r1.system, r2.system, b),
                                           rules_admissible_in(r2.system, r1.system, b));
  out.mutual_admissibility.certified =
      lossless && out.mutual_admissibility.value != Verdict::Unknown;

  out.mutual_derivability.value = combine(rules_derivable_in(r1.system, r2.system, b),
                                          rules_derivable_in(r2.system, r1.system, b));
  out.mutual_derivability.certified =
      lossless && out.mutual_derivability.value != Verdict::Unknown;

  if (out.same_theorems.value != Verdict::Unknown &&
      out.mutual_admissibility.value != Verdict::Unknown)
    out.theorems_equiv_ok = out.same_theorems.value == out.mutual_admissibility.value;
  if (out.same_consequence.value != Verdict::Unknown &&
      out.mutual_derivability.value != Verdict::Unknown)
    out.consequence_equiv_ok = out.same_consequence.value == out.mutual_derivability.value;
  return out;
}

bool VecTermLess::operator()(const std::vector<Term>& a, const std::vector<Term>& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), term_less);
}

bool ShapeLess::operator()(const std::pair<std::vector<Term>, Term>& a,
                           const std::pair<std::vector<Term>, Term>& b) const {
  VecTermLess less;
  if (less(a.first, b.first)) return true;
  if (less(b.first, a.first)) return false;
  return term_less(a.second, b.second);
}

UnnamedRule rule_from_partial_function(const RuleDescription& desc) {
  std::vector<Instance> instances;
  std::size_t i = 0;
  for (const auto& [prem, concl] : desc)
    instances.push_back(Instance{"d" + std::to_string(i++), prem, concl});
  return UnnamedRule::explicit_list(std::move(instances));
}

UnnamedRule rule_from_relation(const RuleRelation& rel) {
  std::vector<Instance> instances;
  for (const auto& [prem, concl] : rel)
    instances.push_back(Instance{instance_shape_string(prem, concl), prem, concl});
  return UnnamedRule::explicit_list(std::move(instances));
}

std::vector<std::pair<std::string, std::string>> intensional_duplicates(
    const UnnamedRule& rule, const std::vector<Term>& universe) {
  std::map<std::pair<std::vector<Term>, Term>, std::vector<std::string>, ShapeLess> by_shape;
  for (const Instance& inst : rule.enumerate(universe))
    by_shape[{inst.prem, inst.concl}].push_back(inst.id);
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& [shape, ids] : by_shape) {
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) out.emplace_back(ids[i], ids[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace proofkit
