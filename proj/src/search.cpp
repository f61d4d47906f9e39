#include "proofkit/aphs.hpp"

namespace proofkit {

ForwardClosure::ForwardClosure(const Aphs& s, const TermSet& seeds, const Budget& b) {
  validate_budget(b);
  auto restricted = restrict_to_universe(s, universe_for(s, b));
  exhaustive_ = restricted.lossless;

  for (const Term& t : seeds)
    if (derived_.insert(t).second) provenance_.emplace(t, Provenance{Provenance::Kind::Seed, "", {}});
  for (const NamedAxiom& ax : restricted.system.axioms) {
    Term formula = *ax.formula.as_term();
    if (derived_.insert(formula).second)
      provenance_.emplace(formula, Provenance{Provenance::Kind::Axiom, ax.name, {}});
  }

  std::vector<std::pair<std::string, Instance>> pending;
  for (const NamedRule& r : restricted.system.rules)
    for (const Instance& inst : r.rule.as_explicit()->instances)
      pending.emplace_back(r.name, inst);

  std::size_t work = 0;
  bool changed = true;
  bool aborted = false;
  while (changed && !aborted) {
    changed = false;
    std::vector<std::pair<std::string, Instance>> still_pending;
    for (auto& [rule_name, inst] : pending) {
      if (++work > b.max_nodes_expanded) {
        aborted = true;
        break;
      }
      if (derived_.count(inst.concl)) continue;
      bool ready = true;
      for (const Term& p : inst.prem) ready = ready && derived_.count(p) > 0;
      if (!ready) {
        still_pending.emplace_back(rule_name, std::move(inst));
        continue;
      }
      derived_.insert(inst.concl);
      provenance_.emplace(inst.concl, Provenance{Provenance::Kind::Rule, rule_name, inst});
      changed = true;
    }
    if (!aborted) pending = std::move(still_pending);
  }
  saturated_ = !aborted;
  exhaustive_ = exhaustive_ && saturated_;
}

Derivation ForwardClosure::witness(const Term& t) const {
  auto it = provenance_.find(t);
  if (it == provenance_.end())
    throw Error("no witness: " + to_string(t) + " was not derived");
  const Provenance& p = it->second;
  switch (p.kind) {
    case Provenance::Kind::Seed: return Derivation::assume(t);
    case Provenance::Kind::Axiom: return Derivation::axiom(p.name, t);
    case Provenance::Kind::Rule: {
      std::vector<Derivation> kids;
      kids.reserve(p.instance->prem.size());
      for (const Term& prem : p.instance->prem) kids.push_back(witness(prem));
      return Derivation::rule(p.name, *p.instance, std::move(kids));
    }
  }
  throw Error("unreachable");
}

TheoremSet theorem_set(const Aphs& s, const Budget& b) {
  ForwardClosure closure(s, {}, b);
  return TheoremSet{closure.derived(), closure.saturated(), closure.exhaustive()};
}

namespace {

// Goal-directed depth-first search with memoized goals. Failures are only
// cached when the subsearch was not cut short by a cycle block or the node
// budget, otherwise a later attempt in a different context could be masked.
class BackwardProver {
 public:
  BackwardProver(const Aphs& s, const TermSet& assumptions, const Budget& b)
      : s_(s), assumptions_(assumptions), universe_(universe_for(s, b)), budget_(b) {}

  std::optional<Derivation> run(const Term& goal) {
    bool tainted = false;
    return prove(goal, budget_.max_depth, tainted);
  }

 private:
  std::optional<Derivation> prove(const Term& goal, std::size_t depth, bool& tainted) {
    if (auto it = proved_.find(goal); it != proved_.end()) return it->second;
    if (auto it = failed_.find(goal); it != failed_.end() && it->second >= depth)
      return std::nullopt;
    if (on_stack_.count(goal)) {
      tainted = true;
      return std::nullopt;
    }
    if (++nodes_ > budget_.max_nodes_expanded) {
      tainted = true;
      return std::nullopt;
    }
    if (assumptions_.count(goal)) {
      Derivation d = Derivation::assume(goal);
      proved_.emplace(goal, d);
      return d;
    }
    for (const NamedAxiom& ax : s_.axioms)
      if (match_scheme(ax.formula, goal)) {
        Derivation d = Derivation::axiom(ax.name, goal);
        proved_.emplace(goal, d);
        return d;
      }
    bool subsearch_tainted = false;
    if (depth > 0) {
      on_stack_.insert(goal);
      for (const NamedRule& r : s_.rules) {
        for (const Instance& inst : r.rule.concluding(goal, universe_)) {
          std::vector<Derivation> kids;
          kids.reserve(inst.arity());
          bool ok = true;
          for (const Term& prem : inst.prem) {
            auto sub = prove(prem, depth - 1, subsearch_tainted);
            if (!sub) {
              ok = false;
              break;
            }
            kids.push_back(std::move(*sub));
          }
          if (ok) {
            Derivation d = Derivation::rule(r.name, inst, std::move(kids));
            on_stack_.erase(goal);
            proved_.emplace(goal, d);
            return d;
          }
        }
      }
      on_stack_.erase(goal);
    }
    if (!subsearch_tainted) {
      auto [it, inserted] = failed_.emplace(goal, depth);
      if (!inserted && it->second < depth) it->second = depth;
    } else {
      tainted = true;
    }
    return std::nullopt;
  }

  const Aphs& s_;
  const TermSet& assumptions_;
  std::vector<Term> universe_;
  Budget budget_;
  std::size_t nodes_ = 0;
  std::map<Term, Derivation, TermLess> proved_;
  std::map<Term, std::size_t, TermLess> failed_;
  TermSet on_stack_;
};

}  // namespace

ProveResult derives(const Aphs& s, const TermSet& assumptions, const Term& goal,
                    const Budget& b) {
  validate_budget(b);
  if (!well_formed(s.signature, goal))
    throw ValidationError("goal " + to_string(goal) + " is not well-formed over the signature");
  ProveResult result;
  BackwardProver prover(s, assumptions, b);
  if (auto witness = prover.run(goal)) {
    result.witness = std::move(witness);
    return result;
  }
  ForwardClosure closure(s, assumptions, b);
  if (closure.contains(goal)) {
    result.witness = closure.witness(goal);
    return result;
  }
  result.refuted = closure.exhaustive();
  return result;
}

TheoremResult is_theorem(const Aphs& s, const Term& formula, const Budget& b) {
  ProveResult r = derives(s, {}, formula, b);
  if (r.proved()) return {Verdict::Yes, std::move(r.witness)};
  if (r.refuted) return {Verdict::No, std::nullopt};
  return {Verdict::Unknown, std::nullopt};
}

}  // namespace proofkit
