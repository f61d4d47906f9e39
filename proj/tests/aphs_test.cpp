#include <doctest.h>

#include "proofkit/json_io.hpp"
#include "proofkit/sampler.hpp"

using namespace proofkit;

namespace {

// Minimal-logic Hilbert system: axiom families K and S plus detachment.
Aphs hilbert_min() {
  Aphs s;
  s.signature = Signature({{"a", 0}, {"b", 0}, {"imp", 2}});
  s.axioms.push_back({parse_scheme("imp(?A,imp(?B,?A))"), "K"});
  s.axioms.push_back(
      {parse_scheme("imp(imp(?A,imp(?B,?C)),imp(imp(?A,?B),imp(?A,?C)))"), "S"});
  s.rules.push_back({UnnamedRule::scheme({parse_scheme("imp(?A,?B)"), parse_scheme("?A")},
                                         parse_scheme("?B")),
                     "MP"});
  return s;
}

// Axiom a, explicit rules a/f(a) and f(a)/f(f(a)).
Aphs chain_system() {
  Aphs s;
  s.signature = Signature({{"a", 0}, {"b", 0}, {"f", 1}});
  s.axioms.push_back({Scheme(parse_term("a")), "start"});
  s.rules.push_back({UnnamedRule::explicit_list({{"i1", {parse_term("a")}, parse_term("f(a)")},
                                                 {"i2",
                                                  {parse_term("f(a)")},
                                                  parse_term("f(f(a))")}}),
                     "grow"});
  return s;
}

// Dumb fixpoint oracle: iterates over instance lists until stable, sets only.
TermSet oracle_closure(const Aphs& s, const TermSet& seeds, const Budget& b) {
  auto restricted = restrict_to_universe(s, universe_for(s, b));
  TermSet derived = seeds;
  for (const NamedAxiom& ax : restricted.system.axioms) derived.insert(*ax.formula.as_term());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const NamedRule& r : restricted.system.rules)
      for (const Instance& inst : r.rule.as_explicit()->instances) {
        bool ready = true;
        for (const Term& p : inst.prem) ready = ready && derived.count(p) > 0;
        if (ready && derived.insert(inst.concl).second) changed = true;
      }
  }
  return derived;
}

}  // namespace

TEST_CASE("validate_system enforces the naming constraints") {
  CHECK(validate_system(hilbert_min()).empty());
  CHECK(validate_system(chain_system()).empty());

  Aphs clash = hilbert_min();
  clash.rules.push_back({UnnamedRule::explicit_list({}), "K"});
  bool found_i = false;
  for (const Diagnostic& d : validate_system(clash)) found_i |= d.code == "naming-i";
  CHECK(found_i);

  Aphs dup = hilbert_min();
  dup.rules.push_back({dup.rules[0].rule, "MP"});
  bool found_ii = false;
  for (const Diagnostic& d : validate_system(dup)) found_ii |= d.code == "naming-ii";
  CHECK(found_ii);

  // One rule under two names is fine.
  Aphs twice = hilbert_min();
  twice.rules.push_back({twice.rules[0].rule, "MP2"});
  CHECK(validate_system(twice).empty());
}

TEST_CASE("check_derivation accepts the good and localizes the bad") {
  Aphs s = hilbert_min();

  Derivation leaf = Derivation::assume(parse_term("a"));
  CHECK(check_derivation(s, leaf).valid());
  CHECK(assumptions(leaf) == TermSet{parse_term("a")});
  CHECK(conclusion(leaf) == parse_term("a"));

  // MP on an axiom leaf and an assumption leaf.
  const NamedRule* mp = s.find_rule("MP");
  REQUIRE(mp != nullptr);
  Substitution sub{{"A", parse_term("a")}, {"B", parse_term("a")}};
  Instance inst{to_string(sub), {parse_term("imp(a,a)"), parse_term("a")}, parse_term("a")};
  REQUIRE(mp->rule.member(inst));
  Derivation good = Derivation::rule(
      "MP", inst,
      {Derivation::axiom("K", parse_term("imp(a,a)")), Derivation::assume(parse_term("a"))});
  // imp(a,a) is not a K instance, so the axiom leaf is rejected...
  CHECK_FALSE(check_derivation(s, good).valid());
  // ...while the genuine instance passes.
  Derivation axiom_leaf = Derivation::axiom("K", parse_term("imp(a,imp(a,a))"));
  Instance inst2{to_string(Substitution{{"A", parse_term("a")}, {"B", parse_term("a")}}),
                 {parse_term("imp(a,imp(a,a))")},
                 parse_term("a")};
  CHECK(check_derivation(s, axiom_leaf).valid());

  Derivation arity_bad = Derivation::rule("MP", inst, {axiom_leaf});
  auto result = check_derivation(s, arity_bad);
  REQUIRE_FALSE(result.valid());
  bool has_arity_defect = false;
  for (const Defect& d : result.defects)
    has_arity_defect |= d.message.find("arity mismatch") != std::string::npos &&
                        d.message.find("at path []") != std::string::npos;
  CHECK(has_arity_defect);
}

TEST_CASE("assumptions collapse duplicate leaves into a set") {
  Aphs s = chain_system();
  const NamedRule* grow = s.find_rule("grow");
  Instance i1 = *grow->rule.find_instance("i1");
  Derivation two_leaves = Derivation::rule(
      "grow", i1, {Derivation::assume(parse_term("a"))});
  Derivation d = Derivation::rule(
      "grow", *grow->rule.find_instance("i2"),
      {Derivation::rule("grow", i1, {Derivation::assume(parse_term("a"))})});
  CHECK(assumptions(d) == TermSet{parse_term("a")});
  CHECK(assumptions(two_leaves) == TermSet{parse_term("a")});

  Derivation closed = Derivation::axiom("start", parse_term("a"));
  CHECK(assumptions(closed).empty());
}

TEST_CASE("derives finds assumptions immediately") {
  Aphs s = chain_system();
  Budget b{3, 3, 1000};
  Term g = parse_term("f(f(a))");
  auto r = derives(s, TermSet{g}, g, b);
  REQUIRE(r.proved());
  CHECK(*r.witness == Derivation::assume(g));
}

TEST_CASE("derives proves imp(a,a) in the K/S/MP system") {
  Aphs s = hilbert_min();
  Budget b{8, 7, 2000000};
  auto r = derives(s, {}, parse_term("imp(a,a)"), b);
  REQUIRE(r.proved());
  CHECK(check_derivation(s, *r.witness).valid());
  CHECK(assumptions(*r.witness).empty());
  CHECK(conclusion(*r.witness) == parse_term("imp(a,a)"));
}

TEST_CASE("derives reports nothing provable in the empty system") {
  Aphs s;
  s.signature = Signature({{"a", 0}});
  Budget b{4, 2, 1000};
  auto r = derives(s, {}, parse_term("a"), b);
  CHECK_FALSE(r.proved());
  CHECK(r.refuted);  // no axioms, no rules: saturation is immediate
}

TEST_CASE("is_theorem on the chain system") {
  Aphs s = chain_system();
  Budget b{6, 3, 10000};

  auto yes = is_theorem(s, parse_term("a"), b);
  CHECK(yes.verdict == Verdict::Yes);
  CHECK(yes.witness->kind() == Derivation::Kind::Axiom);

  auto top = is_theorem(s, parse_term("f(f(a))"), b);
  CHECK(top.verdict == Verdict::Yes);
  CHECK(check_derivation(s, *top.witness).valid());
  CHECK(assumptions(*top.witness).empty());

  auto no = is_theorem(s, parse_term("b"), b);
  CHECK(no.verdict == Verdict::No);
}

TEST_CASE("theorem_set saturates and matches the oracle") {
  Aphs empty;
  empty.signature = Signature({{"a", 0}});
  Budget b{4, 3, 10000};
  auto t0 = theorem_set(empty, b);
  CHECK(t0.formulas.empty());
  CHECK(t0.saturated);
  CHECK(t0.exhaustive);

  Aphs s = chain_system();
  auto t1 = theorem_set(s, b);
  CHECK(t1.saturated);
  CHECK(t1.exhaustive);
  CHECK(t1.formulas ==
        TermSet{parse_term("a"), parse_term("f(a)"), parse_term("f(f(a))")});
  CHECK(t1.formulas == oracle_closure(s, {}, b));
}

TEST_CASE("theorem_set of K/S/MP under a small universe") {
  Aphs s = hilbert_min();
  Budget b{6, 5, 100000};
  auto t = theorem_set(s, b);
  CHECK(t.saturated);
  CHECK_FALSE(t.exhaustive);  // scheme axioms and a scheme rule were cut to the universe
  // All K instances of size <= 5 and nothing else: detachment cannot fire yet.
  TermSet expected{parse_term("imp(a,imp(a,a))"), parse_term("imp(a,imp(b,a))"),
                   parse_term("imp(b,imp(a,b))"), parse_term("imp(b,imp(b,b))")};
  CHECK(t.formulas == expected);
  CHECK(t.formulas == oracle_closure(s, {}, b));
}

TEST_CASE("theorem_set agrees with is_theorem across sampled systems") {
  Rng rng(13);
  for (int round = 0; round < 30; ++round) {
    SampledSystem sample = sample_system(rng);
    auto t = theorem_set(sample.system, sample.budget);
    REQUIRE(t.exhaustive);
    for (const Term& candidate : sample.universe) {
      auto verdict = is_theorem(sample.system, candidate, sample.budget);
      CHECK(verdict.verdict == (t.formulas.count(candidate) ? Verdict::Yes : Verdict::No));
      if (verdict.witness) {
        CHECK(check_derivation(sample.system, *verdict.witness).valid());
        CHECK(assumptions(*verdict.witness).empty());
      }
    }
  }
}

TEST_CASE("monotonicity in the assumptions") {
  Rng rng(17);
  for (int round = 0; round < 20; ++round) {
    SampledSystem sample = sample_system(rng);
    TermSet small{sample.universe[rng.below(sample.universe.size())]};
    TermSet large = small;
    large.insert(sample.universe[rng.below(sample.universe.size())]);
    for (const Term& goal : sample.universe) {
      auto narrow = derives(sample.system, small, goal, sample.budget);
      if (narrow.proved()) {
        auto wide = derives(sample.system, large, goal, sample.budget);
        CHECK(wide.proved());
      }
    }
  }
}

TEST_CASE("composition: grafting valid derivations stays valid") {
  Aphs s = chain_system();
  Budget b{6, 3, 10000};
  auto of_top = derives(s, TermSet{parse_term("f(a)")}, parse_term("f(f(a))"), b);
  REQUIRE(of_top.proved());
  auto of_mid = derives(s, {}, parse_term("f(a)"), b);
  REQUIRE(of_mid.proved());
  std::map<Term, Derivation, TermLess> plugs{{parse_term("f(a)"), *of_mid.witness}};
  Derivation grafted = graft_assumptions(*of_top.witness, plugs);
  CHECK(check_derivation(s, grafted).valid());
  CHECK(assumptions(grafted).empty());
  CHECK(conclusion(grafted) == parse_term("f(f(a))"));
}

TEST_CASE("extend_with_rule preserves the original and grows theorems") {
  Aphs s = chain_system();
  NamedRule extra{UnnamedRule::explicit_list({{"e1", {}, parse_term("b")}}), "bolt"};
  Aphs bigger = extend_with_rule(s, extra);
  CHECK(validate_system(bigger).empty());
  CHECK(s.find_rule("bolt") == nullptr);
  CHECK(bigger.find_rule("bolt") != nullptr);

  CHECK_THROWS_AS(extend_with_rule(s, NamedRule{extra.rule, "start"}), NameClash);
  CHECK_THROWS_AS(extend_with_rule(s, NamedRule{extra.rule, "grow"}), NameClash);

  Rng rng(23);
  for (int round = 0; round < 20; ++round) {
    SampledSystem sample = sample_system(rng);
    UnnamedRule rule = sample_explicit_rule(rng, sample.universe);
    Aphs extended = extend_with_rule(sample.system, NamedRule{rule, fresh_name(sample.system, "x")});
    auto before = theorem_set(sample.system, sample.budget);
    auto after = theorem_set(extended, sample.budget);
    CHECK(std::includes(after.formulas.begin(), after.formulas.end(),
                        before.formulas.begin(), before.formulas.end(), TermLess{}));
  }
}

TEST_CASE("search is deterministic: identical runs give identical witnesses") {
  Aphs s = hilbert_min();
  Budget b{8, 7, 2000000};
  auto first = derives(s, {}, parse_term("imp(a,a)"), b);
  auto second = derives(s, {}, parse_term("imp(a,a)"), b);
  REQUIRE(first.proved());
  REQUIRE(second.proved());
  CHECK(derivation_to_json(*first.witness).dump() == derivation_to_json(*second.witness).dump());
}

TEST_CASE("budgets must be positive") {
  Aphs s = chain_system();
  CHECK_THROWS_AS(derives(s, {}, parse_term("a"), Budget{0, 3, 10}), ValidationError);
  CHECK_THROWS_AS(theorem_set(s, Budget{3, 0, 10}), ValidationError);
}
