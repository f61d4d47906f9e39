#include <doctest.h>

#include <functional>

#include "proofkit/ars.hpp"
#include "proofkit/sampler.hpp"

using namespace proofkit;

namespace {

// Rewrite-everywhere oracle: recomputes the induced pair set by structural
// recursion, with no step bookkeeping at all.
void oracle_targets(const Term& sub, const std::function<Term(const Term&)>& rebuild,
                    const Scheme& lhs, const Scheme& rhs, TermSet& out) {
  if (auto m = match_scheme(lhs, sub)) out.insert(rebuild(apply_substitution(rhs, *m)));
  for (std::size_t i = 0; i < sub.children().size(); ++i) {
    auto rebuild_child = [&, i](const Term& replacement) {
      std::vector<Term> kids = sub.children();
      kids[i] = replacement;
      return rebuild(Term(sub.head(), std::move(kids)));
    };
    oracle_targets(sub.children()[i], rebuild_child, lhs, rhs, out);
  }
}

std::set<ObjectPair> oracle_relation(const Signature& sig, const Scheme& lhs, const Scheme& rhs,
                                     std::size_t bound) {
  std::set<ObjectPair> rel;
  for (const Term& t : enumerate_terms(sig, bound)) {
    TermSet targets;
    oracle_targets(t, [](const Term& x) { return x; }, lhs, rhs, targets);
    for (const Term& target : targets)
      if (target.size() <= bound) rel.emplace(to_string(t), to_string(target));
  }
  return rel;
}

Ars random_ars(Rng& rng) {
  Ars a;
  std::size_t n = 2 + rng.below(5);
  for (std::size_t i = 0; i < n; ++i) a.objects.push_back("o" + std::to_string(i));
  std::size_t steps = rng.below(10);
  for (std::size_t i = 0; i < steps; ++i)
    a.steps.push_back(ArsStep{"s" + std::to_string(i), a.objects[rng.below(n)],
                              a.objects[rng.below(n)], ""});
  return a;
}

}  // namespace

TEST_CASE("induced_relation collapses parallel steps") {
  Ars empty;
  empty.objects = {"x"};
  CHECK(induced_relation(empty).empty());

  Ars a;
  a.objects = {"a", "b", "c"};
  a.steps = {{"s1", "a", "b", ""}, {"s2", "a", "b", ""}, {"s3", "b", "c", ""}};
  auto rel = induced_relation(a);
  CHECK(rel == std::set<ObjectPair>{{"a", "b"}, {"b", "c"}});
}

TEST_CASE("one-rule expansion keeps parallel steps apart") {
  Signature sig({{"a", 0}, {"f", 1}});
  Ars ars = trs_step_expansion(sig, parse_scheme("f(?x)"), parse_scheme("?x"), 3);

  // f(f(a)) holds two redexes with one common target.
  auto parallel = steps_between(ars, "f(f(a))", "f(a)");
  REQUIRE(parallel.size() == 2);
  CHECK(parallel[0].id == "f(f(a))@ε");
  CHECK(parallel[1].id == "f(f(a))@1");

  CHECK(ars.steps.size() == 3);  // f(a)->a plus the two above
  auto rel = induced_relation(ars);
  CHECK(rel.size() == 2);
  CHECK(rel.count({"f(f(a))", "f(a)"}) == 1);
  CHECK(ars.steps.size() > rel.size());

  CHECK(steps_between(ars, "a", "a").empty());
  CHECK_THROWS_AS(steps_between(ars, "f(f(f(a)))", "a"), UnknownObject);
}

TEST_CASE("a constant has no redexes") {
  Signature sig({{"a", 0}, {"f", 1}});
  Ars ars = trs_step_expansion(sig, parse_scheme("f(?x)"), parse_scheme("?x"), 1);
  CHECK(ars.objects == std::vector<std::string>{"a"});
  CHECK(ars.steps.empty());
}

TEST_CASE("fresh right-hand variables are rejected") {
  Signature sig({{"a", 0}, {"f", 1}});
  CHECK_THROWS_AS(trs_step_expansion(sig, parse_scheme("f(?x)"), parse_scheme("?y"), 3),
                  IllFormedRule);
}

TEST_CASE("expansion agrees with the rewrite-everywhere oracle") {
  struct Case {
    Signature sig;
    const char* lhs;
    const char* rhs;
  };
  std::vector<Case> cases = {
      {Signature({{"a", 0}, {"f", 1}}), "f(?x)", "?x"},
      {Signature({{"a", 0}, {"f", 1}, {"g", 1}}), "f(?x)", "g(?x)"},
      {Signature({{"a", 0}, {"b", 0}, {"p", 2}}), "p(?x,?y)", "p(?y,?x)"},
      {Signature({{"a", 0}, {"f", 1}}), "f(f(?x))", "f(?x)"},
  };
  for (const Case& c : cases)
    for (std::size_t bound = 1; bound <= 5; ++bound) {
      Ars ars = trs_step_expansion(c.sig, parse_scheme(c.lhs), parse_scheme(c.rhs), bound);
      CHECK(validate_ars(ars).empty());
      CHECK(induced_relation(ars) ==
            oracle_relation(c.sig, parse_scheme(c.lhs), parse_scheme(c.rhs), bound));
    }
}

TEST_CASE("steps_between matches the relation on random systems") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    Ars a = random_ars(rng);
    auto rel = induced_relation(a);
    for (const std::string& x : a.objects)
      for (const std::string& y : a.objects) {
        bool related = rel.count({x, y}) > 0;
        CHECK(related == !steps_between(a, x, y).empty());
      }
  }
}

TEST_CASE("reachable grows monotonically to a fixpoint") {
  Signature sig({{"a", 0}, {"f", 1}});
  Ars ars = trs_step_expansion(sig, parse_scheme("f(?x)"), parse_scheme("?x"), 3);

  CHECK(reachable(ars, "a", 0) == std::set<std::string>{"a"});
  CHECK(reachable(ars, "f(f(a))", 2) == std::set<std::string>{"f(f(a))", "f(a)", "a"});

  Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    Ars a = random_ars(rng);
    const std::string& start = a.objects[rng.below(a.objects.size())];
    std::set<std::string> prev;
    for (std::size_t k = 0; k <= a.objects.size() + 1; ++k) {
      auto now = reachable(a, start, k);
      CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
      prev = std::move(now);
    }
    CHECK(reachable(a, start, a.objects.size()) == reachable(a, start, a.objects.size() + 1));
  }
}
