#include <doctest.h>

#include "proofkit/term.hpp"

using namespace proofkit;

namespace {

// Counts terms of each node count by convolution, without building any term.
std::vector<std::size_t> census(const Signature& sig, std::size_t max_size) {
  std::vector<std::size_t> counts(max_size + 1, 0);
  for (std::size_t size = 1; size <= max_size; ++size) {
    for (const Symbol& sym : sig.symbols()) {
      if (sym.arity == 0) {
        if (size == 1) counts[size] += 1;
        continue;
      }
      std::vector<std::size_t> ways(1, 1);  // ways[j] after fixing some children
      for (std::size_t child = 0; child < sym.arity; ++child) {
        std::vector<std::size_t> next(size, 0);
        for (std::size_t spent = 0; spent < ways.size(); ++spent)
          for (std::size_t take = 1; spent + take < size; ++take)
            next[spent + take] += ways[spent] * counts[take];
        ways = std::move(next);
      }
      if (size >= 1 && size - 1 < ways.size()) counts[size] += ways[size - 1];
    }
  }
  return counts;
}

std::size_t total(const std::vector<std::size_t>& counts) {
  std::size_t sum = 0;
  for (std::size_t c : counts) sum += c;
  return sum;
}

}  // namespace

TEST_CASE("apply_substitution replaces meta-variable leaves") {
  Scheme x = Scheme::var("X");
  Substitution sub{{"X", parse_term("a")}};
  CHECK(apply_substitution(x, sub) == parse_term("a"));

  Scheme dup = parse_scheme("imp(?X,?X)");
  Substitution sub2{{"X", parse_term("f(a)")}};
  CHECK(apply_substitution(dup, sub2) == parse_term("imp(f(a),f(a))"));

  Scheme two = parse_scheme("imp(?X,?Y)");
  CHECK_THROWS_AS(apply_substitution(two, sub2), UnboundMetaVar);
}

TEST_CASE("match_scheme is one-way and nonlinear-aware") {
  auto m = match_scheme(Scheme::var("X"), parse_term("f(a)"));
  REQUIRE(m.has_value());
  CHECK(m->at("X") == parse_term("f(a)"));

  CHECK_FALSE(match_scheme(parse_scheme("imp(?X,?X)"), parse_term("imp(a,b)")).has_value());
  CHECK(match_scheme(parse_scheme("imp(?X,?X)"), parse_term("imp(b,b)")).has_value());
}

TEST_CASE("match then apply reproduces the term") {
  Signature sig({{"a", 0}, {"f", 1}, {"imp", 2}});
  std::vector<Scheme> schemes = {
      parse_scheme("?X"),          parse_scheme("f(?X)"),       parse_scheme("imp(?X,?Y)"),
      parse_scheme("imp(?X,?X)"),  parse_scheme("f(f(?X))"),    parse_scheme("imp(f(?X),?Y)"),
  };
  for (const Term& t : enumerate_terms(sig, 5)) {
    for (const Scheme& s : schemes) {
      auto m = match_scheme(s, t);
      if (m) CHECK(apply_substitution(s, *m) == t);
    }
  }
}

TEST_CASE("matching is complete on linear schemes up to size 5") {
  Signature sig({{"a", 0}, {"f", 1}, {"imp", 2}});
  Scheme s = parse_scheme("imp(?X,?Y)");
  auto universe = enumerate_terms(sig, 5);
  // Instantiate the scheme every possible way, then re-match.
  for (const Term& x : universe)
    for (const Term& y : universe) {
      Substitution sub{{"X", x}, {"Y", y}};
      Term t = apply_substitution(s, sub);
      auto m = match_scheme(s, t);
      REQUIRE(m.has_value());
      CHECK(*m == sub);
    }
}

TEST_CASE("enumerate_terms matches the spec'd small universes") {
  Signature unary({{"a", 0}, {"f", 1}});
  auto terms = enumerate_terms(unary, 3);
  REQUIRE(terms.size() == 3);
  CHECK(to_string(terms[0]) == "a");
  CHECK(to_string(terms[1]) == "f(a)");
  CHECK(to_string(terms[2]) == "f(f(a))");

  Signature single({{"a", 0}});
  auto only = enumerate_terms(single, 1);
  REQUIRE(only.size() == 1);
  CHECK(to_string(only[0]) == "a");

  Signature binary({{"a", 0}, {"b", 0}, {"g", 2}});
  CHECK(enumerate_terms(binary, 3).size() == 6);  // 2 constants + 2*2 pairs
}

TEST_CASE("enumeration agrees with an independent census") {
  std::vector<Signature> sigs = {
      Signature({{"a", 0}, {"f", 1}}),
      Signature({{"a", 0}, {"b", 0}, {"g", 2}}),
      Signature({{"a", 0}, {"b", 0}, {"f", 1}, {"imp", 2}}),
      Signature({{"c", 0}}),
  };
  for (const Signature& sig : sigs) {
    for (std::size_t bound = 1; bound <= 6; ++bound) {
      auto terms = enumerate_terms(sig, bound);
      CHECK(terms.size() == total(census(sig, bound)));
      // Duplicate-free and strictly ordered.
      for (std::size_t i = 1; i < terms.size(); ++i) {
        CHECK(term_less(terms[i - 1], terms[i]));
        CHECK(terms[i].size() <= bound);
      }
    }
  }
}

TEST_CASE("term_size counts nodes") {
  CHECK(term_size(parse_term("a")) == 1);
  CHECK(term_size(parse_term("f(f(a))")) == 3);
  CHECK(term_size(parse_term("imp(a,f(a))")) == 4);
}

TEST_CASE("parser and printer round-trip; whitespace is irrelevant") {
  CHECK(to_string(parse_term(" imp( a , f( a ) ) ")) == "imp(a,f(a))");
  CHECK(to_string(parse_scheme("imp(?A, f(?B))")) == "imp(?A,f(?B))");
  CHECK_THROWS_AS(parse_term("imp(a"), ParseError);
  CHECK_THROWS_AS(parse_term("imp(a,b) junk"), ParseError);
  CHECK_THROWS_AS(parse_term("?X"), ParseError);  // meta-variable in ground position
}

TEST_CASE("substitutions print canonically and parse back") {
  Substitution sub{{"B", parse_term("f(a)")}, {"A", parse_term("a")}};
  std::string text = to_string(sub);
  CHECK(text == "{A:=a,B:=f(a)}");
  CHECK(parse_substitution(text) == sub);
  CHECK(parse_substitution("{}").empty());
}

TEST_CASE("signature rejects duplicates and missing constants") {
  CHECK_THROWS_AS(Signature({{"f", 1}}), ValidationError);
  CHECK_THROWS_AS(Signature({{"a", 0}, {"a", 1}}), ValidationError);
}
