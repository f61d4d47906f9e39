#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proofkit/errors.hpp"

namespace proofkit {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// A finite set of symbols with unique names and at least one constant,
// so that the set of terms over it is nonempty.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;  // sorted by name
};

// Finite ordered tree over a signature; immutable after construction. The
// default-constructed term is the placeholder leaf `_`.
class Term {
 public:
  Term() : head_("_") {}
  explicit Term(std::string head, std::vector<Term> children = {});

  const std::string& head() const { return head_; }
  const std::vector<Term>& children() const { return children_; }
  std::size_t size() const { return size_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  std::string head_;
  std::vector<Term> children_;
  std::size_t size_ = 1;
};

// Canonical total order: node count first, then head name, then children.
int term_compare(const Term& a, const Term& b);
bool term_less(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

using TermSet = std::set<Term, TermLess>;

// Term-shaped tree whose leaves may be meta-variables (written `?name`).
class Scheme {
 public:
  Scheme() : head_("_") {}
  static Scheme var(std::string name);
  static Scheme app(std::string head, std::vector<Scheme> children = {});
  Scheme(const Term& t);  // ground embedding

  bool is_var() const { return is_var_; }
  const std::string& head() const { return head_; }
  const std::vector<Scheme>& children() const { return children_; }

  bool is_ground() const;
  std::set<std::string> metavars() const;
  // Converts back to a Term; empty if any meta-variable occurs.
  std::optional<Term> as_term() const;

  friend bool operator==(const Scheme& a, const Scheme& b);
  friend bool operator!=(const Scheme& a, const Scheme& b) { return !(a == b); }

 private:
  std::string head_;
  std::vector<Scheme> children_;
  bool is_var_ = false;
};

using Substitution = std::map<std::string, Term>;

// Replaces every meta-variable leaf by its image under the substitution.
// Throws UnboundMetaVar if the substitution misses a variable of the scheme.
Term apply_substitution(const Scheme& s, const Substitution& subst);

// One-way syntactic matching; repeated meta-variables must match equal
// subterms. Absence of a match is a value, not an error.
std::optional<Substitution> match_scheme(const Scheme& s, const Term& t);

// Matching against an accumulator, for deciding membership of instances that
// share meta-variables across several schemes. Returns false and leaves the
// accumulator in an unspecified state on mismatch.
bool match_into(const Scheme& s, const Term& t, Substitution& acc);

// All terms with node count <= max_size in the canonical order, no duplicates.
std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_size);

std::size_t term_size(const Term& t);

// Every node's head is declared with the matching arity.
bool well_formed(const Signature& sig, const Term& t);
bool well_formed(const Signature& sig, const Scheme& s);

// Concrete syntax: `name` for arity 0, `name(t1,...,tk)` otherwise, meta
// variables as `?name`. Whitespace-insensitive.
Scheme parse_scheme(std::string_view text);
Term parse_term(std::string_view text);  // throws ParseError on meta-variables

std::string to_string(const Term& t);
std::string to_string(const Scheme& s);
std::string to_string(const Substitution& subst);
Substitution parse_substitution(std::string_view text);

}  // namespace proofkit
