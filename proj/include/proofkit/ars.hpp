#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proofkit/term.hpp"

namespace proofkit {

// A single rewrite step with its own identity. Parallel steps between the
// same endpoints stay distinct.
struct ArsStep {
  std::string id;
  std::string src;
  std::string tgt;
  std::string label;  // optional tag for indexed step families

  friend bool operator==(const ArsStep&, const ArsStep&) = default;
};

// Objects plus steps with source/target projections. Object identifiers are
// arbitrary strings; expansions of term rewrite rules use canonical term text.
struct Ars {
  std::vector<std::string> objects;
  std::vector<ArsStep> steps;

  bool has_object(const std::string& id) const;
};

std::vector<std::string> validate_ars(const Ars& ars);

using ObjectPair = std::pair<std::string, std::string>;

// Extensional projection of the steps; parallel steps collapse to one pair.
std::set<ObjectPair> induced_relation(const Ars& ars);

// All steps from a to b with their identities. Throws UnknownObject.
std::vector<ArsStep> steps_between(const Ars& ars, const std::string& a,
                                   const std::string& b);

// Materializes one rewrite rule lhs -> rhs over all terms of node count
// <= universe_bound. One step per (term, redex position, match); the step id
// records the position, so distinct redexes with equal endpoints stay apart.
// Steps whose target falls outside the universe are omitted. Throws
// IllFormedRule if rhs mentions meta-variables absent from lhs.
Ars trs_step_expansion(const Signature& sig, const Scheme& lhs, const Scheme& rhs,
                       std::size_t universe_bound);

// Objects reachable from a in at most max_steps steps; contains a.
std::set<std::string> reachable(const Ars& ars, const std::string& a,
                                std::size_t max_steps);

}  // namespace proofkit
