#pragma once

#include <cstdint>

#include "proofkit/aphs.hpp"

namespace proofkit {

// splitmix64; self-contained so that seeded runs reproduce bit-for-bit
// across standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
};

// A small random system together with the budget that makes its whole term
// universe (at most eight terms) visible to the bounded procedures.
struct SampledSystem {
  Aphs system;
  Budget budget;
  std::vector<Term> universe;
};

SampledSystem sample_system(Rng& rng);

// Explicit rule with up to four instances over the given universe.
UnnamedRule sample_explicit_rule(Rng& rng, const std::vector<Term>& universe);

// Extension by fresh formulas (a new constant), fresh axioms and/or fresh
// explicit rules; never removes or renames anything.
Aphs sample_extension(Rng& rng, const Aphs& s, std::size_t universe_bound);

}  // namespace proofkit
