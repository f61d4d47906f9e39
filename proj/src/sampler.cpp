#include "proofkit/sampler.hpp"

#include <array>

namespace proofkit {

namespace {

constexpr std::array<const char*, 3> kConstPool = {"a", "b", "c"};
constexpr std::array<const char*, 2> kUnaryPool = {"f", "g"};
constexpr std::array<const char*, 6> kExtraConstPool = {"d", "e", "k", "m", "n", "p"};

Term pick_term(Rng& rng, const std::vector<Term>& universe) {
  return universe[rng.below(universe.size())];
}

std::vector<Instance> sample_instances(Rng& rng, const std::vector<Term>& universe,
                                       std::size_t count) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t arity = rng.below(3);
    std::vector<Term> prem;
    for (std::size_t j = 0; j < arity; ++j) prem.push_back(pick_term(rng, universe));
    out.push_back(Instance{"i" + std::to_string(i + 1), std::move(prem),
                           pick_term(rng, universe)});
  }
  return out;
}

}  // namespace

SampledSystem sample_system(Rng& rng) {
  std::size_t n_consts = 1 + rng.below(2);
  std::size_t n_unary = rng.below(2);
  std::vector<Symbol> symbols;
  for (std::size_t i = 0; i < n_consts; ++i) symbols.push_back({kConstPool[i], 0});
  for (std::size_t i = 0; i < n_unary; ++i) symbols.push_back({kUnaryPool[i], 1});

  SampledSystem out;
  out.system.signature = Signature(symbols);

  // Largest size bound whose universe stays within eight terms.
  std::size_t bound = 1;
  for (std::size_t k = 1; k <= 8; ++k) {
    if (enumerate_terms(out.system.signature, k).size() > 8) break;
    bound = k;
  }
  out.universe = enumerate_terms(out.system.signature, bound);
  out.budget = Budget{10, bound, 200000};

  std::size_t n_axioms = rng.below(4);
  for (std::size_t i = 0; i < n_axioms; ++i)
    out.system.axioms.push_back(
        NamedAxiom{Scheme(pick_term(rng, out.universe)), "ax" + std::to_string(i + 1)});
  std::size_t n_rules = rng.below(4);
  for (std::size_t i = 0; i < n_rules; ++i)
    out.system.rules.push_back(
        NamedRule{UnnamedRule::explicit_list(
                      sample_instances(rng, out.universe, 1 + rng.below(4))),
                  "r" + std::to_string(i + 1)});
  return out;
}

UnnamedRule sample_explicit_rule(Rng& rng, const std::vector<Term>& universe) {
  return UnnamedRule::explicit_list(sample_instances(rng, universe, 1 + rng.below(4)));
}

Aphs sample_extension(Rng& rng, const Aphs& s, std::size_t universe_bound) {
  Aphs out = s;
  if (rng.below(3) == 0) {
    for (const char* name : kExtraConstPool) {
      if (!out.signature.contains(name)) {
        std::vector<Symbol> symbols = out.signature.symbols();
        symbols.push_back({name, 0});
        out.signature = Signature(symbols);
        break;
      }
    }
  }
  std::vector<Term> universe = enumerate_terms(out.signature, universe_bound);
  std::size_t n_axioms = rng.below(3);
  for (std::size_t i = 0; i < n_axioms; ++i)
    out.axioms.push_back(NamedAxiom{Scheme(universe[rng.below(universe.size())]),
                                    fresh_name(out, "ext_ax")});
  std::size_t n_rules = rng.below(3);
  for (std::size_t i = 0; i < n_rules; ++i)
    out.rules.push_back(NamedRule{sample_explicit_rule(rng, universe),
                                  fresh_name(out, "ext_r")});
  return out;
}

}  // namespace proofkit
