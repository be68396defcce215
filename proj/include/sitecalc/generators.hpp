#ifndef SITECALC_GENERATORS_HPP
#define SITECALC_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "sitecalc/fincat.hpp"

namespace sitecalc {

// Skeleton of finite sets: objects are cardinalities 0..n, morphisms all
// functions encoded as digit strings, composition is function composition.
// maps[f] lists image positions, one entry per element of the domain.
struct FinSetCategory {
  FinCat cat;
  std::vector<int> card;
  std::vector<std::vector<std::uint8_t>> maps;
};

FinSetCategory gen_finset_skeleton(int n, const Limits& lim = {});

// Full subcategory of finite sets on explicitly chosen sets. maps are
// positional (indices into the sorted element lists).
struct FinSetFamilyCategory {
  FinCat cat;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<std::uint8_t>> maps;
};

FinSetFamilyCategory gen_finset_family(const std::vector<std::vector<int>>& sets,
                                       const Limits& lim = {});

// All topologies on point sets of size <= n, with continuous maps. Opens are
// point bitmasks; spaces are listed raw, not up to homeomorphism.
struct Space {
  int points = 0;
  std::vector<std::uint32_t> opens;  // sorted, contains 0 and the full mask

  bool is_open(std::uint32_t u) const;
};

struct FinTopCategory {
  FinCat cat;
  std::vector<Space> spaces;
  std::vector<std::vector<std::uint8_t>> maps;
};

FinTopCategory gen_fintop(int n, const Limits& lim = {});

// Thin category of a partial order; leq must be reflexive, antisymmetric and
// transitive, otherwise ValidationError.
FinCat gen_poset(const std::vector<std::vector<bool>>& leq);

// One-object category of a monoid given by its multiplication table
// (mul[g][f] = g∘f); ValidationError when there is no unit or associativity
// fails.
FinCat gen_monoid(const std::vector<std::vector<int>>& mul);

FinCat walking_arrow();

// Surjectivity oracles straight from the encodings, independent of the
// categorical predicates they are checked against.
bool map_surjective(const FinSetCategory& c, MorId f);
bool map_surjective(const FinSetFamilyCategory& c, MorId f);
bool map_surjective(const FinTopCategory& c, MorId f);

// Quotient map: surjective and the codomain topology equals the final
// topology induced by the map.
bool is_quotient_map(const FinTopCategory& c, MorId f);

// The inclusion sending cardinality k to the first family object of size k;
// throws ValidationError when some cardinality is missing.
FinFunctor skeleton_inclusion(const FinSetCategory& skel,
                              const FinSetFamilyCategory& full);

// Deterministic corpus helpers for the property suites.
FinCat random_poset(std::mt19937_64& rng, int n);
std::vector<FinCat> all_monoids(int size);

}  // namespace sitecalc

#endif
