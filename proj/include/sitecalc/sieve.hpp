#ifndef SITECALC_SIEVE_HPP
#define SITECALC_SIEVE_HPP

#include <vector>

#include "sitecalc/bitset.hpp"
#include "sitecalc/fincat.hpp"

namespace sitecalc {

// A set of morphisms sharing a target. The base category is passed alongside
// wherever it is needed.
struct Presieve {
  ObjId target = kNoObj;
  MorSet members;

  bool operator==(const Presieve&) const = default;
};

// A presieve closed under precomposition with arbitrary morphisms. Produced
// only by the sieve-forming operations below; emptiness is allowed.
struct Sieve {
  ObjId target = kNoObj;
  MorSet members;

  bool operator==(const Sieve&) const = default;
  auto operator<=>(const Sieve& o) const {
    if (auto c = target <=> o.target; c != 0) return c;
    return members <=> o.members;
  }
};

Presieve make_presieve(const FinCat& c, ObjId target,
                       const std::vector<MorId>& members);

bool is_sieve_closed(const FinCat& c, ObjId target, const MorSet& members);

// All morphisms factoring through f, i.e. the sieve generated by {f}.
MorSet principal_sieve(const FinCat& c, MorId f);

// Least sieve containing p: everything that factors through a member.
Sieve generate(const FinCat& c, const Presieve& p);

Sieve top_sieve(const FinCat& c, ObjId x);

// { g with cod X : f∘g ∈ s } for f : X -> Y, s a sieve on Y.
Sieve pullback_sieve(const FinCat& c, const Sieve& s, MorId f);

Sieve intersect(const Sieve& a, const Sieve& b);

// All distinct sieves on x, canonically ordered. Computed as closures of
// subsets of the non-identity morphisms into x, plus the top sieve; a sieve
// containing the identity is already top.
std::vector<Sieve> enumerate_sieves(const FinCat& c, ObjId x,
                                    const Limits& lim = {});

// { f : Y -> F(X) in the target : f factors through F(g) for some g in s }.
Sieve pushforward_sieve(const FinCat& src, const FinCat& dst, const FinFunctor& f,
                        const Sieve& s);

// { g with cod X : F(g) in s } for s a sieve on F(X).
Sieve functor_pullback_sieve(const FinCat& src, const FinCat& dst,
                             const FinFunctor& f, const Sieve& s, ObjId x);

// Morphisms into y that factor through an object in the image of F.
Sieve image_sieve(const FinCat& src, const FinCat& dst, const FinFunctor& f,
                  ObjId y);

}  // namespace sitecalc

#endif
