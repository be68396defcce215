#ifndef SITECALC_SHEAF_HPP
#define SITECALC_SHEAF_HPP

#include <optional>
#include <vector>

#include "sitecalc/limits.hpp"
#include "sitecalc/topology.hpp"

namespace sitecalc {

// An element of F(dom f) for every member f of a presieve; values are indexed
// parallel to the ascending member list of the presieve.
struct FamilyOfElements {
  Presieve presieve;
  std::vector<int> values;
};

bool is_compatible(const FinCat& c, const Presheaf& f, const FamilyOfElements& fam);

// All amalgamations in ascending order.
std::vector<int> amalgamations(const FinCat& c, const Presheaf& f,
                               const FamilyOfElements& fam);

// Every compatible family has exactly one amalgamation. The budget bounds the
// raw mixed-radix family space; the walk itself prunes incompatible prefixes.
bool is_sheaf_for_presieve(const FinCat& c, const Presheaf& f, const Presieve& p,
                           const Budget& budget = budget_from_env());

bool is_sheaf_for_sieve(const FinCat& c, const Presheaf& f, const Sieve& s,
                        const Budget& budget = budget_from_env());

bool is_sheaf_for_topology(const FinCat& c, const Presheaf& f,
                           const GrothTopology& t,
                           const Budget& budget = budget_from_env());

bool is_sheaf_for_coverage(const FinCat& c, const Presheaf& f, const Coverage& cov,
                           const Budget& budget = budget_from_env());

// F(B) -> F(X) paired against F(X) => F(kernel pair apex): F(pi) must be
// injective with image exactly the agreement set of the two projections.
bool equalizer_condition(const FinCat& c, const Presheaf& f, MorId pi,
                         const ConeWitness& kp);

// Equalizer form of the sheaf condition for a presieve whose members have
// pairwise pullbacks; nullopt when some pullback is missing.
std::optional<bool> presieve_equalizer_check(const FinCat& c, const Presheaf& f,
                                             const Presieve& p);

// F(initial) is a singleton and F(X⊔Y) -> F(X) x F(Y) is a bijection for
// every binary coproduct that exists (canonical witnesses). Throws
// NotExtensive when there is no initial object.
bool preserves_finite_products(const FinCat& c, const Presheaf& f);

// All presheaves with carriers bounded by max_carrier, in canonical order
// (carrier tuple, then restriction tables, lexicographic).
std::vector<Presheaf> enumerate_presheaves(const FinCat& c, int max_carrier,
                                           const Budget& budget = budget_from_env());

// Natural isomorphism search over per-object bijections.
bool presheaves_isomorphic(const FinCat& c, const Presheaf& a, const Presheaf& b);

// All sheaves with carriers <= max_carrier, deduplicated up to isomorphism,
// in canonical enumeration order.
std::vector<Presheaf> sheaf_census(const FinCat& c, const GrothTopology& t,
                                   int max_carrier,
                                   const Budget& budget = budget_from_env());

}  // namespace sitecalc

#endif
