#ifndef SITECALC_TOPOLOGY_HPP
#define SITECALC_TOPOLOGY_HPP

#include <optional>
#include <string>
#include <vector>

#include "sitecalc/limits.hpp"
#include "sitecalc/sieve.hpp"

namespace sitecalc {

// Covering presieves per object, canonically ordered.
struct Coverage {
  std::vector<std::vector<Presieve>> covering;

  bool operator==(const Coverage&) const = default;
};

// Covering sieves per object, canonically ordered.
struct GrothTopology {
  std::vector<std::vector<Sieve>> covering;

  bool covers(const Sieve& s) const;
  bool operator==(const GrothTopology&) const = default;
};

struct PredicateResult {
  bool holds = false;
  std::string counterexample;  // first witness in canonical order when false
  explicit operator bool() const { return holds; }
};

// The weak pullback-compatibility axiom of a coverage: reports every (f, S)
// pair with no witnessing presieve T.
ValidationReport check_coverage(const FinCat& c, const Coverage& cov);

// Least fixed point over the per-object sieve lattice: seed with the top
// sieve and the generated sieves of covering presieves, then close under the
// transitivity clause until stable. The result is checked nowhere here;
// check_topology asserts the axioms post hoc.
GrothTopology saturate(const FinCat& c, const Coverage& cov,
                       const Limits& lim = {});

ValidationReport check_topology(const FinCat& c, const GrothTopology& t,
                                const Limits& lim = {});

GrothTopology minimal_topology(const FinCat& c, const Limits& lim = {});

PredicateResult is_preregular(const FinCat& c, EpiTables& tables);
PredicateResult is_finitary_extensive(const FinCat& c);
PredicateResult is_precoherent(const FinCat& c, EpiTables& tables,
                               const Limits& lim = {});

// The family exhibits x as the coproduct of its members' domains: the induced
// map Hom(x, w) -> prod_i Hom(dom f_i, w) is a bijection for every w.
bool exhibits_as_coproduct(const FinCat& c, ObjId x, const std::vector<MorId>& fam);

// Singleton presieves of effective epimorphisms. Requires preregularity.
Coverage regular_coverage(const FinCat& c, EpiTables& tables);

// Presieves exhibiting their target as a coproduct (the empty family on an
// initial object included). Gated on the coverage axiom itself rather than on
// is_finitary_extensive: the collection can satisfy the axiom on categories
// that are missing some coproducts.
Coverage extensive_coverage(const FinCat& c, const Limits& lim = {});

// All finite effective epimorphic presieves. Requires precoherence.
Coverage coherent_coverage(const FinCat& c, EpiTables& tables,
                           const Limits& lim = {});

// Direct characterizations of the covering sieves, independent of saturate.
std::vector<Sieve> regular_covering_sieves(const FinCat& c, EpiTables& tables,
                                           ObjId x, const Limits& lim = {});
std::vector<Sieve> extensive_covering_sieves(const FinCat& c, ObjId x,
                                             const Limits& lim = {});
std::vector<Sieve> coherent_covering_sieves(const FinCat& c, EpiTables& tables,
                                            ObjId x, const Limits& lim = {});

Coverage union_coverage(const Coverage& a, const Coverage& b);
GrothTopology generated_by_union(const FinCat& c, const Coverage& a,
                                 const Coverage& b, const Limits& lim = {});

bool topology_subset(const GrothTopology& a, const GrothTopology& b);

}  // namespace sitecalc

#endif
