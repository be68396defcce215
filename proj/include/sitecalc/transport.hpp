#ifndef SITECALC_TRANSPORT_HPP
#define SITECALC_TRANSPORT_HPP

#include <string>
#include <vector>

#include "sitecalc/sheaf.hpp"
#include "sitecalc/topology.hpp"

namespace sitecalc {

struct SiteMap {
  FinFunctor functor;
  GrothTopology source_topology;
  GrothTopology target_topology;
};

// Value of the precomposed presheaf: carrier at x is p's carrier at F(x).
Presheaf precompose_presheaf(const FinCat& src, const FinCat& dst,
                             const FinFunctor& f, const Presheaf& p);

// Every target sheaf within the census bound precomposes to a source sheaf.
bool is_continuous(const FinCat& src, const FinCat& dst, const SiteMap& m,
                   int max_carrier = 2, const Budget& budget = budget_from_env());

// Functor-pullbacks of target covering sieves on images are source covering.
bool is_cocontinuous(const FinCat& src, const FinCat& dst, const SiteMap& m);

// The image sieve of every target object is covering. No source topology is
// involved.
bool is_cover_dense(const FinCat& src, const FinCat& dst, const FinFunctor& f,
                    const GrothTopology& t_target);

// Sieves whose pushforward is target covering. Requires a fully faithful,
// cover-dense functor.
GrothTopology induced_topology(const FinCat& src, const FinCat& dst,
                               const FinFunctor& f, const GrothTopology& t_target,
                               const Limits& lim = {});

struct EquivalenceReport {
  bool fully_faithful = false;
  bool target_precoherent = false;
  bool preserves_families = true;   // source-effective families map to effective
  bool reflects_families = true;    // and conversely
  std::string family_witness;
  bool enough_covers = true;        // every target object admits an effective epi
  std::string cover_witness;        //   from an image object
  bool source_precoherent = false;  // re-derived conclusion

  bool ok() const {
    return fully_faithful && target_precoherent && preserves_families &&
           reflects_families && enough_covers && source_precoherent;
  }
  std::vector<std::string> lines() const;
};

EquivalenceReport check_equivalence_conditions(const FinCat& src, const FinCat& dst,
                                               const FinFunctor& f,
                                               const Limits& lim = {});

struct SheafEquivalenceReport {
  std::size_t source_census = 0;
  std::size_t target_census = 0;
  bool induced_matches_coherent = false;
  bool continuous = false;
  bool cocontinuous = false;
  bool precompose_lands_in_sheaves = true;
  bool injective = true;
  bool surjective = true;
  std::vector<int> matching;  // target class index -> source class index

  bool ok() const {
    return induced_matches_coherent && continuous && cocontinuous &&
           precompose_lands_in_sheaves && injective && surjective &&
           source_census == target_census;
  }
  std::vector<std::string> lines() const;
};

// Census comparison across the functor with the coherent topologies on both
// sides; the equivalence conditions are the precondition gate.
SheafEquivalenceReport verify_sheaf_equivalence(
    const FinCat& src, const FinCat& dst, const FinFunctor& f, int max_carrier,
    const Limits& lim = {}, const Budget& budget = budget_from_env());

}  // namespace sitecalc

#endif
