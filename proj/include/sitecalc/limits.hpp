#ifndef SITECALC_LIMITS_HPP
#define SITECALC_LIMITS_HPP

#include <map>
#include <optional>
#include <vector>

#include "sitecalc/fincat.hpp"
#include "sitecalc/sieve.hpp"

namespace sitecalc {

enum class ConeShape { Initial, BinaryCoproduct, Pullback, Coequalizer, KernelPair };

// A competing (co)cone together with the unique mediating morphism found for
// it; kept so that universal-property failures stay replayable.
struct MediatedCone {
  std::vector<MorId> legs;
  MorId mediator = kNoMor;
};

struct ConeWitness {
  ConeShape shape = ConeShape::Initial;
  ObjId apex = kNoObj;
  std::vector<MorId> legs;
  std::vector<int> shape_data;  // morphism ids (or object ids for coproducts)
  std::vector<MediatedCone> competitors;
};

struct EpiClass {
  MorId f = kNoMor;
  bool is_epi = false;
  bool is_regular_epi = false;
  bool is_effective_epi = false;
  bool has_kernel_pair = false;
  std::optional<ConeWitness> kernel_pair;
};

bool is_epi(const FinCat& c, MorId f);

// Strict quotient universal property: every e out of dom(f) that coequalizes
// whatever f coequalizes factors uniquely through f. No kernel pair assumed.
bool is_effective_epi(const FinCat& c, MorId f);

// f exhibits its codomain as a coequalizer of some parallel pair.
bool is_regular_epi(const FinCat& c, MorId f);

std::optional<ObjId> find_initial(const FinCat& c);
std::optional<ConeWitness> find_binary_coproduct(const FinCat& c, ObjId x, ObjId y);
std::optional<ConeWitness> find_pullback(const FinCat& c, MorId f, MorId g);
std::optional<ConeWitness> find_coequalizer(const FinCat& c, MorId g1, MorId g2);
std::optional<ConeWitness> kernel_pair(const FinCat& c, MorId f);

EpiClass classify_epi(const FinCat& c, MorId f);
std::vector<EpiClass> classify_epis(const FinCat& c);

// Joint universal property of a family, with the family given as a presieve.
// The empty family is admitted: it is effective exactly when the target
// admits a unique morphism to every object.
bool is_effective_epi_family(const FinCat& c, const Presieve& fam);

// Same predicate through the representable route: the family is effective
// exactly when every h_w is a sheaf for the sieve it generates. Kept as an
// independent algorithm and cross-checked against the direct one.
bool effective_family_via_sheaf(const FinCat& c, const Presieve& fam);

// Lifting property: every morphism out of p lifts along every epimorphism.
bool is_projective(const FinCat& c, ObjId p);

// Per-category derived tables for the hot analysis paths. Pure function of
// the category; build once and share.
class EpiTables {
 public:
  explicit EpiTables(const FinCat& c);

  bool epi(MorId f) const { return epi_[f]; }
  bool effective_epi(MorId f) const { return effective_[f]; }
  const std::vector<MorId>& effective_epis_into(ObjId x) const {
    return eff_into_[x];
  }
  bool factors_through(MorId p, MorId h) const {
    return principal_[h].test(p);
  }
  const MorSet& principal(MorId h) const { return principal_[h]; }

  // Masks over c.into(x) positions; one flag per subset. Cap-guarded.
  const std::vector<char>& effective_family_table(ObjId x, const Limits& lim = {});
  // Effective presieves on x as morphism sets, canonically ordered.
  const std::vector<MorSet>& effective_presieves(ObjId x, const Limits& lim = {});

  const FinCat& cat() const { return c_; }

 private:
  const FinCat& c_;
  std::vector<char> epi_;
  std::vector<char> effective_;
  std::vector<std::vector<MorId>> eff_into_;
  std::vector<MorSet> principal_;
  std::map<ObjId, std::vector<char>> family_table_;
  std::map<ObjId, std::vector<MorSet>> family_sets_;
};

}  // namespace sitecalc

#endif
