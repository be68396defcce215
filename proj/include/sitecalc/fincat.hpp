#ifndef SITECALC_FINCAT_HPP
#define SITECALC_FINCAT_HPP

#include <string>
#include <vector>

#include "sitecalc/types.hpp"

namespace sitecalc {

struct Mor {
  ObjId dom = kNoObj;
  ObjId cod = kNoObj;
};

// A finite category as an explicit composition table. Morphisms live in one
// global id space; hom-sets are derived views. Instances are immutable after
// finalize() and safe to share across threads.
struct FinCat {
  int objects = 0;
  std::vector<Mor> mor;
  std::vector<MorId> identity;  // per object
  std::vector<MorId> comp;      // flat [g * n_mor + f], kNoMor when undefined
  std::vector<std::string> object_names;    // optional display names
  std::vector<std::string> morphism_names;  // optional display names

  int n_mor() const { return static_cast<int>(mor.size()); }
  ObjId dom(MorId f) const { return mor[f].dom; }
  ObjId cod(MorId f) const { return mor[f].cod; }
  MorId id_of(ObjId x) const { return identity[x]; }
  MorId compose(MorId g, MorId f) const {
    return comp[static_cast<std::size_t>(g) * mor.size() + f];
  }
  bool composable(MorId g, MorId f) const { return cod(f) == dom(g); }
  bool is_identity(MorId f) const { return identity[dom(f)] == f && dom(f) == cod(f); }

  const std::vector<MorId>& into(ObjId x) const { return into_[x]; }
  const std::vector<MorId>& out_of(ObjId x) const { return from_[x]; }
  const std::vector<MorId>& hom(ObjId x, ObjId y) const {
    return hom_[static_cast<std::size_t>(x) * objects + y];
  }

  std::string object_name(ObjId x) const;
  std::string morphism_name(MorId f) const;

  // Range-checks the raw tables, enforces caps, and builds the hom indexes.
  // Throws MalformedTable / CapExceeded. Does not check the category axioms;
  // that is validate_category's job.
  void finalize(const Limits& lim = {});

  bool finalized() const { return !hom_.empty() || objects == 0; }

  // Structural comparison: tables only, names ignored.
  bool structurally_equal(const FinCat& o) const;

 private:
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> from_;
  std::vector<std::vector<MorId>> hom_;
};

// A functor between finite categories; source/target are passed alongside.
struct FinFunctor {
  std::vector<ObjId> object_map;
  std::vector<MorId> morphism_map;
};

FinFunctor identity_functor(const FinCat& c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

// A finite-set-valued presheaf on a finite category. carrier[x] is the size
// of the value at x (elements 0..size-1); restriction[f] maps carrier(cod f)
// indices to carrier(dom f) indices.
struct Presheaf {
  std::vector<int> carrier;
  std::vector<std::vector<int>> restriction;

  bool operator==(const Presheaf&) const = default;
};

struct Violation {
  std::string law;
  std::vector<int> ids;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Reports every violated axiom instance, not just the first.
ValidationReport validate_category(const FinCat& c);
ValidationReport validate_functor(const FinCat& src, const FinCat& dst,
                                  const FinFunctor& f);
ValidationReport validate_presheaf(const FinCat& c, const Presheaf& p);

bool is_fully_faithful(const FinCat& src, const FinCat& dst, const FinFunctor& f);

// h_w(x) = Hom(x, w) with carriers enumerated in ascending morphism-id order;
// restriction along f is precomposition with f.
Presheaf representable(const FinCat& c, ObjId w);

// Index of f within hom(dom f, cod f); the carrier index used by representable.
int hom_rank(const FinCat& c, MorId f);

}  // namespace sitecalc

#endif
