#include "sitecalc/transport.hpp"

#include <algorithm>

namespace sitecalc {

Presheaf precompose_presheaf(const FinCat& src, const FinCat& /*dst*/,
                             const FinFunctor& f, const Presheaf& p) {
  Presheaf out;
  out.carrier.resize(src.objects);
  for (ObjId x = 0; x < src.objects; ++x) out.carrier[x] = p.carrier[f.object_map[x]];
  out.restriction.resize(src.n_mor());
  for (MorId m = 0; m < src.n_mor(); ++m)
    out.restriction[m] = p.restriction[f.morphism_map[m]];
  return out;
}

bool is_continuous(const FinCat& src, const FinCat& dst, const SiteMap& m,
                   int max_carrier, const Budget& budget) {
  for (const Presheaf& p : sheaf_census(dst, m.target_topology, max_carrier, budget))
    if (!is_sheaf_for_topology(src, precompose_presheaf(src, dst, m.functor, p),
                               m.source_topology, budget))
      return false;
  return true;
}

bool is_cocontinuous(const FinCat& src, const FinCat& dst, const SiteMap& m) {
  for (ObjId u = 0; u < src.objects; ++u)
    for (const Sieve& s : m.target_topology.covering[m.functor.object_map[u]])
      if (!m.source_topology.covers(
              functor_pullback_sieve(src, dst, m.functor, s, u)))
        return false;
  return true;
}

bool is_cover_dense(const FinCat& src, const FinCat& dst, const FinFunctor& f,
                    const GrothTopology& t_target) {
  for (ObjId y = 0; y < dst.objects; ++y)
    if (!t_target.covers(image_sieve(src, dst, f, y))) return false;
  return true;
}

GrothTopology induced_topology(const FinCat& src, const FinCat& dst,
                               const FinFunctor& f, const GrothTopology& t_target,
                               const Limits& lim) {
  if (!is_fully_faithful(src, dst, f))
    throw PreconditionFailed("induced topology needs a fully faithful functor");
  if (!is_cover_dense(src, dst, f, t_target))
    throw PreconditionFailed("induced topology needs a cover-dense functor");
  GrothTopology t;
  t.covering.resize(src.objects);
  for (ObjId x = 0; x < src.objects; ++x)
    for (const Sieve& s : enumerate_sieves(src, x, lim))
      if (t_target.covers(pushforward_sieve(src, dst, f, s)))
        t.covering[x].push_back(s);
  return t;
}

std::vector<std::string> EquivalenceReport::lines() const {
  auto pf = [](bool b) { return b ? "PASS" : "FAIL"; };
  std::vector<std::string> out;
  out.push_back(std::string(pf(fully_faithful)) + " fully-faithful");
  out.push_back(std::string(pf(target_precoherent)) + " target-precoherent");
  out.push_back(std::string(pf(preserves_families)) + " preserves-effective-families" +
                (preserves_families ? "" : " (" + family_witness + ")"));
  out.push_back(std::string(pf(reflects_families)) + " reflects-effective-families" +
                (reflects_families ? "" : " (" + family_witness + ")"));
  out.push_back(std::string(pf(enough_covers)) + " image-covers-target" +
                (enough_covers ? "" : " (" + cover_witness + ")"));
  out.push_back(std::string(pf(source_precoherent)) + " source-precoherent");
  return out;
}

EquivalenceReport check_equivalence_conditions(const FinCat& src, const FinCat& dst,
                                               const FinFunctor& f,
                                               const Limits& lim) {
  EquivalenceReport r;
  r.fully_faithful = is_fully_faithful(src, dst, f);
  EpiTables src_tables(src);
  EpiTables dst_tables(dst);
  r.target_precoherent = is_precoherent(dst, dst_tables, lim).holds;

  for (ObjId b = 0; b < src.objects && r.preserves_families && r.reflects_families;
       ++b) {
    const auto& into = src.into(b);
    const auto& table = src_tables.effective_family_table(b, lim);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
      Presieve image{f.object_map[b], MorSet(dst.n_mor())};
      for (std::size_t i = 0; i < into.size(); ++i)
        if (mask >> i & 1) image.members.set(f.morphism_map[into[i]]);
      bool src_eff = table[mask];
      bool dst_eff = is_effective_epi_family(dst, image);
      if (src_eff && !dst_eff) {
        r.preserves_families = false;
        r.family_witness = "mask " + std::to_string(mask) + " on " +
                           src.object_name(b);
        break;
      }
      if (!src_eff && dst_eff) {
        r.reflects_families = false;
        r.family_witness = "mask " + std::to_string(mask) + " on " +
                           src.object_name(b);
        break;
      }
    }
  }

  std::vector<bool> in_image(dst.objects, false);
  for (ObjId x : f.object_map) in_image[x] = true;
  for (ObjId y = 0; y < dst.objects; ++y) {
    bool found = false;
    for (MorId e : dst.into(y))
      if (in_image[dst.dom(e)] && dst_tables.effective_epi(e)) {
        found = true;
        break;
      }
    if (!found) {
      r.enough_covers = false;
      r.cover_witness = "object " + dst.object_name(y);
      break;
    }
  }

  r.source_precoherent = is_precoherent(src, src_tables, lim).holds;
  return r;
}

std::vector<std::string> SheafEquivalenceReport::lines() const {
  auto pf = [](bool b) { return b ? "PASS" : "FAIL"; };
  std::vector<std::string> out;
  out.push_back("INFO source-census " + std::to_string(source_census));
  out.push_back("INFO target-census " + std::to_string(target_census));
  out.push_back(std::string(pf(induced_matches_coherent)) +
                " induced-topology-is-coherent");
  out.push_back(std::string(pf(continuous)) + " continuous");
  out.push_back(std::string(pf(cocontinuous)) + " cocontinuous");
  out.push_back(std::string(pf(precompose_lands_in_sheaves)) +
                " precomposition-preserves-sheaves");
  out.push_back(std::string(pf(injective && surjective &&
                               source_census == target_census)) +
                " iso-class-bijection");
  return out;
}

SheafEquivalenceReport verify_sheaf_equivalence(const FinCat& src,
                                                const FinCat& dst,
                                                const FinFunctor& f,
                                                int max_carrier, const Limits& lim,
                                                const Budget& budget) {
  if (!check_equivalence_conditions(src, dst, f, lim).ok())
    throw PreconditionFailed("equivalence conditions do not hold for the functor");

  SheafEquivalenceReport r;
  EpiTables src_tables(src);
  EpiTables dst_tables(dst);
  GrothTopology src_coherent = saturate(src, coherent_coverage(src, src_tables, lim), lim);
  GrothTopology dst_coherent = saturate(dst, coherent_coverage(dst, dst_tables, lim), lim);

  GrothTopology induced = induced_topology(src, dst, f, dst_coherent, lim);
  r.induced_matches_coherent = induced == src_coherent;

  SiteMap site{f, src_coherent, dst_coherent};
  r.continuous = is_continuous(src, dst, site, max_carrier, budget);
  r.cocontinuous = is_cocontinuous(src, dst, site);

  std::vector<Presheaf> src_census = sheaf_census(src, src_coherent, max_carrier, budget);
  std::vector<Presheaf> dst_census = sheaf_census(dst, dst_coherent, max_carrier, budget);
  r.source_census = src_census.size();
  r.target_census = dst_census.size();

  r.matching.assign(dst_census.size(), -1);
  std::vector<int> hits(src_census.size(), 0);
  for (std::size_t i = 0; i < dst_census.size(); ++i) {
    Presheaf pre = precompose_presheaf(src, dst, f, dst_census[i]);
    if (!is_sheaf_for_topology(src, pre, src_coherent, budget)) {
      r.precompose_lands_in_sheaves = false;
      continue;
    }
    for (std::size_t j = 0; j < src_census.size(); ++j)
      if (presheaves_isomorphic(src, pre, src_census[j])) {
        r.matching[i] = static_cast<int>(j);
        ++hits[j];
        break;
      }
  }
  for (std::size_t i = 0; i < dst_census.size(); ++i)
    if (r.matching[i] < 0) r.injective = false;  // unmatched precomposition
  for (int h : hits) {
    if (h == 0) r.surjective = false;
    if (h > 1) r.injective = false;
  }
  return r;
}

}  // namespace sitecalc
