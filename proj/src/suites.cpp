#include "sitecalc/suites.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <sstream>

#include "sitecalc/format.hpp"

namespace sitecalc {

std::optional<FinSetCategory> detect_finset_skeleton(const FinCat& c,
                                                     const Limits& lim) {
  if (c.objects < 1 || c.objects > 8) return std::nullopt;
  try {
    FinSetCategory twin = gen_finset_skeleton(c.objects - 1, lim);
    if (twin.cat.structurally_equal(c)) return twin;
  } catch (const CapExceeded&) {
  }
  return std::nullopt;
}

std::optional<FinTopCategory> detect_fintop(const FinCat& c, const Limits& lim) {
  for (int n = 0; n <= 3; ++n) {
    try {
      FinTopCategory twin = gen_fintop(n, lim);
      if (twin.cat.objects != c.objects) continue;
      if (twin.cat.structurally_equal(c)) return twin;
    } catch (const CapExceeded&) {
      break;
    }
  }
  return std::nullopt;
}

namespace {

// Read-only context shared by all suites; everything expensive is built once,
// before any parallel evaluation starts.
struct Ctx {
  Ctx(const FinCat& c, const Limits& l, const Budget& b)
      : cat(c), lim(l), budget(b) {}

  const FinCat& cat;
  Limits lim;
  Budget budget;

  std::optional<FinSetCategory> finset;
  std::optional<FinTopCategory> fintop;

  std::unique_ptr<EpiTables> tables;
  std::vector<EpiClass> epi_classes;
  bool family_tables_ok = false;

  std::optional<Coverage> reg_cov, ext_cov, coh_cov;
  std::string reg_gate, ext_gate, coh_gate;
  std::optional<GrothTopology> reg_top, ext_top, coh_top, min_top;

  std::vector<Presheaf> small_presheaves;  // carriers <= 2
  bool presheaves_ok = false;

  bool all_projective = false;
  PredicateResult preregular, extensive;
};

std::uint64_t fan_in_subsets(const FinCat& c) {
  std::uint64_t total = 0;
  for (ObjId x = 0; x < c.objects; ++x) {
    if (c.into(x).size() > 20) return ~std::uint64_t{0};
    total += std::uint64_t{1} << c.into(x).size();
  }
  return total;
}

std::unique_ptr<Ctx> build_context(const FinCat& c, const Limits& lim,
                                   const Budget& budget) {
  auto ctx = std::make_unique<Ctx>(c, lim, budget);
  ctx->finset = detect_finset_skeleton(c, lim);
  ctx->fintop = detect_fintop(c, lim);
  ctx->tables = std::make_unique<EpiTables>(c);
  ctx->epi_classes = classify_epis(c);

  if (fan_in_subsets(c) <= (1u << 15)) {
    bool ok = true;
    try {
      for (ObjId x = 0; x < c.objects; ++x)
        ctx->tables->effective_family_table(x, lim);
    } catch (const CapExceeded&) {
      ok = false;
    }
    ctx->family_tables_ok = ok;
  }

  ctx->preregular = is_preregular(c, *ctx->tables);
  ctx->extensive = is_finitary_extensive(c);

  if (ctx->preregular.holds) {
    ctx->reg_cov = regular_coverage(c, *ctx->tables);
  } else {
    ctx->reg_gate = "category is not preregular";
  }
  try {
    ctx->ext_cov = extensive_coverage(c, lim);
  } catch (const std::exception& e) {
    ctx->ext_gate = e.what();
  }
  if (ctx->family_tables_ok) {
    try {
      ctx->coh_cov = coherent_coverage(c, *ctx->tables, lim);
    } catch (const std::exception& e) {
      ctx->coh_gate = e.what();
    }
  } else {
    ctx->coh_gate = "family enumeration over the fan-in cap";
  }

  bool sieves_ok = true;
  for (ObjId x = 0; x < c.objects; ++x) {
    int non_id = 0;
    for (MorId f : c.into(x))
      if (!c.is_identity(f)) ++non_id;
    if (non_id > lim.max_fan_in) sieves_ok = false;
  }
  if (sieves_ok) {
    ctx->min_top = minimal_topology(c, lim);
    if (ctx->reg_cov) ctx->reg_top = saturate(c, *ctx->reg_cov, lim);
    if (ctx->ext_cov) ctx->ext_top = saturate(c, *ctx->ext_cov, lim);
    if (ctx->coh_cov) ctx->coh_top = saturate(c, *ctx->coh_cov, lim);
  }

  try {
    ctx->small_presheaves = enumerate_presheaves(c, 2, budget);
    ctx->presheaves_ok = ctx->small_presheaves.size() <= 20000;
    if (!ctx->presheaves_ok) ctx->small_presheaves.clear();
  } catch (const BudgetExceeded&) {
    ctx->presheaves_ok = false;
  }

  ctx->all_projective = true;
  for (ObjId x = 0; x < c.objects && ctx->all_projective; ++x)
    if (!is_projective(c, x)) ctx->all_projective = false;
  return ctx;
}

SuiteResult pass(std::string id, std::string detail = "") {
  return {std::move(id), SuiteResult::Status::Pass, std::move(detail)};
}
SuiteResult fail(std::string id, std::string detail) {
  return {std::move(id), SuiteResult::Status::Fail, std::move(detail)};
}
SuiteResult skip(std::string id, std::string reason) {
  return {std::move(id), SuiteResult::Status::Skip, std::move(reason)};
}

std::mt19937_64 suite_rng(const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : id) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
  return std::mt19937_64(h);
}

// ---- individual suites ----------------------------------------------------

SuiteResult suite_effective_epi_flags(const Ctx& ctx) {
  const std::string id = "effective-epi-flags";
  const FinCat& c = ctx.cat;
  for (const EpiClass& e : ctx.epi_classes) {
    if (e.is_effective_epi && !e.is_epi)
      return fail(id, "effective but not epi: " + c.morphism_name(e.f));
    if (e.is_regular_epi && !e.is_effective_epi)
      return fail(id, "regular but not effective: " + c.morphism_name(e.f));
    if (e.is_effective_epi && e.has_kernel_pair && !e.is_regular_epi)
      return fail(id, "effective with kernel pair but not regular: " +
                          c.morphism_name(e.f));
    MorSet single(c.n_mor());
    single.set(e.f);
    if (is_effective_epi_family(c, {c.cod(e.f), single}) != e.is_effective_epi)
      return fail(id, "singleton family disagrees with the morphism predicate: " +
                          c.morphism_name(e.f));
  }
  return pass(id, std::to_string(ctx.epi_classes.size()) + " morphisms");
}

SuiteResult suite_finset_epi_surjectivity(const Ctx& ctx) {
  const std::string id = "finset-epi-surjectivity";
  if (!ctx.finset) return skip(id, "not a finite-set skeleton");
  const FinSetCategory& fs = *ctx.finset;
  for (const EpiClass& e : ctx.epi_classes) {
    bool surj = map_surjective(fs, e.f);
    if (e.is_effective_epi != surj)
      return fail(id, "effective != surjective at " + ctx.cat.morphism_name(e.f));
    if (fs.cat.objects >= 3 && e.is_epi != surj)
      return fail(id, "epi != surjective at " + ctx.cat.morphism_name(e.f));
  }
  return pass(id);
}

SuiteResult suite_fintop_epi_quotient(const Ctx& ctx) {
  const std::string id = "fintop-epi-quotient";
  if (!ctx.fintop) return skip(id, "not a finite-space category");
  const FinTopCategory& ft = *ctx.fintop;
  // Separating epis from non-surjections needs the two-point indiscrete
  // space; without it the empty-domain maps are vacuously epi.
  bool has_two_points = false;
  for (const Space& s : ft.spaces)
    if (s.points >= 2) has_two_points = true;
  for (const EpiClass& e : ctx.epi_classes) {
    if (has_two_points && e.is_epi != map_surjective(ft, e.f))
      return fail(id, "epi != surjective at " + ctx.cat.morphism_name(e.f));
    if (e.is_effective_epi != is_quotient_map(ft, e.f))
      return fail(id, "effective != quotient at " + ctx.cat.morphism_name(e.f));
  }
  return pass(id);
}

SuiteResult suite_family_routes(const Ctx& ctx) {
  const std::string id = "family-routes-agree";
  if (!ctx.family_tables_ok) return skip(id, "family enumeration over cap");
  const FinCat& c = ctx.cat;
  int checked = 0;
  for (ObjId x = 0; x < c.objects; ++x) {
    const auto& into = c.into(x);
    const auto& table = ctx.tables->effective_family_table(x, ctx.lim);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
      Presieve p{x, MorSet(c.n_mor())};
      for (std::size_t i = 0; i < into.size(); ++i)
        if (mask >> i & 1) p.members.set(into[i]);
      if (effective_family_via_sheaf(c, p) != static_cast<bool>(table[mask]))
        return fail(id, "routes disagree on mask " + std::to_string(mask) + " at " +
                            c.object_name(x));
      ++checked;
    }
  }
  return pass(id, std::to_string(checked) + " presieves");
}

SuiteResult suite_coproduct_induced_map(const Ctx& ctx) {
  const std::string id = "coproduct-induced-map";
  if (!ctx.family_tables_ok) return skip(id, "family enumeration over cap");
  if (ctx.cat.n_mor() > 150) return skip(id, "category too large");
  const FinCat& c = ctx.cat;
  int checked = 0;
  for (ObjId b = 0; b < c.objects; ++b) {
    const auto& into = c.into(b);
    for (std::size_t i = 0; i < into.size(); ++i)
      for (std::size_t j = i + 1; j < into.size(); ++j) {
        MorId f1 = into[i], f2 = into[j];
        auto cop = find_binary_coproduct(c, c.dom(f1), c.dom(f2));
        if (!cop) continue;
        // Induced map out of the coproduct.
        MorId induced = kNoMor;
        for (MorId d : c.hom(cop->apex, b))
          if (c.compose(d, cop->legs[0]) == f1 && c.compose(d, cop->legs[1]) == f2) {
            induced = d;
            break;
          }
        if (induced == kNoMor) continue;
        MorSet mem(c.n_mor());
        mem.set(f1);
        mem.set(f2);
        bool fam_eff = is_effective_epi_family(c, {b, mem});
        bool map_eff = is_effective_epi(c, induced);
        if (fam_eff && !map_eff)
          return fail(id, "effective family with non-effective coproduct map at " +
                              c.object_name(b));
        if (!fam_eff && map_eff) {
          // The converse needs the epimorphism hypothesis on the comparison
          // maps; verify it before flagging.
          bool hyp = true;
          for (ObjId z = 0; z < c.objects && hyp; ++z)
            for (MorId g : c.hom(z, cop->apex)) {
              auto p1 = find_pullback(c, g, cop->legs[0]);
              auto p2 = find_pullback(c, g, cop->legs[1]);
              if (!p1 || !p2) {
                hyp = false;
                break;
              }
              auto q = find_binary_coproduct(c, p1->apex, p2->apex);
              if (!q) {
                hyp = false;
                break;
              }
              MorId cmp = kNoMor;
              for (MorId d : c.hom(q->apex, z))
                if (c.compose(d, q->legs[0]) == p1->legs[0] &&
                    c.compose(d, q->legs[1]) == p2->legs[0]) {
                  cmp = d;
                  break;
                }
              if (cmp == kNoMor || !is_epi(c, cmp)) {
                hyp = false;
                break;
              }
            }
          if (hyp)
            return fail(id, "non-effective family with effective coproduct map at " +
                                c.object_name(b));
        }
        ++checked;
      }
  }
  return pass(id, std::to_string(checked) + " families");
}

SuiteResult suite_saturation_direct(const Ctx& ctx) {
  const std::string id = "saturation-direct-agreement";
  const FinCat& c = ctx.cat;
  if (!ctx.min_top) return skip(id, "sieve enumeration over cap");
  int legs = 0;
  if (ctx.reg_top) {
    ++legs;
    for (ObjId x = 0; x < c.objects; ++x)
      if (regular_covering_sieves(c, *ctx.tables, x, ctx.lim) !=
          ctx.reg_top->covering[x])
        return fail(id, "regular sieves disagree at " + c.object_name(x));
  }
  if (ctx.ext_top) {
    ++legs;
    for (ObjId x = 0; x < c.objects; ++x)
      if (extensive_covering_sieves(c, x, ctx.lim) != ctx.ext_top->covering[x])
        return fail(id, "coproduct sieves disagree at " + c.object_name(x));
  }
  if (ctx.coh_top) {
    ++legs;
    for (ObjId x = 0; x < c.objects; ++x)
      if (coherent_covering_sieves(c, *ctx.tables, x, ctx.lim) !=
          ctx.coh_top->covering[x])
        return fail(id, "coherent sieves disagree at " + c.object_name(x));
  }
  if (legs == 0) return skip(id, "no qualifying coverage");
  return pass(id, std::to_string(legs) + " coverages");
}

SuiteResult suite_union_coherent(const Ctx& ctx) {
  const std::string id = "union-coverage-coherent";
  if (!ctx.reg_cov || !ctx.ext_cov || !ctx.coh_top)
    return skip(id, "needs the regular, coproduct and coherent coverages");
  GrothTopology u =
      generated_by_union(ctx.cat, *ctx.reg_cov, *ctx.ext_cov, ctx.lim);
  if (!(u == *ctx.coh_top)) return fail(id, "union saturation differs");
  return pass(id);
}

SuiteResult suite_precoherent_implication(const Ctx& ctx) {
  const std::string id = "preregular-extensive-precoherent";
  if (!ctx.preregular.holds || !ctx.extensive.holds)
    return skip(id, "hypotheses do not hold here");
  if (!ctx.family_tables_ok) return skip(id, "family enumeration over cap");
  if (!is_precoherent(ctx.cat, *ctx.tables, ctx.lim).holds)
    return fail(id, "preregular and finitary extensive but not precoherent");
  return pass(id);
}

SuiteResult suite_subcanonical(const Ctx& ctx) {
  const std::string id = "representable-sheaves";
  const FinCat& c = ctx.cat;
  int legs = 0;
  auto check = [&](const GrothTopology& t, const char* name) -> std::string {
    for (ObjId w = 0; w < c.objects; ++w)
      if (!is_sheaf_for_topology(c, representable(c, w), t, ctx.budget))
        return std::string(name) + " topology fails at h_" + c.object_name(w);
    return "";
  };
  for (auto [top, name] : {std::pair{&ctx.reg_top, "regular"},
                           std::pair{&ctx.ext_top, "coproduct"},
                           std::pair{&ctx.coh_top, "coherent"}}) {
    if (!top->has_value()) continue;
    ++legs;
    if (auto w = check(**top, name); !w.empty()) return fail(id, w);
  }
  if (legs == 0) return skip(id, "no qualifying topology");
  return pass(id, std::to_string(legs) + " topologies");
}

SuiteResult suite_projective_regular(const Ctx& ctx) {
  const std::string id = "projective-regular-presheaves";
  if (!ctx.all_projective) return skip(id, "not every object is projective");
  if (!ctx.reg_top) return skip(id, "no regular topology");
  if (!ctx.presheaves_ok) return skip(id, "presheaf enumeration too large");
  for (const Presheaf& p : ctx.small_presheaves)
    if (!is_sheaf_for_topology(ctx.cat, p, *ctx.reg_top, ctx.budget))
      return fail(id, "a presheaf is not a regular-topology sheaf");
  return pass(id, std::to_string(ctx.small_presheaves.size()) + " presheaves");
}

// The product characterizations presume that the binary coproducts that do
// exist are genuine disjoint unions. Finitary extensive categories qualify;
// so do the finite-set skeletons from two elements up. One-object-per-rank
// truncations have degenerate coproducts (x⊔x = x) and are excluded.
bool product_characterization_applies(const Ctx& ctx) {
  if (ctx.extensive.holds) return true;
  return ctx.finset.has_value() && ctx.cat.objects >= 3;
}

SuiteResult suite_extensive_products(const Ctx& ctx) {
  const std::string id = "extensive-sheaf-products";
  if (!ctx.ext_top) return skip(id, "no coproduct topology");
  if (!ctx.presheaves_ok) return skip(id, "presheaf enumeration too large");
  if (!find_initial(ctx.cat)) return skip(id, "no initial object");
  if (!product_characterization_applies(ctx))
    return skip(id, "degenerate coproducts");
  for (const Presheaf& p : ctx.small_presheaves) {
    bool sheaf = is_sheaf_for_topology(ctx.cat, p, *ctx.ext_top, ctx.budget);
    bool products = preserves_finite_products(ctx.cat, p);
    if (sheaf != products)
      return fail(id, "sheaf and product-preservation disagree");
  }
  return pass(id, std::to_string(ctx.small_presheaves.size()) + " presheaves");
}

SuiteResult suite_coherent_characterization(const Ctx& ctx) {
  const std::string id = "coherent-sheaf-characterization";
  if (!ctx.coh_top) return skip(id, "no coherent topology");
  if (!ctx.presheaves_ok) return skip(id, "presheaf enumeration too large");
  if (!find_initial(ctx.cat)) return skip(id, "no initial object");
  if (!product_characterization_applies(ctx))
    return skip(id, "degenerate coproducts");
  const FinCat& c = ctx.cat;

  std::vector<std::pair<MorId, ConeWitness>> kps;
  for (const EpiClass& e : ctx.epi_classes)
    if (e.is_effective_epi && e.kernel_pair) kps.emplace_back(e.f, *e.kernel_pair);

  for (const Presheaf& p : ctx.small_presheaves) {
    bool sheaf = is_sheaf_for_topology(c, p, *ctx.coh_top, ctx.budget);
    bool products = preserves_finite_products(c, p);
    bool eq = true;
    for (const auto& [pi, kp] : kps)
      if (!equalizer_condition(c, p, pi, kp)) {
        eq = false;
        break;
      }
    if (sheaf != (products && eq))
      return fail(id, "sheaf vs products+equalizer disagree");
    if (ctx.all_projective && sheaf != products)
      return fail(id, "sheaf vs products disagree on a projective category");
  }
  return pass(id, std::to_string(ctx.small_presheaves.size()) + " presheaves");
}

SuiteResult suite_presieve_generated(const Ctx& ctx) {
  const std::string id = "presieve-generated-sieve";
  if (ctx.small_presheaves.empty()) return skip(id, "no presheaf pool");
  const FinCat& c = ctx.cat;
  auto rng = suite_rng(id);
  int n = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Presheaf& p =
        ctx.small_presheaves[rng() % ctx.small_presheaves.size()];
    ObjId x = static_cast<ObjId>(rng() % c.objects);
    const auto& into = c.into(x);
    Presieve ps{x, MorSet(c.n_mor())};
    for (MorId f : into)
      if (rng() & 1) ps.members.set(f);
    bool direct, generated;
    try {
      direct = is_sheaf_for_presieve(c, p, ps, ctx.budget);
      generated = is_sheaf_for_sieve(c, p, generate(c, ps), ctx.budget);
    } catch (const BudgetExceeded&) {
      continue;
    }
    if (direct != generated)
      return fail(id, "presieve and generated sieve disagree at " +
                          c.object_name(x));
    ++n;
  }
  return pass(id, std::to_string(n) + " samples");
}

SuiteResult suite_equalizer_form(const Ctx& ctx) {
  const std::string id = "equalizer-form-agreement";
  if (ctx.small_presheaves.empty()) return skip(id, "no presheaf pool");
  const FinCat& c = ctx.cat;
  auto rng = suite_rng(id);
  int n = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Presheaf& p =
        ctx.small_presheaves[rng() % ctx.small_presheaves.size()];
    ObjId x = static_cast<ObjId>(rng() % c.objects);
    const auto& into = c.into(x);
    Presieve ps{x, MorSet(c.n_mor())};
    for (MorId f : into)
      if (rng() % 3 == 0) ps.members.set(f);
    if (ps.members.count() > 4) continue;
    try {
      auto eq = presieve_equalizer_check(c, p, ps);
      if (!eq) continue;
      if (*eq != is_sheaf_for_presieve(c, p, ps, ctx.budget))
        return fail(id, "equalizer form disagrees at " + c.object_name(x));
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++n;
  }
  if (n == 0) return skip(id, "no presieve with pairwise pullbacks sampled");
  return pass(id, std::to_string(n) + " samples");
}

SuiteResult suite_family_composition(const Ctx& ctx) {
  const std::string id = "family-composition-closure";
  if (!ctx.coh_cov) return skip(id, "no coherent coverage");
  const FinCat& c = ctx.cat;
  auto rng = suite_rng(id);
  int n = 0;
  for (int trial = 0; trial < 40; ++trial) {
    ObjId b = static_cast<ObjId>(rng() % c.objects);
    const auto& outer_fams = ctx.tables->effective_presieves(b, ctx.lim);
    if (outer_fams.empty()) continue;
    const MorSet& outer = outer_fams[rng() % outer_fams.size()];
    MorSet composite(c.n_mor());
    bool ok = true;
    outer.for_each([&](int pi) {
      if (!ok) return;
      const auto& inner_fams =
          ctx.tables->effective_presieves(c.dom(pi), ctx.lim);
      if (inner_fams.empty()) {
        ok = false;
        return;
      }
      const MorSet& inner = inner_fams[rng() % inner_fams.size()];
      inner.for_each([&](int pij) { composite.set(c.compose(pi, pij)); });
    });
    if (!ok) continue;
    if (!is_effective_epi_family(c, {b, composite}))
      return fail(id, "composite family not effective at " + c.object_name(b));
    ++n;
  }
  if (n == 0) return skip(id, "no composite samples");
  return pass(id, std::to_string(n) + " samples");
}

SuiteResult suite_topology_axioms(const Ctx& ctx) {
  const std::string id = "topology-axioms";
  const FinCat& c = ctx.cat;
  if (!ctx.min_top) return skip(id, "sieve enumeration over cap");

  for (ObjId x = 0; x < c.objects; ++x)
    if (ctx.min_top->covering[x].size() != 1 ||
        !(ctx.min_top->covering[x][0] == top_sieve(c, x)))
      return fail(id, "minimal topology is not exactly the top sieves");

  for (auto [top, name] : {std::pair{&ctx.min_top, "minimal"},
                           std::pair{&ctx.reg_top, "regular"},
                           std::pair{&ctx.ext_top, "coproduct"},
                           std::pair{&ctx.coh_top, "coherent"}}) {
    if (!top->has_value()) continue;
    if (auto rep = check_topology(c, **top, ctx.lim); !rep.ok())
      return fail(id, std::string(name) + " topology fails the axioms: " +
                          rep.violations.front().law);
    // Upward closure over the enumerated universe.
    for (ObjId x = 0; x < c.objects; ++x)
      for (const Sieve& s : (*top)->covering[x])
        for (const Sieve& r : enumerate_sieves(c, x, ctx.lim))
          if (s.members.subset_of(r.members) && !(*top)->covers(r))
            return fail(id, std::string(name) + " topology is not upward closed");
  }

  // Monotonicity of saturation along coverage inclusion.
  if (ctx.reg_cov && ctx.coh_top && ctx.reg_top) {
    if (!topology_subset(*ctx.reg_top, *ctx.coh_top))
      return fail(id, "regular saturation not inside coherent saturation");
  }
  if (ctx.ext_top && ctx.coh_top) {
    if (!topology_subset(*ctx.ext_top, *ctx.coh_top))
      return fail(id, "coproduct saturation not inside coherent saturation");
  }

  // Sheaf-for-coverage matches sheaf-for-generated-topology on samples.
  if (!ctx.small_presheaves.empty()) {
    auto rng = suite_rng(id);
    for (auto [cov, top] : {std::pair{&ctx.reg_cov, &ctx.reg_top},
                            std::pair{&ctx.ext_cov, &ctx.ext_top},
                            std::pair{&ctx.coh_cov, &ctx.coh_top}}) {
      if (!cov->has_value() || !top->has_value()) continue;
      for (int trial = 0; trial < 12; ++trial) {
        const Presheaf& p =
            ctx.small_presheaves[rng() % ctx.small_presheaves.size()];
        if (is_sheaf_for_coverage(c, p, **cov, ctx.budget) !=
            is_sheaf_for_topology(c, p, **top, ctx.budget))
          return fail(id, "coverage and topology sheaf checks disagree");
      }
    }
  }

  // The saturation equals the intersection of all topologies whose associated
  // coverage contains the coverage, provided the lattice is desk-sized.
  if (ctx.coh_cov && ctx.coh_top) {
    std::vector<std::vector<Sieve>> universe(c.objects);
    bool small = true;
    std::uint64_t combos = 1;
    for (ObjId x = 0; x < c.objects; ++x) {
      universe[x] = enumerate_sieves(c, x, ctx.lim);
      if (universe[x].size() > 8) small = false;
      combos *= std::uint64_t{1} << std::min<std::size_t>(universe[x].size(), 40);
      if (combos > (1u << 18)) small = false;
    }
    if (small) {
      std::vector<int> counts(c.objects);
      for (ObjId x = 0; x < c.objects; ++x)
        counts[x] = static_cast<int>(universe[x].size());
      GrothTopology meet;
      meet.covering.resize(c.objects);
      bool first = true;
      std::vector<std::uint64_t> pick(c.objects, 0);
      std::vector<char> seen_any(1, 0);
      while (true) {
        GrothTopology t;
        t.covering.resize(c.objects);
        for (ObjId x = 0; x < c.objects; ++x)
          for (int i = 0; i < counts[x]; ++i)
            if (pick[x] >> i & 1) t.covering[x].push_back(universe[x][i]);
        bool is_topology = check_topology(c, t, ctx.lim).ok();
        bool contains = true;
        if (is_topology)
          for (ObjId x = 0; x < c.objects && contains; ++x)
            for (const Presieve& s : ctx.coh_cov->covering[x])
              if (!t.covers(generate(c, s))) {
                contains = false;
                break;
              }
        if (is_topology && contains) {
          if (first) {
            meet = t;
            first = false;
          } else {
            GrothTopology inter;
            inter.covering.resize(c.objects);
            for (ObjId x = 0; x < c.objects; ++x)
              for (const Sieve& s : meet.covering[x])
                if (t.covers(s)) inter.covering[x].push_back(s);
            meet = inter;
          }
        }
        int x = 0;
        while (x < c.objects) {
          if (++pick[x] < (std::uint64_t{1} << counts[x])) break;
          pick[x] = 0;
          ++x;
        }
        if (x == c.objects) break;
      }
      if (!first && !(meet == *ctx.coh_top))
        return fail(id, "saturation differs from the topology intersection");
      (void)seen_any;
    }
  }
  return pass(id);
}

SuiteResult suite_roundtrip(const Ctx& ctx) {
  const std::string id = "document-roundtrip";
  FinCat reparsed = parse_category(emit_category(ctx.cat, "roundtrip"), ctx.lim);
  if (!reparsed.structurally_equal(ctx.cat))
    return fail(id, "parse(emit(cat)) differs structurally");
  return pass(id);
}

using SuiteFn = SuiteResult (*)(const Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"coherent-sheaf-characterization", suite_coherent_characterization},
      {"coproduct-induced-map", suite_coproduct_induced_map},
      {"document-roundtrip", suite_roundtrip},
      {"effective-epi-flags", suite_effective_epi_flags},
      {"equalizer-form-agreement", suite_equalizer_form},
      {"extensive-sheaf-products", suite_extensive_products},
      {"family-composition-closure", suite_family_composition},
      {"family-routes-agree", suite_family_routes},
      {"finset-epi-surjectivity", suite_finset_epi_surjectivity},
      {"fintop-epi-quotient", suite_fintop_epi_quotient},
      {"preregular-extensive-precoherent", suite_precoherent_implication},
      {"presieve-generated-sieve", suite_presieve_generated},
      {"projective-regular-presheaves", suite_projective_regular},
      {"representable-sheaves", suite_subcanonical},
      {"saturation-direct-agreement", suite_saturation_direct},
      {"topology-axioms", suite_topology_axioms},
      {"union-coverage-coherent", suite_union_coherent},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_ids() {
  std::vector<std::string> out;
  for (const auto& [id, fn] : suite_table()) out.push_back(id);
  return out;
}

std::vector<SuiteResult> run_suites(const FinCat& c,
                                    const std::vector<std::string>& ids, int jobs,
                                    const Limits& lim, const Budget& budget) {
  auto ctx = build_context(c, lim, budget);

  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& entry : suite_table()) {
    if (ids.empty() ||
        std::find(ids.begin(), ids.end(), entry.first) != ids.end())
      chosen.push_back(entry);
  }

  std::vector<SuiteResult> results(chosen.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = chosen[i].second(*ctx);
    } catch (const std::exception& e) {
      results[i] = fail(chosen[i].first, std::string("exception: ") + e.what());
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < chosen.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> futs;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      futs.push_back(std::async(std::launch::async, run_one, i));
    for (auto& f : futs) f.get();
  }
  return results;
}

std::string format_suite_line(const SuiteResult& r, bool structured) {
  const char* st = r.status == SuiteResult::Status::Pass   ? "PASS"
                   : r.status == SuiteResult::Status::Fail ? "FAIL"
                                                           : "SKIP";
  std::ostringstream os;
  if (structured) {
    os << "suite id=" << r.id << " status=" << st;
    if (!r.detail.empty()) {
      std::string d = r.detail;
      std::replace(d.begin(), d.end(), ' ', '_');
      os << " detail=" << d;
    }
  } else {
    os << st << " " << r.id;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
  }
  return os.str();
}

}  // namespace sitecalc
