// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Each criterion carries its wall-clock budget; a run over budget fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "sitecalc/format.hpp"
#include "sitecalc/generators.hpp"
#include "sitecalc/suites.hpp"
#include "sitecalc/transport.hpp"

using namespace sitecalc;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string slug;
  double limit_seconds;
  bool pass = false;
  std::string detail;
  double elapsed = 0;
};

bool g_all_pass = true;

void run(Criterion c, const std::function<std::pair<bool, std::string>()>& body) {
  auto t0 = Clock::now();
  try {
    auto [ok, detail] = body();
    c.pass = ok;
    c.detail = detail;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  if (c.elapsed > c.limit_seconds) {
    c.pass = false;
    c.detail += " (over time budget)";
  }
  if (!c.pass) g_all_pass = false;
  std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.slug << " " << c.detail
            << " time=" << std::fixed << std::setprecision(2) << c.elapsed
            << "s limit=" << std::setprecision(0) << c.limit_seconds << "s\n";
}

std::vector<FinCat> builtin_corpus() {
  std::vector<FinCat> corpus;
  for (int n = 0; n <= 2; ++n) corpus.push_back(gen_finset_skeleton(n).cat);
  for (int n = 0; n <= 2; ++n) corpus.push_back(gen_fintop(n).cat);
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 14; ++i)
    corpus.push_back(random_poset(rng, 3 + static_cast<int>(rng() % 3)));
  for (const FinCat& m : all_monoids(2)) corpus.push_back(m);
  auto threes = all_monoids(3);
  for (std::size_t i = 0; i < threes.size() && i < 6; ++i)
    corpus.push_back(threes[i]);
  return corpus;
}

}  // namespace

int main() {
  // 1. Effective epimorphisms in the three-element skeleton are exactly the
  //    surjections.
  run({"criterion-01-effective-epi-surjectivity", 10.0}, [] {
    FinSetCategory s = gen_finset_skeleton(3);
    if (s.cat.n_mor() != 60)
      return std::pair{false, std::string("expected 60 morphisms, got ") +
                                  std::to_string(s.cat.n_mor())};
    for (MorId f = 0; f < s.cat.n_mor(); ++f)
      if (is_effective_epi(s.cat, f) != map_surjective(s, f))
        return std::pair{false,
                         "disagreement at " + s.cat.morphism_name(f)};
    return std::pair{true, std::string("60 morphisms")};
  });

  // 2. In the finite-space category maps are epi iff surjective and effective
  //    iff quotient.
  run({"criterion-02-quotient-characterization", 60.0}, [] {
    FinTopCategory t = gen_fintop(2);
    for (MorId f = 0; f < t.cat.n_mor(); ++f) {
      if (is_epi(t.cat, f) != map_surjective(t, f))
        return std::pair{false, "epi mismatch at " + t.cat.morphism_name(f)};
      if (is_effective_epi(t.cat, f) != is_quotient_map(t, f))
        return std::pair{false,
                         "effective mismatch at " + t.cat.morphism_name(f)};
    }
    return std::pair{true,
                     std::to_string(t.cat.n_mor()) + " continuous maps"};
  });

  // 3. The two family-effectivity routes agree on every presieve.
  run({"criterion-03-family-routes", 60.0}, [] {
    std::vector<FinCat> cats = {gen_finset_skeleton(2).cat, walking_arrow(),
                                gen_poset({{true, true, true, true},
                                           {false, true, false, true},
                                           {false, false, true, true},
                                           {false, false, false, true}})};
    int checked = 0;
    for (const FinCat& c : cats)
      for (ObjId x = 0; x < c.objects; ++x) {
        const auto& into = c.into(x);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << into.size());
             ++mask) {
          Presieve p{x, MorSet(c.n_mor())};
          for (std::size_t i = 0; i < into.size(); ++i)
            if (mask >> i & 1) p.members.set(into[i]);
          if (is_effective_epi_family(c, p) != effective_family_via_sheaf(c, p))
            return std::pair{false, "routes disagree on " + c.object_name(x)};
          ++checked;
        }
      }
    return std::pair{true, std::to_string(checked) + " presieves"};
  });

  // 4. Saturation matches the direct sieve characterizations objectwise.
  run({"criterion-04-saturation-vs-direct", 120.0}, [] {
    FinSetCategory s = gen_finset_skeleton(2);
    const FinCat& c = s.cat;
    EpiTables tables(c);
    GrothTopology reg = saturate(c, regular_coverage(c, tables));
    GrothTopology ext = saturate(c, extensive_coverage(c));
    GrothTopology coh = saturate(c, coherent_coverage(c, tables));
    for (ObjId x = 0; x < c.objects; ++x) {
      if (regular_covering_sieves(c, tables, x) != reg.covering[x])
        return std::pair{false, "regular mismatch at " + c.object_name(x)};
      if (extensive_covering_sieves(c, x) != ext.covering[x])
        return std::pair{false, "coproduct mismatch at " + c.object_name(x)};
      if (coherent_covering_sieves(c, tables, x) != coh.covering[x])
        return std::pair{false, "coherent mismatch at " + c.object_name(x)};
    }
    return std::pair{true, std::string("three coverages, all objects")};
  });

  // 5. The union of the regular and coproduct coverages generates the
  //    coherent topology.
  run({"criterion-05-union-generates-coherent", 120.0}, [] {
    FinSetCategory s = gen_finset_skeleton(2);
    EpiTables tables(s.cat);
    GrothTopology u = generated_by_union(s.cat, regular_coverage(s.cat, tables),
                                         extensive_coverage(s.cat));
    GrothTopology coh = saturate(s.cat, coherent_coverage(s.cat, tables));
    if (!(u == coh)) return std::pair{false, std::string("topologies differ")};
    return std::pair{true, std::string("equal objectwise")};
  });

  // 6. Preregular and finitary extensive imply precoherent over the corpus.
  run({"criterion-06-predicate-implication", 300.0}, [] {
    auto corpus = builtin_corpus();
    int hypotheses = 0;
    for (const FinCat& c : corpus) {
      EpiTables tables(c);
      if (!is_preregular(c, tables).holds) continue;
      if (!is_finitary_extensive(c).holds) continue;
      ++hypotheses;
      if (!is_precoherent(c, tables).holds)
        return std::pair{false, std::string("implication fails on a corpus entry")};
    }
    return std::pair{true, std::to_string(corpus.size()) + " categories, " +
                               std::to_string(hypotheses) + " with hypotheses"};
  });

  // 7. All representables are sheaves for the three topologies.
  run({"criterion-07-subcanonical", 60.0}, [] {
    FinSetCategory s = gen_finset_skeleton(2);
    const FinCat& c = s.cat;
    EpiTables tables(c);
    GrothTopology tops[] = {saturate(c, regular_coverage(c, tables)),
                            saturate(c, extensive_coverage(c)),
                            saturate(c, coherent_coverage(c, tables))};
    for (const GrothTopology& t : tops)
      for (ObjId w = 0; w < c.objects; ++w)
        if (!is_sheaf_for_topology(c, representable(c, w), t))
          return std::pair{false, "h_" + c.object_name(w) + " fails"};
    return std::pair{true, std::string("3 representables x 3 topologies")};
  });

  // 8. Sheaf-for-coherent, product preservation, and products+equalizers
  //    agree on every small presheaf.
  run({"criterion-08-sheaf-characterizations", 600.0}, [] {
    FinSetCategory s = gen_finset_skeleton(2);
    const FinCat& c = s.cat;
    EpiTables tables(c);
    GrothTopology coh = saturate(c, coherent_coverage(c, tables));

    std::vector<std::pair<MorId, ConeWitness>> kps;
    for (MorId f = 0; f < c.n_mor(); ++f)
      if (is_effective_epi(c, f))
        if (auto kp = kernel_pair(c, f)) kps.emplace_back(f, *kp);

    auto pool = enumerate_presheaves(c, 2);
    for (const Presheaf& p : pool) {
      bool sheaf = is_sheaf_for_topology(c, p, coh);
      bool products = preserves_finite_products(c, p);
      bool eq = true;
      for (const auto& [pi, kp] : kps)
        if (!equalizer_condition(c, p, pi, kp)) {
          eq = false;
          break;
        }
      if (sheaf != products || sheaf != (products && eq))
        return std::pair{false, std::string("three-way disagreement")};
    }
    return std::pair{true, std::to_string(pool.size()) + " presheaves"};
  });

  // 9. Sheaf-for-presieve equals sheaf-for-generated-sieve on random pairs.
  run({"criterion-09-presieve-sieve", 300.0}, [] {
    std::vector<FinCat> cats = {gen_finset_skeleton(2).cat, walking_arrow(),
                                gen_fintop(1).cat,
                                gen_monoid({{0, 1}, {1, 0}}),
                                gen_poset({{true, true, true, true},
                                           {false, true, false, true},
                                           {false, false, true, true},
                                           {false, false, false, true}})};
    std::mt19937_64 rng(424242);
    int checked = 0;
    std::vector<std::vector<Presheaf>> pools;
    for (const FinCat& c : cats) pools.push_back(enumerate_presheaves(c, 2));
    while (checked < 500) {
      std::size_t ci = rng() % cats.size();
      const FinCat& c = cats[ci];
      if (pools[ci].empty()) continue;
      const Presheaf& p = pools[ci][rng() % pools[ci].size()];
      ObjId x = static_cast<ObjId>(rng() % c.objects);
      Presieve ps{x, MorSet(c.n_mor())};
      for (MorId f : c.into(x))
        if (rng() & 1) ps.members.set(f);
      if (is_sheaf_for_presieve(c, p, ps) !=
          is_sheaf_for_sieve(c, p, generate(c, ps)))
        return std::pair{false, "disagreement at " + c.object_name(x)};
      ++checked;
    }
    return std::pair{true, std::to_string(checked) + " pairs"};
  });

  // 10. The skeleton inclusion induces an equivalence of sheaf categories.
  run({"criterion-10-sheaf-equivalence", 900.0}, [] {
    FinSetCategory skel = gen_finset_skeleton(2);
    FinSetFamilyCategory full =
        gen_finset_family({{}, {0}, {0, 1}, {5}, {3, 7}});
    FinFunctor inc = skeleton_inclusion(skel, full);
    EquivalenceReport eq = check_equivalence_conditions(skel.cat, full.cat, inc);
    if (!eq.ok()) return std::pair{false, std::string("conditions fail")};
    SheafEquivalenceReport sr =
        verify_sheaf_equivalence(skel.cat, full.cat, inc, 2);
    if (!sr.ok())
      return std::pair{false, std::string("equivalence report fails")};
    if (sr.source_census != sr.target_census)
      return std::pair{false, std::string("census counts differ")};
    return std::pair{true, "census " + std::to_string(sr.source_census) + "=" +
                               std::to_string(sr.target_census) +
                               ", bijection on iso classes"};
  });

  // 11. Composites of effective families over effective families stay
  //     effective.
  run({"criterion-11-family-composition", 300.0}, [] {
    FinSetCategory s = gen_finset_skeleton(2);
    const FinCat& c = s.cat;
    EpiTables tables(c);
    for (ObjId x = 0; x < c.objects; ++x) tables.effective_family_table(x);
    std::mt19937_64 rng(777);
    int checked = 0;
    while (checked < 200) {
      ObjId b = static_cast<ObjId>(rng() % c.objects);
      const auto& outer_fams = tables.effective_presieves(b);
      if (outer_fams.empty()) continue;
      const MorSet& outer = outer_fams[rng() % outer_fams.size()];
      MorSet composite(c.n_mor());
      bool ok = true;
      outer.for_each([&](int pi) {
        if (!ok) return;
        const auto& inner_fams = tables.effective_presieves(c.dom(pi));
        if (inner_fams.empty()) {
          ok = false;
          return;
        }
        const MorSet& inner = inner_fams[rng() % inner_fams.size()];
        inner.for_each([&](int pij) { composite.set(c.compose(pi, pij)); });
      });
      if (!ok) continue;
      if (!is_effective_epi_family(c, {b, composite}))
        return std::pair{false, "composite fails at " + c.object_name(b)};
      ++checked;
    }
    return std::pair{true, std::to_string(checked) + " composites"};
  });

  // 12. Document round trips and stable suite output across runs and jobs.
  run({"criterion-12-roundtrip-golden", 300.0}, [] {
    std::vector<FinCat> corpus;
    for (int n = 0; n <= 3; ++n) corpus.push_back(gen_finset_skeleton(n).cat);
    for (int n = 0; n <= 2; ++n) corpus.push_back(gen_fintop(n).cat);
    corpus.push_back(walking_arrow());
    for (const FinCat& m : all_monoids(3)) corpus.push_back(m);
    for (const FinCat& c : corpus)
      if (!parse_category(emit_category(c, "x")).structurally_equal(c))
        return std::pair{false, std::string("round trip broke")};

    FinCat skel = gen_finset_skeleton(2).cat;
    std::ostringstream golden[3];
    int jobs[3] = {1, 2, 1};
    for (int rep = 0; rep < 3; ++rep)
      for (const SuiteResult& r : run_suites(skel, {}, jobs[rep]))
        golden[rep] << format_suite_line(r, true) << "\n";
    if (golden[0].str() != golden[1].str() || golden[0].str() != golden[2].str())
      return std::pair{false, std::string("suite output unstable")};
    return std::pair{true, std::to_string(corpus.size()) +
                               " documents, stable suite output"};
  });

  return g_all_pass ? 0 : 1;
}
