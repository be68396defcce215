#include "sitecalc/topology.hpp"

#include <algorithm>
#include <sstream>

namespace sitecalc {

namespace {

int sieve_index(const std::vector<Sieve>& universe, const Sieve& s) {
  auto it = std::lower_bound(universe.begin(), universe.end(), s);
  if (it == universe.end() || !(*it == s)) return -1;
  return static_cast<int>(it - universe.begin());
}

std::string mor_str(const FinCat& c, MorId f) {
  return c.morphism_name(f) + ":" + c.object_name(c.dom(f)) + "->" +
         c.object_name(c.cod(f));
}

std::string presieve_str(const FinCat& c, const Presieve& p) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  p.members.for_each([&](int f) {
    os << (first ? "" : " ") << c.morphism_name(f);
    first = false;
  });
  os << "} on " << c.object_name(p.target);
  return os.str();
}

}  // namespace

bool GrothTopology::covers(const Sieve& s) const {
  const auto& lst = covering[s.target];
  return std::binary_search(lst.begin(), lst.end(), s);
}

ValidationReport check_coverage(const FinCat& c, const Coverage& cov) {
  ValidationReport r;
  if (static_cast<int>(cov.covering.size()) != c.objects) {
    r.violations.push_back({"malformed-table", {}, "per-object list count wrong"});
    return r;
  }
  // Union of principal sieves per covering presieve: the factorization targets.
  std::vector<std::vector<MorSet>> through(c.objects);
  for (ObjId y = 0; y < c.objects; ++y)
    for (const Presieve& s : cov.covering[y]) {
      MorSet u(c.n_mor());
      s.members.for_each([&](int h) { u |= principal_sieve(c, h); });
      through[y].push_back(std::move(u));
    }

  for (MorId f = 0; f < c.n_mor(); ++f) {
    const ObjId x = c.dom(f);
    const ObjId y = c.cod(f);
    for (std::size_t si = 0; si < cov.covering[y].size(); ++si) {
      bool witnessed = false;
      for (const Presieve& t : cov.covering[x]) {
        bool all_factor = true;
        t.members.for_each([&](int g) {
          if (!through[y][si].test(c.compose(f, g))) all_factor = false;
        });
        if (all_factor) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed)
        r.violations.push_back(
            {"coverage-axiom",
             {f, static_cast<int>(si)},
             "no covering presieve on " + c.object_name(x) + " refines " +
                 presieve_str(c, cov.covering[y][si]) + " along " + mor_str(c, f)});
    }
  }
  return r;
}

GrothTopology saturate(const FinCat& c, const Coverage& cov, const Limits& lim) {
  std::vector<std::vector<Sieve>> universe(c.objects);
  for (ObjId x = 0; x < c.objects; ++x) universe[x] = enumerate_sieves(c, x, lim);

  // Position of each morphism inside into(cod f), for the pullback table.
  std::vector<int> pos(c.n_mor());
  for (ObjId x = 0; x < c.objects; ++x) {
    const auto& in = c.into(x);
    for (std::size_t k = 0; k < in.size(); ++k) pos[in[k]] = static_cast<int>(k);
  }

  // pb[x][i][k]: index (in the domain's universe) of the pullback of sieve i
  // on x along the k-th morphism into x.
  std::vector<std::vector<std::vector<int>>> pb(c.objects);
  for (ObjId x = 0; x < c.objects; ++x) {
    pb[x].resize(universe[x].size());
    const auto& in = c.into(x);
    for (std::size_t i = 0; i < universe[x].size(); ++i) {
      pb[x][i].resize(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) {
        Sieve p = pullback_sieve(c, universe[x][i], in[k]);
        pb[x][i][k] = sieve_index(universe[c.dom(in[k])], p);
      }
    }
  }

  std::vector<std::vector<char>> flag(c.objects);
  for (ObjId x = 0; x < c.objects; ++x) flag[x].assign(universe[x].size(), 0);

  auto mark = [&](ObjId x, const Sieve& s) {
    int i = sieve_index(universe[x], s);
    if (i >= 0) flag[x][i] = 1;
  };
  for (ObjId x = 0; x < c.objects; ++x) {
    mark(x, top_sieve(c, x));
    if (x < static_cast<ObjId>(cov.covering.size()))
      for (const Presieve& p : cov.covering[x]) mark(x, generate(c, p));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (ObjId x = 0; x < c.objects; ++x) {
      for (std::size_t r = 0; r < universe[x].size(); ++r) {
        if (flag[x][r]) continue;
        for (std::size_t s = 0; s < universe[x].size(); ++s) {
          if (!flag[x][s]) continue;
          bool all = true;
          universe[x][s].members.for_each([&](int f) {
            if (!all) return;
            if (!flag[c.dom(f)][pb[x][r][pos[f]]]) all = false;
          });
          if (all) {
            flag[x][r] = 1;
            changed = true;
            break;
          }
        }
      }
    }
  }

  GrothTopology t;
  t.covering.resize(c.objects);
  for (ObjId x = 0; x < c.objects; ++x)
    for (std::size_t i = 0; i < universe[x].size(); ++i)
      if (flag[x][i]) t.covering[x].push_back(universe[x][i]);
  return t;
}

ValidationReport check_topology(const FinCat& c, const GrothTopology& t,
                                const Limits& lim) {
  ValidationReport r;
  if (static_cast<int>(t.covering.size()) != c.objects) {
    r.violations.push_back({"malformed-table", {}, "per-object list count wrong"});
    return r;
  }
  for (ObjId x = 0; x < c.objects; ++x)
    for (const Sieve& s : t.covering[x])
      if (s.target != x || !is_sieve_closed(c, x, s.members))
        r.violations.push_back(
            {"not-a-sieve", {x}, "covering entry is not a sieve on the object"});
  if (!r.ok()) return r;

  for (ObjId x = 0; x < c.objects; ++x)
    if (!t.covers(top_sieve(c, x)))
      r.violations.push_back({"GT-1", {x}, "top sieve not covering on " +
                                               c.object_name(x)});

  for (ObjId y = 0; y < c.objects; ++y)
    for (const Sieve& s : t.covering[y])
      for (MorId f : c.into(y))
        if (!t.covers(pullback_sieve(c, s, f)))
          r.violations.push_back(
              {"GT-2", {f}, "pullback of a covering sieve along " + mor_str(c, f) +
                                " is not covering"});

  for (ObjId y = 0; y < c.objects; ++y) {
    std::vector<Sieve> universe = enumerate_sieves(c, y, lim);
    for (const Sieve& s : t.covering[y])
      for (const Sieve& cand : universe) {
        if (t.covers(cand)) continue;
        bool all = true;
        s.members.for_each([&](int f) {
          if (!all) return;
          if (!t.covers(pullback_sieve(c, cand, f))) all = false;
        });
        if (all)
          r.violations.push_back(
              {"GT-3", {y}, "locally-covering sieve on " + c.object_name(y) +
                                " is not covering"});
      }
  }
  return r;
}

GrothTopology minimal_topology(const FinCat& c, const Limits& lim) {
  Coverage empty;
  empty.covering.resize(c.objects);
  return saturate(c, empty, lim);
}

PredicateResult is_preregular(const FinCat& c, EpiTables& tables) {
  for (MorId g = 0; g < c.n_mor(); ++g) {
    if (!tables.effective_epi(g)) continue;
    const ObjId y = c.cod(g);
    const ObjId z = c.dom(g);
    for (MorId f : c.into(y)) {
      const ObjId x = c.dom(f);
      bool found = false;
      for (MorId h : tables.effective_epis_into(x)) {
        for (MorId i : c.hom(c.dom(h), z))
          if (c.compose(g, i) == c.compose(f, h)) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found)
        return {false, "no effective-epi square over " + mor_str(c, g) + " and " +
                           mor_str(c, f)};
    }
  }
  return {true, ""};
}

bool exhibits_as_coproduct(const FinCat& c, ObjId x, const std::vector<MorId>& fam) {
  for (ObjId w = 0; w < c.objects; ++w) {
    const auto& h = c.hom(x, w);
    unsigned long long product = 1;
    for (MorId m : fam) {
      product *= c.hom(c.dom(m), w).size();
      if (product > 1'000'000'000ull) return false;  // cannot match |Hom(x,w)|
    }
    if (product != h.size()) return false;
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        bool same = true;
        for (MorId m : fam)
          if (c.compose(h[a], m) != c.compose(h[b], m)) {
            same = false;
            break;
          }
        if (same) return false;
      }
  }
  return true;
}

namespace {

bool is_pullback_cone(const FinCat& c, MorId f, MorId g, ObjId apex, MorId p1,
                      MorId p2) {
  if (c.compose(f, p1) != c.compose(g, p2)) return false;
  for (ObjId q = 0; q < c.objects; ++q) {
    // Cones with apex q vs morphisms q -> apex, as a bijection test.
    unsigned long long cones = 0;
    for (MorId q1 : c.hom(q, c.dom(f)))
      for (MorId q2 : c.hom(q, c.dom(g)))
        if (c.compose(f, q1) == c.compose(g, q2)) ++cones;
    const auto& med = c.hom(q, apex);
    if (cones != med.size()) return false;
    for (std::size_t a = 0; a < med.size(); ++a)
      for (std::size_t b = a + 1; b < med.size(); ++b)
        if (c.compose(p1, med[a]) == c.compose(p1, med[b]) &&
            c.compose(p2, med[a]) == c.compose(p2, med[b]))
          return false;
  }
  return true;
}

}  // namespace

PredicateResult is_finitary_extensive(const FinCat& c) {
  auto initial = find_initial(c);
  if (!initial) return {false, "no initial object"};

  std::vector<std::vector<std::optional<ConeWitness>>> cop(c.objects);
  for (ObjId x = 0; x < c.objects; ++x) {
    cop[x].resize(c.objects);
    for (ObjId y = x; y < c.objects; ++y) {
      cop[x][y] = find_binary_coproduct(c, x, y);
      if (!cop[x][y])
        return {false, "no binary coproduct of " + c.object_name(x) + " and " +
                           c.object_name(y)};
    }
  }

  for (ObjId x = 0; x < c.objects; ++x)
    for (ObjId y = x; y < c.objects; ++y) {
      const ConeWitness& w = *cop[x][y];
      for (MorId z : c.into(w.apex))
        for (MorId leg : w.legs)
          if (!find_pullback(c, z, leg))
            return {false, "no pullback of " + mor_str(c, z) +
                               " along coprojection " + mor_str(c, leg)};
    }

  // Van Kampen: two pullback squares iff the top row is a coproduct diagram,
  // over every commutative diagram on the canonical coproduct cocones.
  for (ObjId x = 0; x < c.objects; ++x)
    for (ObjId y = x; y < c.objects; ++y) {
      const ConeWitness& w = *cop[x][y];
      const MorId i1 = w.legs[0];
      const MorId i2 = w.legs[1];
      for (MorId z : c.into(w.apex)) {
        const ObjId zc = c.dom(z);
        for (ObjId z1 = 0; z1 < c.objects; ++z1)
          for (MorId a1 : c.hom(z1, zc))
            for (MorId b1 : c.hom(z1, x)) {
              if (c.compose(z, a1) != c.compose(i1, b1)) continue;
              for (ObjId z2 = 0; z2 < c.objects; ++z2)
                for (MorId a2 : c.hom(z2, zc))
                  for (MorId b2 : c.hom(z2, y)) {
                    if (c.compose(z, a2) != c.compose(i2, b2)) continue;
                    bool pullbacks = is_pullback_cone(c, z, i1, z1, a1, b1) &&
                                     is_pullback_cone(c, z, i2, z2, a2, b2);
                    bool coproduct = exhibits_as_coproduct(c, zc, {a1, a2});
                    if (pullbacks != coproduct)
                      return {false,
                              "van Kampen fails over " + mor_str(c, z) + " with " +
                                  mor_str(c, a1) + ", " + mor_str(c, a2)};
                  }
            }
      }
    }
  return {true, ""};
}

PredicateResult is_precoherent(const FinCat& c, EpiTables& tables,
                               const Limits& lim) {
  // Effective presieves per object, as position masks and as morphism sets.
  for (ObjId b = 0; b < c.objects; ++b) tables.effective_family_table(b, lim);

  for (ObjId b = 0; b < c.objects; ++b) {
    const auto& fams = tables.effective_presieves(b, lim);
    for (const MorSet& fam : fams) {
      // Factorization targets of the family.
      MorSet through(c.n_mor());
      fam.for_each([&](int h) { through |= tables.principal(h); });
      for (MorId f : c.into(b)) {
        const ObjId bp = c.dom(f);
        // Largest admissible presieve on bp.
        MorSet allowed(c.n_mor());
        for (MorId g : c.into(bp))
          if (through.test(c.compose(f, g))) allowed.set(g);
        bool found = false;
        for (const MorSet& cand : tables.effective_presieves(bp, lim))
          if (cand.subset_of(allowed)) {
            found = true;
            break;
          }
        if (!found)
          return {false, "no effective family on " + c.object_name(bp) +
                             " refines " +
                             presieve_str(c, Presieve{b, fam}) + " along " +
                             mor_str(c, f)};
      }
    }
  }
  return {true, ""};
}

Coverage regular_coverage(const FinCat& c, EpiTables& tables) {
  if (auto p = is_preregular(c, tables); !p)
    throw NotPreregular("category is not preregular: " + p.counterexample);
  Coverage cov;
  cov.covering.resize(c.objects);
  for (ObjId x = 0; x < c.objects; ++x)
    for (MorId f : tables.effective_epis_into(x)) {
      MorSet s(c.n_mor());
      s.set(f);
      cov.covering[x].push_back({x, s});
    }
  return cov;
}

Coverage extensive_coverage(const FinCat& c, const Limits& lim) {
  Coverage cov;
  cov.covering.resize(c.objects);
  for (ObjId x = 0; x < c.objects; ++x) {
    const auto& in = c.into(x);
    int non_id = 0;
    for (MorId f : in)
      if (!c.is_identity(f)) ++non_id;
    if (non_id > lim.max_fan_in)
      throw CapExceeded("coproduct-family enumeration on " + c.object_name(x) +
                        " exceeds the fan-in cap");
    std::vector<MorId> mem;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.size()); ++mask) {
      mem.clear();
      for (std::size_t i = 0; i < in.size(); ++i)
        if (mask >> i & 1) mem.push_back(in[i]);
      if (!exhibits_as_coproduct(c, x, mem)) continue;
      MorSet s(c.n_mor());
      for (MorId f : mem) s.set(f);
      cov.covering[x].push_back({x, s});
    }
    std::sort(cov.covering[x].begin(), cov.covering[x].end(),
              [](const Presieve& a, const Presieve& b) { return a.members < b.members; });
  }
  if (auto rep = check_coverage(c, cov); !rep.ok())
    throw NotExtensive("coproduct families do not form a coverage: " +
                       rep.violations.front().detail);
  return cov;
}

Coverage coherent_coverage(const FinCat& c, EpiTables& tables, const Limits& lim) {
  if (auto p = is_precoherent(c, tables, lim); !p)
    throw NotPrecoherent("category is not precoherent: " + p.counterexample);
  Coverage cov;
  cov.covering.resize(c.objects);
  for (ObjId x = 0; x < c.objects; ++x)
    for (const MorSet& fam : tables.effective_presieves(x, lim))
      cov.covering[x].push_back({x, fam});
  return cov;
}

std::vector<Sieve> regular_covering_sieves(const FinCat& c, EpiTables& tables,
                                           ObjId x, const Limits& lim) {
  MorSet eff(c.n_mor());
  for (MorId f : tables.effective_epis_into(x)) eff.set(f);
  std::vector<Sieve> out;
  for (const Sieve& s : enumerate_sieves(c, x, lim))
    if (s.members.intersects(eff)) out.push_back(s);
  return out;
}

std::vector<Sieve> extensive_covering_sieves(const FinCat& c, ObjId x,
                                             const Limits& lim) {
  const auto& in = c.into(x);
  std::vector<MorSet> families;
  std::vector<MorId> mem;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.size()); ++mask) {
    mem.clear();
    for (std::size_t i = 0; i < in.size(); ++i)
      if (mask >> i & 1) mem.push_back(in[i]);
    if (!exhibits_as_coproduct(c, x, mem)) continue;
    MorSet s(c.n_mor());
    for (MorId f : mem) s.set(f);
    families.push_back(std::move(s));
  }
  std::vector<Sieve> out;
  for (const Sieve& s : enumerate_sieves(c, x, lim))
    for (const MorSet& fam : families)
      if (fam.subset_of(s.members)) {
        out.push_back(s);
        break;
      }
  return out;
}

std::vector<Sieve> coherent_covering_sieves(const FinCat& c, EpiTables& tables,
                                            ObjId x, const Limits& lim) {
  const auto& fams = tables.effective_presieves(x, lim);
  std::vector<Sieve> out;
  for (const Sieve& s : enumerate_sieves(c, x, lim))
    for (const MorSet& fam : fams)
      if (fam.subset_of(s.members)) {
        out.push_back(s);
        break;
      }
  return out;
}

Coverage union_coverage(const Coverage& a, const Coverage& b) {
  Coverage out = a;
  if (out.covering.size() < b.covering.size())
    out.covering.resize(b.covering.size());
  for (std::size_t x = 0; x < b.covering.size(); ++x)
    for (const Presieve& p : b.covering[x]) out.covering[x].push_back(p);
  for (auto& lst : out.covering) {
    std::sort(lst.begin(), lst.end(),
              [](const Presieve& p, const Presieve& q) { return p.members < q.members; });
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }
  return out;
}

GrothTopology generated_by_union(const FinCat& c, const Coverage& a,
                                 const Coverage& b, const Limits& lim) {
  return saturate(c, union_coverage(a, b), lim);
}

bool topology_subset(const GrothTopology& a, const GrothTopology& b) {
  if (a.covering.size() != b.covering.size()) return false;
  for (std::size_t x = 0; x < a.covering.size(); ++x)
    for (const Sieve& s : a.covering[x])
      if (!b.covers(s)) return false;
  return true;
}

}  // namespace sitecalc
