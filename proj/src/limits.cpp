#include "sitecalc/limits.hpp"

#include <algorithm>

#include "sitecalc/sheaf.hpp"

namespace sitecalc {

namespace {

// Counts d in Hom(src, w) with d∘f == e; early exit above 1.
int count_factorizations(const FinCat& c, ObjId src, ObjId w, MorId f, MorId e,
                         MorId* found = nullptr) {
  int cnt = 0;
  for (MorId d : c.hom(src, w)) {
    if (c.compose(d, f) == e) {
      if (found) *found = d;
      if (++cnt > 1) return cnt;
    }
  }
  return cnt;
}

bool is_coequalizer_of(const FinCat& c, MorId q, MorId g1, MorId g2,
                       std::vector<MediatedCone>* competitors = nullptr) {
  const ObjId x = c.dom(q);
  const ObjId apex = c.cod(q);
  if (c.compose(q, g1) != c.compose(q, g2)) return false;
  for (ObjId w = 0; w < c.objects; ++w)
    for (MorId e : c.hom(x, w)) {
      if (c.compose(e, g1) != c.compose(e, g2)) continue;
      MorId med = kNoMor;
      if (count_factorizations(c, apex, w, q, e, &med) != 1) return false;
      if (competitors) competitors->push_back({{e}, med});
    }
  return true;
}

}  // namespace

bool is_epi(const FinCat& c, MorId f) {
  const ObjId x = c.cod(f);
  for (ObjId w = 0; w < c.objects; ++w) {
    const auto& h = c.hom(x, w);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (c.compose(h[i], f) == c.compose(h[j], f)) return false;
  }
  return true;
}

bool is_effective_epi(const FinCat& c, MorId f) {
  const ObjId y = c.dom(f);
  const ObjId x = c.cod(f);

  // Parallel pairs that f coequalizes.
  std::vector<std::pair<MorId, MorId>> pairs;
  for (ObjId z = 0; z < c.objects; ++z) {
    const auto& h = c.hom(z, y);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (c.compose(f, h[i]) == c.compose(f, h[j]))
          pairs.emplace_back(h[i], h[j]);
  }

  for (ObjId w = 0; w < c.objects; ++w)
    for (MorId e : c.hom(y, w)) {
      bool coequalizes = true;
      for (auto [g1, g2] : pairs)
        if (c.compose(e, g1) != c.compose(e, g2)) {
          coequalizes = false;
          break;
        }
      if (!coequalizes) continue;
      if (count_factorizations(c, x, w, f, e) != 1) return false;
    }
  return true;
}

bool is_regular_epi(const FinCat& c, MorId f) {
  const ObjId x = c.dom(f);
  for (ObjId z = 0; z < c.objects; ++z) {
    const auto& h = c.hom(z, x);
    for (MorId g1 : h)
      for (MorId g2 : h) {
        if (c.compose(f, g1) != c.compose(f, g2)) continue;
        if (is_coequalizer_of(c, f, g1, g2)) return true;
      }
  }
  return false;
}

std::optional<ObjId> find_initial(const FinCat& c) {
  for (ObjId i = 0; i < c.objects; ++i) {
    bool ok = true;
    for (ObjId w = 0; w < c.objects && ok; ++w)
      if (c.hom(i, w).size() != 1) ok = false;
    if (ok) return i;
  }
  return std::nullopt;
}

std::optional<ConeWitness> find_binary_coproduct(const FinCat& c, ObjId x, ObjId y) {
  for (ObjId apex = 0; apex < c.objects; ++apex)
    for (MorId i1 : c.hom(x, apex))
      for (MorId i2 : c.hom(y, apex)) {
        std::vector<MediatedCone> comp;
        bool ok = true;
        for (ObjId w = 0; w < c.objects && ok; ++w)
          for (MorId u : c.hom(x, w)) {
            for (MorId v : c.hom(y, w)) {
              MorId med = kNoMor;
              int cnt = 0;
              for (MorId d : c.hom(apex, w))
                if (c.compose(d, i1) == u && c.compose(d, i2) == v) {
                  med = d;
                  if (++cnt > 1) break;
                }
              if (cnt != 1) {
                ok = false;
                break;
              }
              comp.push_back({{u, v}, med});
            }
            if (!ok) break;
          }
        if (ok)
          return ConeWitness{ConeShape::BinaryCoproduct, apex, {i1, i2},
                             {x, y},  std::move(comp)};
      }
  return std::nullopt;
}

namespace {

std::optional<ConeWitness> find_pullback_impl(const FinCat& c, MorId f, MorId g,
                                              ConeShape shape) {
  if (c.cod(f) != c.cod(g))
    throw TypeMismatch("pullback legs must share their codomain");
  const ObjId x = c.dom(f);
  const ObjId y = c.dom(g);
  for (ObjId apex = 0; apex < c.objects; ++apex)
    for (MorId p1 : c.hom(apex, x))
      for (MorId p2 : c.hom(apex, y)) {
        if (c.compose(f, p1) != c.compose(g, p2)) continue;
        std::vector<MediatedCone> comp;
        bool ok = true;
        for (ObjId q = 0; q < c.objects && ok; ++q)
          for (MorId q1 : c.hom(q, x)) {
            for (MorId q2 : c.hom(q, y)) {
              if (c.compose(f, q1) != c.compose(g, q2)) continue;
              MorId med = kNoMor;
              int cnt = 0;
              for (MorId u : c.hom(q, apex))
                if (c.compose(p1, u) == q1 && c.compose(p2, u) == q2) {
                  med = u;
                  if (++cnt > 1) break;
                }
              if (cnt != 1) {
                ok = false;
                break;
              }
              comp.push_back({{q1, q2}, med});
            }
            if (!ok) break;
          }
        if (ok)
          return ConeWitness{shape, apex, {p1, p2}, {f, g}, std::move(comp)};
      }
  return std::nullopt;
}

}  // namespace

std::optional<ConeWitness> find_pullback(const FinCat& c, MorId f, MorId g) {
  return find_pullback_impl(c, f, g, ConeShape::Pullback);
}

std::optional<ConeWitness> kernel_pair(const FinCat& c, MorId f) {
  auto w = find_pullback_impl(c, f, f, ConeShape::KernelPair);
  if (w) w->shape_data = {f};
  return w;
}

std::optional<ConeWitness> find_coequalizer(const FinCat& c, MorId g1, MorId g2) {
  if (c.dom(g1) != c.dom(g2) || c.cod(g1) != c.cod(g2))
    throw TypeMismatch("coequalizer needs a parallel pair");
  const ObjId x = c.cod(g1);
  for (ObjId apex = 0; apex < c.objects; ++apex)
    for (MorId q : c.hom(x, apex)) {
      std::vector<MediatedCone> comp;
      if (is_coequalizer_of(c, q, g1, g2, &comp))
        return ConeWitness{ConeShape::Coequalizer, apex, {q}, {g1, g2},
                           std::move(comp)};
    }
  return std::nullopt;
}

EpiClass classify_epi(const FinCat& c, MorId f) {
  EpiClass e;
  e.f = f;
  e.is_epi = is_epi(c, f);
  e.is_effective_epi = is_effective_epi(c, f);
  e.is_regular_epi = is_regular_epi(c, f);
  e.kernel_pair = kernel_pair(c, f);
  e.has_kernel_pair = e.kernel_pair.has_value();
  return e;
}

std::vector<EpiClass> classify_epis(const FinCat& c) {
  std::vector<EpiClass> out;
  out.reserve(c.n_mor());
  for (MorId f = 0; f < c.n_mor(); ++f) out.push_back(classify_epi(c, f));
  return out;
}

namespace {

struct FamilyConstraint {
  int i = 0;  // member positions; i <= j
  int j = 0;
  MorId g1 = kNoMor;  // e_i ∘ g1 == e_j ∘ g2 must hold
  MorId g2 = kNoMor;
};

// Shared implementation of the direct universal-property test (see the family
// structure in effective-epi terms: assignments that coequalize everything the
// family coequalizes must admit exactly one joint factorization).
bool effective_family_over_members(const FinCat& c, ObjId b,
                                   const std::vector<MorId>& mem) {
  const int k = static_cast<int>(mem.size());
  std::vector<std::vector<FamilyConstraint>> cons(std::max(k, 1));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      for (ObjId z = 0; z < c.objects; ++z)
        for (MorId g1 : c.hom(z, c.dom(mem[i])))
          for (MorId g2 : c.hom(z, c.dom(mem[j]))) {
            if (i == j && g1 >= g2) continue;
            if (c.compose(mem[i], g1) == c.compose(mem[j], g2))
              cons[j].push_back({i, j, g1, g2});
          }
    }

  std::vector<MorId> e(k, kNoMor);
  for (ObjId w = 0; w < c.objects; ++w) {
    bool failed = false;
    auto dfs = [&](auto&& self, int depth) -> void {
      if (failed) return;
      if (depth == k) {
        int cnt = 0;
        for (MorId d : c.hom(b, w)) {
          bool match = true;
          for (int i = 0; i < k && match; ++i)
            if (c.compose(d, mem[i]) != e[i]) match = false;
          if (match && ++cnt > 1) break;
        }
        if (cnt != 1) failed = true;
        return;
      }
      for (MorId cand : c.hom(c.dom(mem[depth]), w)) {
        e[depth] = cand;
        bool ok = true;
        for (const FamilyConstraint& con : cons[depth])
          if (c.compose(e[con.i], con.g1) != c.compose(e[con.j], con.g2)) {
            ok = false;
            break;
          }
        if (ok) self(self, depth + 1);
        if (failed) return;
      }
    };
    dfs(dfs, 0);
    if (failed) return false;
  }
  return true;
}

}  // namespace

bool is_effective_epi_family(const FinCat& c, const Presieve& fam) {
  return effective_family_over_members(c, fam.target, fam.members.members());
}

bool effective_family_via_sheaf(const FinCat& c, const Presieve& fam) {
  Sieve s = generate(c, fam);
  for (ObjId w = 0; w < c.objects; ++w)
    if (!is_sheaf_for_sieve(c, representable(c, w), s)) return false;
  return true;
}

bool is_projective(const FinCat& c, ObjId p) {
  for (MorId e = 0; e < c.n_mor(); ++e) {
    if (!is_epi(c, e)) continue;
    const ObjId a = c.dom(e);
    const ObjId b = c.cod(e);
    for (MorId f : c.hom(p, b)) {
      bool lifts = false;
      for (MorId g : c.hom(p, a))
        if (c.compose(e, g) == f) {
          lifts = true;
          break;
        }
      if (!lifts) return false;
    }
  }
  return true;
}

EpiTables::EpiTables(const FinCat& c) : c_(c) {
  const int m = c.n_mor();
  epi_.resize(m);
  effective_.resize(m);
  principal_.resize(m);
  eff_into_.resize(c.objects);
  for (MorId f = 0; f < m; ++f) {
    epi_[f] = is_epi(c, f);
    effective_[f] = is_effective_epi(c, f);
    principal_[f] = principal_sieve(c, f);
    if (effective_[f]) eff_into_[c.cod(f)].push_back(f);
  }
}

const std::vector<char>& EpiTables::effective_family_table(ObjId x,
                                                           const Limits& lim) {
  auto it = family_table_.find(x);
  if (it != family_table_.end()) return it->second;

  const auto& into = c_.into(x);
  int non_id = 0;
  for (MorId f : into)
    if (!c_.is_identity(f)) ++non_id;
  if (non_id > lim.max_fan_in)
    throw CapExceeded("family enumeration on " + c_.object_name(x) + " needs " +
                      std::to_string(non_id) + " generators, cap is " +
                      std::to_string(lim.max_fan_in));

  const int n = static_cast<int>(into.size());
  std::vector<char> table(std::size_t{1} << n, 0);
  std::vector<MorId> mem;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    mem.clear();
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) mem.push_back(into[i]);
    table[mask] = effective_family_over_members(c_, x, mem);
  }
  return family_table_[x] = std::move(table);
}

const std::vector<MorSet>& EpiTables::effective_presieves(ObjId x,
                                                          const Limits& lim) {
  auto it = family_sets_.find(x);
  if (it != family_sets_.end()) return it->second;

  const auto& table = effective_family_table(x, lim);
  const auto& into = c_.into(x);
  std::vector<MorSet> sets;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask]) continue;
    MorSet s(c_.n_mor());
    for (std::size_t i = 0; i < into.size(); ++i)
      if (mask >> i & 1) s.set(into[i]);
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end());
  return family_sets_[x] = std::move(sets);
}

}  // namespace sitecalc
