#include "sitecalc/sheaf.hpp"

#include <algorithm>
#include <map>

namespace sitecalc {

namespace {

struct Square {
  int i = 0;  // member positions, i <= j
  int j = 0;
  MorId g1 = kNoMor;
  MorId g2 = kNoMor;
};

// Per-presieve compatibility structure, reusable across presheaves.
class PresieveChecker {
 public:
  PresieveChecker(const FinCat& c, const Presieve& p)
      : c_(c), target_(p.target), mem_(p.members.members()) {
    const int k = static_cast<int>(mem_.size());
    by_depth_.resize(std::max(k, 1));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        for (ObjId z = 0; z < c.objects; ++z)
          for (MorId g1 : c.hom(z, c.dom(mem_[i])))
            for (MorId g2 : c.hom(z, c.dom(mem_[j]))) {
              if (i == j && g1 == g2) continue;
              if (c.compose(mem_[i], g1) == c.compose(mem_[j], g2))
                by_depth_[j].push_back({i, j, g1, g2});
            }
  }

  const std::vector<MorId>& members() const { return mem_; }

  // Exactly one amalgamation per compatible family.
  bool is_sheaf(const Presheaf& f, const Budget& budget) const {
    const int k = static_cast<int>(mem_.size());
    unsigned long long product = 1;
    bool empty_space = false;
    for (MorId m : mem_) {
      int r = f.carrier[c_.dom(m)];
      if (r == 0) {
        empty_space = true;
        break;
      }
      if (product > budget.family / r)
        throw BudgetExceeded("family space for a " + std::to_string(k) +
                             "-member presieve exceeds the budget");
      product *= static_cast<unsigned long long>(r);
    }
    if (empty_space) return true;  // no families at all

    std::vector<int> x(k, 0);
    bool failed = false;
    auto dfs = [&](auto&& self, int depth) -> void {
      if (failed) return;
      if (depth == k) {
        int cnt = 0;
        for (int cand = 0; cand < f.carrier[target_]; ++cand) {
          bool match = true;
          for (int i = 0; i < k && match; ++i)
            if (f.restriction[mem_[i]][cand] != x[i]) match = false;
          if (match && ++cnt > 1) break;
        }
        if (cnt != 1) failed = true;
        return;
      }
      for (int v = 0; v < f.carrier[c_.dom(mem_[depth])]; ++v) {
        x[depth] = v;
        bool ok = true;
        for (const Square& s : by_depth_[depth])
          if (f.restriction[s.g1][x[s.i]] != f.restriction[s.g2][x[s.j]]) {
            ok = false;
            break;
          }
        if (ok) self(self, depth + 1);
        if (failed) return;
      }
    };
    dfs(dfs, 0);
    return !failed;
  }

 private:
  const FinCat& c_;
  ObjId target_;
  std::vector<MorId> mem_;
  std::vector<std::vector<Square>> by_depth_;
};

Presieve presieve_of_sieve(const Sieve& s) { return Presieve{s.target, s.members}; }

}  // namespace

bool is_compatible(const FinCat& c, const Presheaf& f, const FamilyOfElements& fam) {
  const auto mem = fam.presieve.members.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i; j < mem.size(); ++j)
      for (ObjId z = 0; z < c.objects; ++z)
        for (MorId g1 : c.hom(z, c.dom(mem[i])))
          for (MorId g2 : c.hom(z, c.dom(mem[j]))) {
            if (i == j && g1 == g2) continue;
            if (c.compose(mem[i], g1) != c.compose(mem[j], g2)) continue;
            if (f.restriction[g1][fam.values[i]] != f.restriction[g2][fam.values[j]])
              return false;
          }
  return true;
}

std::vector<int> amalgamations(const FinCat& /*c*/, const Presheaf& f,
                               const FamilyOfElements& fam) {
  const auto mem = fam.presieve.members.members();
  std::vector<int> out;
  for (int cand = 0; cand < f.carrier[fam.presieve.target]; ++cand) {
    bool match = true;
    for (std::size_t i = 0; i < mem.size() && match; ++i)
      if (f.restriction[mem[i]][cand] != fam.values[i]) match = false;
    if (match) out.push_back(cand);
  }
  return out;
}

bool is_sheaf_for_presieve(const FinCat& c, const Presheaf& f, const Presieve& p,
                           const Budget& budget) {
  return PresieveChecker(c, p).is_sheaf(f, budget);
}

bool is_sheaf_for_sieve(const FinCat& c, const Presheaf& f, const Sieve& s,
                        const Budget& budget) {
  return is_sheaf_for_presieve(c, f, presieve_of_sieve(s), budget);
}

bool is_sheaf_for_topology(const FinCat& c, const Presheaf& f,
                           const GrothTopology& t, const Budget& budget) {
  for (const auto& per_object : t.covering)
    for (const Sieve& s : per_object)
      if (!is_sheaf_for_sieve(c, f, s, budget)) return false;
  return true;
}

bool is_sheaf_for_coverage(const FinCat& c, const Presheaf& f, const Coverage& cov,
                           const Budget& budget) {
  for (const auto& per_object : cov.covering)
    for (const Presieve& p : per_object)
      if (!is_sheaf_for_presieve(c, f, p, budget)) return false;
  return true;
}

bool equalizer_condition(const FinCat& c, const Presheaf& f, MorId pi,
                         const ConeWitness& kp) {
  if (kp.legs.size() != 2) throw NoKernelPair("witness does not have two legs");
  const MorId p1 = kp.legs[0];
  const MorId p2 = kp.legs[1];
  if (c.dom(p1) != kp.apex || c.dom(p2) != kp.apex || c.cod(p1) != c.dom(pi) ||
      c.cod(p2) != c.dom(pi) || c.compose(pi, p1) != c.compose(pi, p2))
    throw NoKernelPair("witness legs are not a kernel pair of the morphism");

  const auto& t_pi = f.restriction[pi];
  const auto& t1 = f.restriction[p1];
  const auto& t2 = f.restriction[p2];
  const int nb = f.carrier[c.cod(pi)];
  const int nx = f.carrier[c.dom(pi)];

  for (int a = 0; a < nb; ++a)
    for (int b = a + 1; b < nb; ++b)
      if (t_pi[a] == t_pi[b]) return false;

  std::vector<char> in_image(nx, 0);
  for (int a = 0; a < nb; ++a) in_image[t_pi[a]] = 1;
  for (int x = 0; x < nx; ++x)
    if ((t1[x] == t2[x]) != static_cast<bool>(in_image[x])) return false;
  return true;
}

std::optional<bool> presieve_equalizer_check(const FinCat& c, const Presheaf& f,
                                             const Presieve& p) {
  const auto mem = p.members.members();
  const int k = static_cast<int>(mem.size());

  struct PairPb {
    int i, j;
    ConeWitness w;
  };
  std::vector<PairPb> pbs;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto w = find_pullback(c, mem[i], mem[j]);
      if (!w) return std::nullopt;
      pbs.push_back({i, j, std::move(*w)});
    }

  // Tuple space of prod_i F(dom f_i); the sheaf diagram is an equalizer when
  // the restriction tuple map is injective with image the agreement set.
  unsigned long long product = 1;
  for (MorId m : mem) {
    int r = f.carrier[c.dom(m)];
    if (r == 0) {
      product = 0;
      break;
    }
    product *= static_cast<unsigned long long>(r);
    if (product > 4'000'000ull)
      throw BudgetExceeded("equalizer-diagram tuple space too large");
  }

  const int nb = f.carrier[p.target];
  std::vector<std::vector<int>> image;
  for (int x = 0; x < nb; ++x) {
    std::vector<int> tup(k);
    for (int i = 0; i < k; ++i) tup[i] = f.restriction[mem[i]][x];
    image.push_back(std::move(tup));
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end())
    return false;  // not injective

  if (product == 0) return true;

  std::vector<int> tup(k, 0);
  while (true) {
    bool agrees = true;
    for (const PairPb& pb : pbs) {
      const MorId q1 = pb.w.legs[0];
      const MorId q2 = pb.w.legs[1];
      if (f.restriction[q1][tup[pb.i]] != f.restriction[q2][tup[pb.j]]) {
        agrees = false;
        break;
      }
    }
    bool hit = std::binary_search(image.begin(), image.end(), tup);
    if (agrees != hit) return false;

    int d = k - 1;
    while (d >= 0) {
      if (++tup[d] < f.carrier[c.dom(mem[d])]) break;
      tup[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return true;
}

bool preserves_finite_products(const FinCat& c, const Presheaf& f) {
  auto initial = find_initial(c);
  if (!initial) throw NotExtensive("no initial object");
  if (f.carrier[*initial] != 1) return false;

  for (ObjId x = 0; x < c.objects; ++x)
    for (ObjId y = x; y < c.objects; ++y) {
      auto w = find_binary_coproduct(c, x, y);
      if (!w) continue;  // truncated category; quantify over what exists
      const auto& t1 = f.restriction[w->legs[0]];
      const auto& t2 = f.restriction[w->legs[1]];
      const int nc = f.carrier[w->apex];
      if (nc != f.carrier[x] * f.carrier[y]) return false;
      std::vector<std::pair<int, int>> seen;
      for (int z = 0; z < nc; ++z) seen.emplace_back(t1[z], t2[z]);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
  return true;
}

namespace {

struct Triple {
  MorId g, f, gf;
};

// Composition structure for the presheaf search: at step t, `checks[t]` are
// the triples that become fully assigned, and `forced[t]` (when set) forces
// the table of t from two earlier tables.
struct SearchPlan {
  std::vector<std::vector<Triple>> checks;
  std::vector<std::optional<std::pair<MorId, MorId>>> forced;
};

SearchPlan make_plan(const FinCat& c) {
  const int m = c.n_mor();
  SearchPlan plan;
  plan.checks.resize(m);
  plan.forced.resize(m);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (!c.composable(g, f)) continue;
      MorId gf = c.compose(g, f);
      if (gf == kNoMor) continue;
      MorId last = std::max({g, f, gf});
      plan.checks[last].push_back({g, f, gf});
      if (gf > g && gf > f && !plan.forced[gf]) plan.forced[gf] = {{g, f}};
    }
  return plan;
}

}  // namespace

std::vector<Presheaf> enumerate_presheaves(const FinCat& c, int max_carrier,
                                           const Budget& budget) {
  const int m = c.n_mor();
  const SearchPlan plan = make_plan(c);
  std::vector<Presheaf> out;
  std::uint64_t nodes = 0;

  std::vector<int> sizes(c.objects, 0);
  Presheaf cur;
  cur.carrier.resize(c.objects);
  cur.restriction.assign(m, {});

  auto consistent_at = [&](MorId t) {
    for (const Triple& tr : plan.checks[t]) {
      const auto& tg = cur.restriction[tr.g];
      const auto& tf = cur.restriction[tr.f];
      const auto& tgf = cur.restriction[tr.gf];
      for (std::size_t z = 0; z < tg.size(); ++z)
        if (tgf[z] != tf[tg[z]]) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, MorId t) -> void {
    if (t == m) {
      out.push_back(cur);
      return;
    }
    if (++nodes > budget.census)
      throw BudgetExceeded("presheaf enumeration exceeded the census budget");

    const int len = cur.carrier[c.cod(t)];
    const int radix = cur.carrier[c.dom(t)];
    auto& table = cur.restriction[t];

    if (c.is_identity(t)) {
      table.resize(len);
      for (int i = 0; i < len; ++i) table[i] = i;
      if (consistent_at(t)) self(self, t + 1);
      table.clear();
      return;
    }
    if (plan.forced[t]) {
      auto [g, f] = *plan.forced[t];
      const auto& tg = cur.restriction[g];
      const auto& tf = cur.restriction[f];
      table.resize(len);
      for (int z = 0; z < len; ++z) table[z] = tf[tg[z]];
      if (consistent_at(t)) self(self, t + 1);
      table.clear();
      return;
    }
    if (len == 0) {
      if (consistent_at(t)) self(self, t + 1);
      return;
    }
    if (radix == 0) return;  // no map from a nonempty set into an empty one

    table.assign(len, 0);
    while (true) {
      if (consistent_at(t)) self(self, t + 1);
      int d = len - 1;
      while (d >= 0) {
        if (++table[d] < radix) break;
        table[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
    table.clear();
  };

  auto sweep = [&](auto&& self, ObjId x) -> void {
    if (x == c.objects) {
      cur.carrier = sizes;
      dfs(dfs, 0);
      return;
    }
    for (int s = 0; s <= max_carrier; ++s) {
      sizes[x] = s;
      self(self, x + 1);
    }
  };
  sweep(sweep, 0);
  return out;
}

bool presheaves_isomorphic(const FinCat& c, const Presheaf& a, const Presheaf& b) {
  if (a.carrier != b.carrier) return false;

  // Morphisms become checkable once both endpoint bijections are chosen.
  std::vector<std::vector<MorId>> by_depth(c.objects);
  for (MorId f = 0; f < c.n_mor(); ++f)
    by_depth[std::max(c.dom(f), c.cod(f))].push_back(f);

  std::vector<std::vector<int>> phi(c.objects);
  auto natural_at = [&](MorId f) {
    const auto& px = phi[c.dom(f)];
    const auto& py = phi[c.cod(f)];
    for (int z = 0; z < a.carrier[c.cod(f)]; ++z)
      if (px[a.restriction[f][z]] != b.restriction[f][py[z]]) return false;
    return true;
  };

  auto dfs = [&](auto&& self, ObjId x) -> bool {
    if (x == c.objects) return true;
    std::vector<int> perm(a.carrier[x]);
    for (int i = 0; i < a.carrier[x]; ++i) perm[i] = i;
    do {
      phi[x] = perm;
      bool ok = true;
      for (MorId f : by_depth[x])
        if (!natural_at(f)) {
          ok = false;
          break;
        }
      if (ok && self(self, x + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return dfs(dfs, 0);
}

std::vector<Presheaf> sheaf_census(const FinCat& c, const GrothTopology& t,
                                   int max_carrier, const Budget& budget) {
  std::vector<PresieveChecker> checkers;
  for (const auto& per_object : t.covering)
    for (const Sieve& s : per_object)
      checkers.emplace_back(c, presieve_of_sieve(s));

  std::vector<Presheaf> census;
  for (const Presheaf& f : enumerate_presheaves(c, max_carrier, budget)) {
    bool sheaf = true;
    for (const auto& ck : checkers)
      if (!ck.is_sheaf(f, budget)) {
        sheaf = false;
        break;
      }
    if (!sheaf) continue;
    bool fresh = true;
    for (const Presheaf& rep : census)
      if (presheaves_isomorphic(c, rep, f)) {
        fresh = false;
        break;
      }
    if (fresh) census.push_back(f);
  }
  return census;
}

}  // namespace sitecalc
