#include "sitecalc/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace sitecalc {

namespace {

std::string digits_name(const std::vector<std::uint8_t>& d) {
  std::string s;
  for (std::uint8_t v : d) {
    s += std::to_string(static_cast<int>(v));
    s += '_';
  }
  if (!s.empty()) s.pop_back();
  return s;
}

// Shared machinery for function categories: objects with cardinalities and a
// predicate selecting the admissible functions per (dom, cod) pair.
template <typename Admissible>
void build_function_category(FinCat& cat,
                             std::vector<std::vector<std::uint8_t>>& maps,
                             const std::vector<int>& card, Admissible admissible,
                             const Limits& lim) {
  const int n = static_cast<int>(card.size());
  cat.objects = n;

  std::map<std::pair<std::pair<ObjId, ObjId>, std::vector<std::uint8_t>>, MorId> ids;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      if (card[a] > 0 && card[b] == 0) continue;
      std::vector<std::uint8_t> d(card[a], 0);
      while (true) {
        if (admissible(a, b, d)) {
          MorId id = static_cast<MorId>(cat.mor.size());
          cat.mor.push_back({a, b});
          maps.push_back(d);
          ids[{{a, b}, d}] = id;
        }
        int k = card[a] - 1;
        while (k >= 0) {
          if (++d[k] < card[b]) break;
          d[k] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }

  const int m = static_cast<int>(cat.mor.size());
  if (m > lim.max_morphisms)
    throw CapExceeded("generated category has " + std::to_string(m) +
                      " morphisms, cap is " + std::to_string(lim.max_morphisms));

  cat.identity.resize(n);
  for (ObjId a = 0; a < n; ++a) {
    std::vector<std::uint8_t> d(card[a]);
    std::iota(d.begin(), d.end(), 0);
    auto it = ids.find({{a, a}, d});
    if (it == ids.end())
      throw ValidationError("identity map is not admissible on object " +
                            std::to_string(a));
    cat.identity[a] = it->second;
  }

  cat.comp.assign(static_cast<std::size_t>(m) * m, kNoMor);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (cat.mor[f].cod != cat.mor[g].dom) continue;
      std::vector<std::uint8_t> d(maps[f].size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = maps[g][maps[f][i]];
      auto it = ids.find({{cat.mor[f].dom, cat.mor[g].cod}, d});
      if (it == ids.end())
        throw ValidationError("composite map is not admissible");
      cat.comp[static_cast<std::size_t>(g) * m + f] = it->second;
    }

  cat.morphism_names.resize(m);
  for (MorId f = 0; f < m; ++f) {
    if (f == cat.identity[cat.mor[f].dom])
      cat.morphism_names[f] = "id_" + cat.object_name(cat.mor[f].dom);
    else
      cat.morphism_names[f] = "f" + std::to_string(cat.mor[f].dom) + "_" +
                              std::to_string(cat.mor[f].cod) +
                              (maps[f].empty() ? "" : "_" + digits_name(maps[f]));
  }
  cat.finalize(lim);
}

}  // namespace

FinSetCategory gen_finset_skeleton(int n, const Limits& lim) {
  if (n < 0 || n + 1 > lim.max_objects)
    throw CapExceeded("skeleton size out of range");
  FinSetCategory out;
  out.card.resize(n + 1);
  std::iota(out.card.begin(), out.card.end(), 0);
  FinCat& cat = out.cat;
  cat.object_names.resize(n + 1);
  for (int k = 0; k <= n; ++k) cat.object_names[k] = std::to_string(k);
  build_function_category(
      cat, out.maps, out.card,
      [](ObjId, ObjId, const std::vector<std::uint8_t>&) { return true; }, lim);
  return out;
}

FinSetFamilyCategory gen_finset_family(const std::vector<std::vector<int>>& sets,
                                       const Limits& lim) {
  FinSetFamilyCategory out;
  out.sets = sets;
  std::vector<int> card;
  for (auto& s : out.sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("set with repeated elements");
    card.push_back(static_cast<int>(s.size()));
  }
  FinCat& cat = out.cat;
  cat.object_names.resize(sets.size());
  for (std::size_t i = 0; i < out.sets.size(); ++i) {
    std::string nm = "set";
    for (int e : out.sets[i]) nm += "_" + std::to_string(e);
    cat.object_names[i] = nm;
  }
  build_function_category(
      cat, out.maps, card,
      [](ObjId, ObjId, const std::vector<std::uint8_t>&) { return true; }, lim);
  return out;
}

bool Space::is_open(std::uint32_t u) const {
  return std::binary_search(opens.begin(), opens.end(), u);
}

FinTopCategory gen_fintop(int n, const Limits& lim) {
  if (n < 0 || n > 3) throw CapExceeded("fintop is bounded to point sets of size 3");
  FinTopCategory out;
  for (int k = 0; k <= n; ++k) {
    const std::uint32_t full = (k == 0) ? 0 : ((1u << k) - 1);
    const int inner = std::max(0, (1 << k) - 2);  // subsets besides {} and full
    for (std::uint32_t pick = 0; pick < (1u << inner); ++pick) {
      std::vector<std::uint32_t> opens = {0};
      if (full != 0) opens.push_back(full);
      int slot = 0;
      for (std::uint32_t u = 1; u < full; ++u)
        if (pick >> slot++ & 1) opens.push_back(u);
      std::sort(opens.begin(), opens.end());
      opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
      bool closed = true;
      for (std::uint32_t a : opens)
        for (std::uint32_t b : opens)
          if (!std::binary_search(opens.begin(), opens.end(), a | b) ||
              !std::binary_search(opens.begin(), opens.end(), a & b))
            closed = false;
      if (closed) out.spaces.push_back({k, opens});
    }
  }

  std::vector<int> card;
  for (const Space& s : out.spaces) card.push_back(s.points);
  FinCat& cat = out.cat;
  cat.object_names.resize(out.spaces.size());
  {
    int idx_within = 0, last_k = -1;
    for (std::size_t i = 0; i < out.spaces.size(); ++i) {
      if (out.spaces[i].points != last_k) {
        last_k = out.spaces[i].points;
        idx_within = 0;
      }
      cat.object_names[i] =
          "s" + std::to_string(out.spaces[i].points) + "_" + std::to_string(idx_within++);
    }
  }
  build_function_category(
      cat, out.maps, card,
      [&](ObjId a, ObjId b, const std::vector<std::uint8_t>& d) {
        for (std::uint32_t u : out.spaces[b].opens) {
          std::uint32_t pre = 0;
          for (std::size_t i = 0; i < d.size(); ++i)
            if (u >> d[i] & 1) pre |= 1u << i;
          if (!out.spaces[a].is_open(pre)) return false;
        }
        return true;
      },
      lim);
  return out;
}

FinCat gen_poset(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  for (const auto& row : leq)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("relation table is not square");
  for (int i = 0; i < n; ++i)
    if (!leq[i][i]) throw ValidationError("relation is not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i])
        throw ValidationError("relation is not antisymmetric");
      for (int k = 0; k < n; ++k)
        if (leq[i][j] && leq[j][k] && !leq[i][k])
          throw ValidationError("relation is not transitive");
    }

  FinCat cat;
  cat.objects = n;
  cat.object_names.resize(n);
  for (int i = 0; i < n; ++i) cat.object_names[i] = "p" + std::to_string(i);
  std::vector<std::vector<MorId>> at(n, std::vector<MorId>(n, kNoMor));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) {
        at[i][j] = static_cast<MorId>(cat.mor.size());
        cat.mor.push_back({i, j});
        cat.morphism_names.push_back(i == j ? "id_p" + std::to_string(i)
                                            : "le" + std::to_string(i) + "_" +
                                                  std::to_string(j));
      }
  cat.identity.resize(n);
  for (int i = 0; i < n; ++i) cat.identity[i] = at[i][i];
  const int m = cat.n_mor();
  cat.comp.assign(static_cast<std::size_t>(m) * m, kNoMor);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (cat.mor[f].cod == cat.mor[g].dom)
        cat.comp[static_cast<std::size_t>(g) * m + f] =
            at[cat.mor[f].dom][cat.mor[g].cod];
  cat.finalize();
  return cat;
}

FinCat gen_monoid(const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw ValidationError("empty multiplication table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw ValidationError("table entry out of range");
  }
  int unit = -1;
  for (int e = 0; e < n && unit < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n; ++x)
      if (mul[e][x] != x || mul[x][e] != x) ok = false;
    if (ok) unit = e;
  }
  if (unit < 0) throw ValidationError("no unit element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw ValidationError("multiplication is not associative");

  FinCat cat;
  cat.objects = 1;
  cat.object_names = {"x"};
  cat.mor.assign(n, {0, 0});
  cat.morphism_names.resize(n);
  for (int i = 0; i < n; ++i)
    cat.morphism_names[i] = i == unit ? "id_x" : "g" + std::to_string(i);
  cat.identity = {unit};
  cat.comp.resize(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      cat.comp[static_cast<std::size_t>(g) * n + f] = mul[g][f];
  cat.finalize();
  return cat;
}

FinCat walking_arrow() {
  FinCat cat = gen_poset({{true, true}, {false, true}});
  cat.object_names = {"a", "b"};
  cat.morphism_names = {"id_a", "f", "id_b"};
  return cat;
}

bool map_surjective(const FinSetCategory& c, MorId f) {
  const int k = c.card[c.cat.cod(f)];
  std::vector<bool> hit(k, false);
  for (std::uint8_t v : c.maps[f]) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool map_surjective(const FinSetFamilyCategory& c, MorId f) {
  const int k = static_cast<int>(c.sets[c.cat.cod(f)].size());
  std::vector<bool> hit(k, false);
  for (std::uint8_t v : c.maps[f]) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool map_surjective(const FinTopCategory& c, MorId f) {
  const int k = c.spaces[c.cat.cod(f)].points;
  std::vector<bool> hit(k, false);
  for (std::uint8_t v : c.maps[f]) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_quotient_map(const FinTopCategory& c, MorId f) {
  if (!map_surjective(c, f)) return false;
  const Space& dom = c.spaces[c.cat.dom(f)];
  const Space& cod = c.spaces[c.cat.cod(f)];
  const std::uint32_t full = (cod.points == 0) ? 0 : ((1u << cod.points) - 1);
  std::vector<std::uint32_t> final_opens;
  for (std::uint32_t u = 0; u <= full; ++u) {
    std::uint32_t pre = 0;
    for (std::size_t i = 0; i < c.maps[f].size(); ++i)
      if (u >> c.maps[f][i] & 1) pre |= 1u << i;
    if (dom.is_open(pre)) final_opens.push_back(u);
    if (full == 0) break;
  }
  return final_opens == cod.opens;
}

FinFunctor skeleton_inclusion(const FinSetCategory& skel,
                              const FinSetFamilyCategory& full) {
  FinFunctor f;
  f.object_map.resize(skel.cat.objects, kNoObj);
  for (ObjId k = 0; k < skel.cat.objects; ++k) {
    for (std::size_t i = 0; i < full.sets.size(); ++i)
      if (static_cast<int>(full.sets[i].size()) == skel.card[k]) {
        f.object_map[k] = static_cast<ObjId>(i);
        break;
      }
    if (f.object_map[k] == kNoObj)
      throw ValidationError("family has no set of cardinality " + std::to_string(k));
  }
  f.morphism_map.resize(skel.cat.n_mor(), kNoMor);
  for (MorId m = 0; m < skel.cat.n_mor(); ++m) {
    const ObjId a = f.object_map[skel.cat.dom(m)];
    const ObjId b = f.object_map[skel.cat.cod(m)];
    for (MorId g = 0; g < full.cat.n_mor(); ++g)
      if (full.cat.dom(g) == a && full.cat.cod(g) == b && full.maps[g] == skel.maps[m]) {
        f.morphism_map[m] = g;
        break;
      }
    if (f.morphism_map[m] == kNoMor)
      throw ValidationError("missing image for a skeleton morphism");
  }
  return f;
}

FinCat random_poset(std::mt19937_64& rng, int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) leq[i][j] = true;
  // transitive closure keeps it a partial order on the index chain
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return gen_poset(leq);
}

std::vector<FinCat> all_monoids(int size) {
  std::vector<FinCat> out;
  if (size < 1 || size > 3) return out;
  std::vector<std::vector<int>> mul(size, std::vector<int>(size));
  for (int i = 0; i < size; ++i) {
    mul[0][i] = i;  // element 0 is the unit
    mul[i][0] = i;
  }
  const int free_slots = (size - 1) * (size - 1);
  int total = 1;
  for (int i = 0; i < free_slots; ++i) total *= size;
  for (int assign = 0; assign < total; ++assign) {
    int a = assign;
    for (int i = 1; i < size; ++i)
      for (int j = 1; j < size; ++j) {
        mul[i][j] = a % size;
        a /= size;
      }
    try {
      out.push_back(gen_monoid(mul));
    } catch (const ValidationError&) {
    }
  }
  return out;
}

}  // namespace sitecalc
