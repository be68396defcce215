#include "sitecalc/fincat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace sitecalc {

Budget budget_from_env() {
  Budget b;
  if (const char* s = std::getenv("SITECALC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) {
      b.family = v;
      b.census = v;
    }
  }
  return b;
}

std::string FinCat::object_name(ObjId x) const {
  if (x >= 0 && x < static_cast<ObjId>(object_names.size()) && !object_names[x].empty())
    return object_names[x];
  return "ob" + std::to_string(x);
}

std::string FinCat::morphism_name(MorId f) const {
  if (f >= 0 && f < static_cast<MorId>(morphism_names.size()) &&
      !morphism_names[f].empty())
    return morphism_names[f];
  return "m" + std::to_string(f);
}

void FinCat::finalize(const Limits& lim) {
  const int m = n_mor();
  if (objects < 0 || objects > lim.max_objects)
    throw CapExceeded("object count " + std::to_string(objects) + " exceeds cap " +
                      std::to_string(lim.max_objects));
  if (m > lim.max_morphisms)
    throw CapExceeded("morphism count " + std::to_string(m) + " exceeds cap " +
                      std::to_string(lim.max_morphisms));
  if (static_cast<int>(identity.size()) != objects)
    throw MalformedTable("identity table size mismatch");
  if (comp.size() != static_cast<std::size_t>(m) * m)
    throw MalformedTable("composition table size mismatch");
  for (const Mor& f : mor)
    if (f.dom < 0 || f.dom >= objects || f.cod < 0 || f.cod >= objects)
      throw MalformedTable("morphism endpoint out of range");
  for (MorId i : identity)
    if (i < 0 || i >= m) throw MalformedTable("identity id out of range");
  for (MorId c : comp)
    if (c != kNoMor && (c < 0 || c >= m))
      throw MalformedTable("composition entry out of range");

  into_.assign(objects, {});
  from_.assign(objects, {});
  hom_.assign(static_cast<std::size_t>(objects) * std::max(objects, 1), {});
  for (MorId f = 0; f < m; ++f) {
    into_[mor[f].cod].push_back(f);
    from_[mor[f].dom].push_back(f);
    hom_[static_cast<std::size_t>(mor[f].dom) * objects + mor[f].cod].push_back(f);
  }
}

bool FinCat::structurally_equal(const FinCat& o) const {
  if (objects != o.objects || mor.size() != o.mor.size()) return false;
  for (std::size_t i = 0; i < mor.size(); ++i)
    if (mor[i].dom != o.mor[i].dom || mor[i].cod != o.mor[i].cod) return false;
  return identity == o.identity && comp == o.comp;
}

FinFunctor identity_functor(const FinCat& c) {
  FinFunctor f;
  f.object_map.resize(c.objects);
  f.morphism_map.resize(c.n_mor());
  for (ObjId x = 0; x < c.objects; ++x) f.object_map[x] = x;
  for (MorId m = 0; m < c.n_mor(); ++m) f.morphism_map[m] = m;
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor out;
  out.object_map.resize(f.object_map.size());
  out.morphism_map.resize(f.morphism_map.size());
  for (std::size_t x = 0; x < f.object_map.size(); ++x)
    out.object_map[x] = g.object_map[f.object_map[x]];
  for (std::size_t m = 0; m < f.morphism_map.size(); ++m)
    out.morphism_map[m] = g.morphism_map[f.morphism_map[m]];
  return out;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "OK";
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << v.law;
    if (!v.ids.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.ids.size(); ++i)
        os << (i ? " " : "") << v.ids[i];
      os << "]";
    }
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

namespace {

void add(ValidationReport& r, std::string law, std::vector<int> ids,
         std::string detail) {
  r.violations.push_back({std::move(law), std::move(ids), std::move(detail)});
}

}  // namespace

ValidationReport validate_category(const FinCat& c) {
  ValidationReport r;
  const int m = c.n_mor();

  bool malformed = false;
  auto bad = [&](std::string detail, std::vector<int> ids = {}) {
    add(r, "malformed-table", std::move(ids), std::move(detail));
    malformed = true;
  };
  if (c.objects < 0) bad("negative object count");
  if (static_cast<int>(c.identity.size()) != c.objects)
    bad("identity table has " + std::to_string(c.identity.size()) + " entries for " +
        std::to_string(c.objects) + " objects");
  if (c.comp.size() != static_cast<std::size_t>(m) * m)
    bad("composition table has " + std::to_string(c.comp.size()) +
        " entries, expected " + std::to_string(static_cast<std::size_t>(m) * m));
  for (MorId f = 0; f < m; ++f)
    if (c.mor[f].dom < 0 || c.mor[f].dom >= c.objects || c.mor[f].cod < 0 ||
        c.mor[f].cod >= c.objects)
      bad("morphism endpoint out of range", {f});
  if (static_cast<int>(c.identity.size()) == c.objects)
    for (ObjId x = 0; x < c.objects; ++x)
      if (c.identity[x] < 0 || c.identity[x] >= m)
        bad("identity id out of range for object " + std::to_string(x));
  if (c.comp.size() == static_cast<std::size_t>(m) * m)
    for (std::size_t i = 0; i < c.comp.size(); ++i)
      if (c.comp[i] != kNoMor && (c.comp[i] < 0 || c.comp[i] >= m))
        bad("composition entry out of range",
            {static_cast<int>(i / m), static_cast<int>(i % m)});
  if (malformed) return r;

  for (ObjId x = 0; x < c.objects; ++x) {
    MorId i = c.identity[x];
    if (c.dom(i) != x || c.cod(i) != x)
      add(r, "identity-endpoints", {x, i},
          "identity of " + c.object_name(x) + " is not an endomorphism");
  }

  for (MorId g = 0; g < m; ++g) {
    for (MorId f = 0; f < m; ++f) {
      MorId gf = c.compose(g, f);
      if (c.cod(f) != c.dom(g)) {
        if (gf != kNoMor)
          add(r, "composition-definedness", {g, f},
              "defined on a non-composable pair");
        continue;
      }
      if (gf == kNoMor) {
        add(r, "composition-definedness", {g, f},
            "undefined on a composable pair");
        continue;
      }
      if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g))
        add(r, "composition-typing", {g, f, gf},
            "composite endpoints disagree with factors");
    }
  }

  // Identity laws, only meaningful where typing held.
  for (MorId f = 0; f < m; ++f) {
    MorId l = c.compose(c.identity[c.cod(f)], f);
    if (l != kNoMor && l != f)
      add(r, "left-identity", {c.identity[c.cod(f)], f, l}, "");
    MorId rr = c.compose(f, c.identity[c.dom(f)]);
    if (rr != kNoMor && rr != f)
      add(r, "right-identity", {f, c.identity[c.dom(f)], rr}, "");
  }

  // Associativity over all composable triples.
  std::vector<std::vector<MorId>> from(c.objects);
  for (MorId f = 0; f < m; ++f) from[c.dom(f)].push_back(f);
  for (MorId f = 0; f < m; ++f)
    for (MorId g : from[c.cod(f)]) {
      MorId gf = c.compose(g, f);
      if (gf == kNoMor) continue;
      for (MorId h : from[c.cod(g)]) {
        MorId hg = c.compose(h, g);
        if (hg == kNoMor || c.compose(h, gf) == kNoMor ||
            c.compose(hg, f) == kNoMor)
          continue;
        if (c.compose(h, gf) != c.compose(hg, f))
          add(r, "associativity", {h, g, f}, "");
      }
    }
  return r;
}

ValidationReport validate_functor(const FinCat& src, const FinCat& dst,
                                  const FinFunctor& fun) {
  ValidationReport r;
  if (static_cast<int>(fun.object_map.size()) != src.objects ||
      static_cast<int>(fun.morphism_map.size()) != src.n_mor()) {
    add(r, "malformed-table", {}, "functor map sizes disagree with the source");
    return r;
  }
  for (ObjId x = 0; x < src.objects; ++x)
    if (fun.object_map[x] < 0 || fun.object_map[x] >= dst.objects) {
      add(r, "malformed-table", {x}, "object image out of range");
      return r;
    }
  for (MorId f = 0; f < src.n_mor(); ++f)
    if (fun.morphism_map[f] < 0 || fun.morphism_map[f] >= dst.n_mor()) {
      add(r, "malformed-table", {f}, "morphism image out of range");
      return r;
    }

  for (MorId f = 0; f < src.n_mor(); ++f) {
    MorId ff = fun.morphism_map[f];
    if (dst.dom(ff) != fun.object_map[src.dom(f)] ||
        dst.cod(ff) != fun.object_map[src.cod(f)])
      add(r, "functor-endpoints", {f, ff}, "image endpoints do not match");
  }
  for (ObjId x = 0; x < src.objects; ++x)
    if (fun.morphism_map[src.identity[x]] != dst.identity[fun.object_map[x]])
      add(r, "functor-identity", {x}, "identity not sent to identity");
  for (MorId g = 0; g < src.n_mor(); ++g)
    for (MorId f = 0; f < src.n_mor(); ++f) {
      if (!src.composable(g, f)) continue;
      MorId gf = src.compose(g, f);
      MorId img = dst.compose(fun.morphism_map[g], fun.morphism_map[f]);
      if (gf == kNoMor || img == kNoMor) continue;
      if (fun.morphism_map[gf] != img)
        add(r, "functor-composition", {g, f}, "composite image disagrees");
    }
  return r;
}

ValidationReport validate_presheaf(const FinCat& c, const Presheaf& p) {
  ValidationReport r;
  const int m = c.n_mor();
  if (static_cast<int>(p.carrier.size()) != c.objects ||
      static_cast<int>(p.restriction.size()) != m) {
    add(r, "carrier-mismatch", {}, "carrier or restriction table count is wrong");
    return r;
  }
  for (ObjId x = 0; x < c.objects; ++x)
    if (p.carrier[x] < 0) {
      add(r, "carrier-mismatch", {x}, "negative carrier size");
      return r;
    }
  bool shape_ok = true;
  for (MorId f = 0; f < m; ++f) {
    const auto& t = p.restriction[f];
    if (static_cast<int>(t.size()) != p.carrier[c.cod(f)]) {
      add(r, "carrier-mismatch", {f},
          "table length " + std::to_string(t.size()) + " expected " +
              std::to_string(p.carrier[c.cod(f)]));
      shape_ok = false;
      continue;
    }
    for (int v : t)
      if (v < 0 || v >= p.carrier[c.dom(f)]) {
        add(r, "carrier-mismatch", {f}, "table value out of range");
        shape_ok = false;
        break;
      }
  }
  if (!shape_ok) return r;

  for (ObjId x = 0; x < c.objects; ++x) {
    const auto& t = p.restriction[c.identity[x]];
    for (int i = 0; i < p.carrier[x]; ++i)
      if (t[i] != i) {
        add(r, "identity-restriction", {x, c.identity[x]},
            "restriction along the identity is not the identity");
        break;
      }
  }
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (!c.composable(g, f)) continue;
      MorId gf = c.compose(g, f);
      if (gf == kNoMor) continue;
      const auto& tf = p.restriction[f];
      const auto& tg = p.restriction[g];
      const auto& tgf = p.restriction[gf];
      for (int z = 0; z < p.carrier[c.cod(g)]; ++z)
        if (tgf[z] != tf[tg[z]]) {
          add(r, "contravariant-functoriality", {g, f, gf}, "");
          break;
        }
    }
  return r;
}

bool is_fully_faithful(const FinCat& src, const FinCat& dst, const FinFunctor& f) {
  for (ObjId x = 0; x < src.objects; ++x)
    for (ObjId y = 0; y < src.objects; ++y) {
      const auto& h = src.hom(x, y);
      const auto& ih = dst.hom(f.object_map[x], f.object_map[y]);
      if (h.size() != ih.size()) return false;
      std::vector<MorId> img;
      img.reserve(h.size());
      for (MorId g : h) img.push_back(f.morphism_map[g]);
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
    }
  return true;
}

int hom_rank(const FinCat& c, MorId f) {
  const auto& h = c.hom(c.dom(f), c.cod(f));
  return static_cast<int>(std::lower_bound(h.begin(), h.end(), f) - h.begin());
}

Presheaf representable(const FinCat& c, ObjId w) {
  Presheaf p;
  p.carrier.resize(c.objects);
  for (ObjId x = 0; x < c.objects; ++x)
    p.carrier[x] = static_cast<int>(c.hom(x, w).size());
  p.restriction.resize(c.n_mor());
  for (MorId f = 0; f < c.n_mor(); ++f) {
    const auto& at_cod = c.hom(c.cod(f), w);
    auto& t = p.restriction[f];
    t.resize(at_cod.size());
    for (std::size_t j = 0; j < at_cod.size(); ++j)
      t[j] = hom_rank(c, c.compose(at_cod[j], f));
    }
  return p;
}

}  // namespace sitecalc
