#include "sitecalc/sieve.hpp"

#include <algorithm>

namespace sitecalc {

Presieve make_presieve(const FinCat& c, ObjId target,
                       const std::vector<MorId>& members) {
  Presieve p;
  p.target = target;
  p.members = MorSet(c.n_mor());
  for (MorId f : members) {
    if (c.cod(f) != target)
      throw TypeMismatch("presieve member " + c.morphism_name(f) +
                         " does not target " + c.object_name(target));
    p.members.set(f);
  }
  return p;
}

bool is_sieve_closed(const FinCat& c, ObjId target, const MorSet& members) {
  bool ok = true;
  members.for_each([&](int f) {
    if (c.cod(f) != target) ok = false;
    for (MorId g : c.into(c.dom(f)))
      if (!members.test(c.compose(f, g))) ok = false;
  });
  return ok;
}

MorSet principal_sieve(const FinCat& c, MorId f) {
  MorSet s(c.n_mor());
  for (MorId g : c.into(c.dom(f))) s.set(c.compose(f, g));
  return s;
}

Sieve generate(const FinCat& c, const Presieve& p) {
  Sieve s;
  s.target = p.target;
  s.members = MorSet(c.n_mor());
  p.members.for_each([&](int f) { s.members |= principal_sieve(c, f); });
  return s;
}

Sieve top_sieve(const FinCat& c, ObjId x) {
  Sieve s;
  s.target = x;
  s.members = MorSet(c.n_mor());
  for (MorId f : c.into(x)) s.members.set(f);
  return s;
}

Sieve pullback_sieve(const FinCat& c, const Sieve& s, MorId f) {
  if (c.cod(f) != s.target)
    throw TypeMismatch("pullback along " + c.morphism_name(f) +
                       " does not target the sieve's object");
  Sieve out;
  out.target = c.dom(f);
  out.members = MorSet(c.n_mor());
  for (MorId g : c.into(c.dom(f)))
    if (s.members.test(c.compose(f, g))) out.members.set(g);
  return out;
}

Sieve intersect(const Sieve& a, const Sieve& b) {
  if (a.target != b.target) throw TypeMismatch("sieve intersection targets differ");
  Sieve out = a;
  out.members &= b.members;
  return out;
}

std::vector<Sieve> enumerate_sieves(const FinCat& c, ObjId x, const Limits& lim) {
  std::vector<MorId> gen;
  for (MorId f : c.into(x))
    if (f != c.id_of(x)) gen.push_back(f);
  if (static_cast<int>(gen.size()) > lim.max_fan_in)
    throw CapExceeded("object " + c.object_name(x) + " has " +
                      std::to_string(gen.size()) +
                      " non-identity incoming morphisms, cap is " +
                      std::to_string(lim.max_fan_in));

  std::vector<MorSet> principal(gen.size());
  for (std::size_t i = 0; i < gen.size(); ++i)
    principal[i] = principal_sieve(c, gen[i]);

  std::vector<Sieve> out;
  out.reserve(std::size_t{1} << gen.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gen.size()); ++mask) {
    Sieve s;
    s.target = x;
    s.members = MorSet(c.n_mor());
    for (std::size_t i = 0; i < gen.size(); ++i)
      if (mask >> i & 1) s.members |= principal[i];
    out.push_back(std::move(s));
  }
  out.push_back(top_sieve(c, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Sieve pushforward_sieve(const FinCat& /*src*/, const FinCat& dst,
                        const FinFunctor& f, const Sieve& s) {
  Sieve out;
  out.target = f.object_map[s.target];
  out.members = MorSet(dst.n_mor());
  s.members.for_each(
      [&](int g) { out.members |= principal_sieve(dst, f.morphism_map[g]); });
  return out;
}

Sieve functor_pullback_sieve(const FinCat& src, const FinCat& /*dst*/,
                             const FinFunctor& f, const Sieve& s, ObjId x) {
  if (s.target != f.object_map[x])
    throw TypeMismatch("sieve does not live on the image of the given object");
  Sieve out;
  out.target = x;
  out.members = MorSet(src.n_mor());
  for (MorId g : src.into(x))
    if (s.members.test(f.morphism_map[g])) out.members.set(g);
  return out;
}

Sieve image_sieve(const FinCat& /*src*/, const FinCat& dst,
                  const FinFunctor& f, ObjId y) {
  std::vector<bool> in_image(dst.objects, false);
  for (ObjId x : f.object_map) in_image[x] = true;
  Sieve out;
  out.target = y;
  out.members = MorSet(dst.n_mor());
  for (MorId k : dst.into(y))
    if (in_image[dst.dom(k)]) out.members |= principal_sieve(dst, k);
  return out;
}

}  // namespace sitecalc
