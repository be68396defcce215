#include <random>

#include "doctest.h"
#include "sitecalc/generators.hpp"
#include "sitecalc/sieve.hpp"

using namespace sitecalc;

namespace {

MorId the_map(const FinSetCategory& c, ObjId a, ObjId b,
              std::vector<std::uint8_t> digits) {
  for (MorId f : c.cat.hom(a, b))
    if (c.maps[f] == digits) return f;
  REQUIRE(false);
  return kNoMor;
}

}  // namespace

TEST_CASE("generate on empty and identity presieves") {
  FinCat arrow = walking_arrow();
  Presieve empty = make_presieve(arrow, 1, {});
  CHECK(generate(arrow, empty).members.empty());

  Presieve ident = make_presieve(arrow, 1, {arrow.identity[1]});
  CHECK(generate(arrow, ident) == top_sieve(arrow, 1));
}

TEST_CASE("a split epi generates the top sieve") {
  FinSetCategory s = gen_finset_skeleton(2);
  MorId u = the_map(s, 2, 1, {0, 0});
  Sieve g = generate(s.cat, make_presieve(s.cat, 1, {u}));
  CHECK(g == top_sieve(s.cat, 1));
}

TEST_CASE("pullback of sieves") {
  FinCat arrow = walking_arrow();
  MorId f = kNoMor;
  for (MorId m = 0; m < arrow.n_mor(); ++m)
    if (arrow.dom(m) != arrow.cod(m)) f = m;

  CHECK(pullback_sieve(arrow, top_sieve(arrow, 1), f) == top_sieve(arrow, 0));

  Sieve just_f = generate(arrow, make_presieve(arrow, 1, {f}));
  CHECK(just_f.members.count() == 1);
  CHECK(pullback_sieve(arrow, just_f, f) == top_sieve(arrow, 0));
  CHECK(pullback_sieve(arrow, just_f, arrow.identity[1]) == just_f);

  CHECK_THROWS_AS(pullback_sieve(arrow, just_f, arrow.identity[0]), TypeMismatch);
}

TEST_CASE("top sieve sizes") {
  FinCat one = gen_monoid({{0}});
  CHECK(top_sieve(one, 0).members.count() == 1);

  FinCat arrow = walking_arrow();
  CHECK(top_sieve(arrow, 1).members.count() == 2);

  FinSetCategory s = gen_finset_skeleton(2);
  CHECK(top_sieve(s.cat, 2).members.count() == 7);
}

TEST_CASE("sieve enumeration matches hand counts") {
  FinCat arrow = walking_arrow();
  CHECK(enumerate_sieves(arrow, 0).size() == 2);
  CHECK(enumerate_sieves(arrow, 1).size() == 3);

  FinCat one = gen_monoid({{0}});
  CHECK(enumerate_sieves(one, 0).size() == 2);

  FinSetCategory s = gen_finset_skeleton(2);
  CHECK(enumerate_sieves(s.cat, 0).size() == 2);
  CHECK(enumerate_sieves(s.cat, 1).size() == 3);
  CHECK(enumerate_sieves(s.cat, 2).size() == 6);

  for (ObjId x = 0; x < 3; ++x) {
    auto sieves = enumerate_sieves(s.cat, x);
    for (const Sieve& sv : sieves) CHECK(is_sieve_closed(s.cat, x, sv.members));
    // contains both the empty sieve and the top sieve
    CHECK(sieves.front().members.empty());
    bool has_top = false;
    for (const Sieve& sv : sieves)
      if (sv == top_sieve(s.cat, x)) has_top = true;
    CHECK(has_top);
  }

  Limits tight;
  tight.max_fan_in = 2;
  CHECK_THROWS_AS(enumerate_sieves(s.cat, 2, tight), CapExceeded);
}

TEST_CASE("generate is a closure operator on random presieves") {
  FinSetCategory s = gen_finset_skeleton(2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    ObjId x = static_cast<ObjId>(rng() % 3);
    Presieve p{x, MorSet(s.cat.n_mor())};
    for (MorId f : s.cat.into(x))
      if (rng() & 1) p.members.set(f);
    Sieve g = generate(s.cat, p);
    CHECK(p.members.subset_of(g.members));        // extensive
    CHECK(generate(s.cat, {x, g.members}) == g);  // idempotent
    Presieve smaller{x, MorSet(s.cat.n_mor())};
    p.members.for_each([&](int f) {
      if (rng() & 1) smaller.members.set(f);
    });
    CHECK(generate(s.cat, smaller).members.subset_of(g.members));  // monotone
    CHECK(is_sieve_closed(s.cat, x, g.members));
  }
}

TEST_CASE("pullback commutes with intersection") {
  FinSetCategory s = gen_finset_skeleton(2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    ObjId x = static_cast<ObjId>(rng() % 3);
    auto sieves = enumerate_sieves(s.cat, x);
    const Sieve& a = sieves[rng() % sieves.size()];
    const Sieve& b = sieves[rng() % sieves.size()];
    for (MorId f : s.cat.into(x)) {
      Sieve lhs = pullback_sieve(s.cat, intersect(a, b), f);
      Sieve rhs =
          intersect(pullback_sieve(s.cat, a, f), pullback_sieve(s.cat, b, f));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("functor transport of sieves") {
  FinSetCategory skel = gen_finset_skeleton(2);
  FinSetFamilyCategory full = gen_finset_family({{}, {0}, {0, 1}, {5}, {3, 7}});
  FinFunctor inc = skeleton_inclusion(skel, full);
  REQUIRE(validate_functor(skel.cat, full.cat, inc).ok());

  FinFunctor id = identity_functor(skel.cat);
  for (ObjId x = 0; x < 3; ++x)
    for (const Sieve& s : enumerate_sieves(skel.cat, x)) {
      CHECK(pushforward_sieve(skel.cat, skel.cat, id, s) == s);
      CHECK(functor_pullback_sieve(skel.cat, skel.cat, id, s, x) == s);
    }

  // Pushforward of the sieve generated by the retraction is top on the image.
  MorId u = the_map(skel, 2, 1, {0, 0});
  Sieve g = generate(skel.cat, make_presieve(skel.cat, 1, {u}));
  Sieve pushed = pushforward_sieve(skel.cat, full.cat, inc, g);
  CHECK(pushed == top_sieve(full.cat, inc.object_map[1]));

  // Transported sieves stay downward closed.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    ObjId x = static_cast<ObjId>(rng() % 3);
    auto sieves = enumerate_sieves(skel.cat, x);
    const Sieve& s = sieves[rng() % sieves.size()];
    Sieve fwd = pushforward_sieve(skel.cat, full.cat, inc, s);
    CHECK(is_sieve_closed(full.cat, fwd.target, fwd.members));
    for (const Sieve& t : enumerate_sieves(full.cat, inc.object_map[x])) {
      Sieve back = functor_pullback_sieve(skel.cat, full.cat, inc, t, x);
      CHECK(is_sieve_closed(skel.cat, x, back.members));
    }
  }

  for (ObjId y = 0; y < full.cat.objects; ++y) {
    Sieve img = image_sieve(skel.cat, full.cat, inc, y);
    CHECK(is_sieve_closed(full.cat, y, img.members));
    CHECK(img == top_sieve(full.cat, y));  // skeleton hits every cardinality
  }
}

TEST_CASE("image sieve of a non-dense inclusion") {
  FinSetCategory s = gen_finset_skeleton(2);
  // Full subcategory on the one-element object only.
  FinCat sub = gen_monoid({{0}});
  FinFunctor inc;
  inc.object_map = {1};
  inc.morphism_map = {s.cat.identity[1]};
  REQUIRE(validate_functor(sub, s.cat, inc).ok());

  Sieve img = image_sieve(sub, s.cat, inc, 2);
  CHECK(img.members.count() == 5);  // everything except the two bijections
  CHECK(!img.members.test(s.cat.identity[2]));
  MorId swap = the_map(s, 2, 2, {1, 0});
  CHECK(!img.members.test(swap));

  CHECK(image_sieve(sub, s.cat, inc, 1) == top_sieve(s.cat, 1));
  CHECK(image_sieve(sub, s.cat, inc, 0).members.empty());
}
