#include "doctest.h"
#include "sitecalc/format.hpp"
#include "sitecalc/generators.hpp"
#include "sitecalc/suites.hpp"

using namespace sitecalc;

namespace {

const char* kArrowDoc = R"(# the walking arrow
category arrow
objects a b
morphism f : a -> b
# identities are implied
)";

}  // namespace

TEST_CASE("parsing the walking arrow document") {
  FinCat c = parse_category(kArrowDoc);
  CHECK(c.objects == 2);
  CHECK(c.n_mor() == 3);
  CHECK(validate_category(c).ok());

  // With explicit identity statements the id layout matches the generator.
  const char* explicit_doc = R"(category arrow
objects a b
identity a = id_a
morphism f : a -> b
identity b = id_b
)";
  CHECK(parse_category(explicit_doc).structurally_equal(walking_arrow()));
}

TEST_CASE("emit/parse round trip on every builtin generator") {
  std::vector<FinCat> corpus;
  for (int n = 0; n <= 3; ++n) corpus.push_back(gen_finset_skeleton(n).cat);
  for (int n = 0; n <= 2; ++n) corpus.push_back(gen_fintop(n).cat);
  corpus.push_back(walking_arrow());
  corpus.push_back(gen_poset({{true, true, true, true},
                              {false, true, false, true},
                              {false, false, true, true},
                              {false, false, false, true}}));
  for (const FinCat& m : all_monoids(3)) corpus.push_back(m);
  corpus.push_back(gen_finset_family({{}, {0}, {0, 1}, {5}, {3, 7}}).cat);

  for (const FinCat& c : corpus) {
    std::string text = emit_category(c, "roundtrip");
    FinCat back = parse_category(text);
    CHECK(back.structurally_equal(c));
    // a second trip is textually stable
    CHECK(emit_category(back, "roundtrip") == text);
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_category("objects a a\n"), ParseError);
  CHECK_THROWS_AS(parse_category("morphism f : a -> b\n"), ParseError);
  CHECK_THROWS_AS(parse_category("objects a\nmorphism f : a -> a\n"
                                 "compose f f = f\ncompose f f = f\n"),
                  ParseError);
  // missing composition entry
  CHECK_THROWS_AS(parse_category("objects a\nmorphism f : a -> a\n"), ParseError);
  // broken axioms surface as a validation error
  CHECK_THROWS_AS(
      parse_category("objects a\nmorphism f : a -> a\nmorphism g : a -> a\n"
                     "compose f f = g\ncompose f g = f\ncompose g f = g\n"
                     "compose g g = g\n"),
      ValidationError);
  try {
    parse_category("objects a b\nmorphism f : a -> c\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("presheaf and coverage blocks") {
  const char* doc = R"(category arrow
objects a b
morphism f : a -> b
presheaf P { at a = 2; at b = 1; along f = [0]; }
presheaf Q { at a = 1; at b = 2; along f = [0 0]; }
coverage K { on b : {f} {}; on a : {}; }
)";
  Document d = parse_document(doc);
  CHECK(d.presheaves.size() == 2);
  CHECK(d.coverages.size() == 1);
  const Presheaf* p = d.find_presheaf("P");
  REQUIRE(p);
  CHECK(validate_presheaf(d.cat, *p).ok());
  CHECK(p->carrier[0] == 2);
  const Coverage* k = d.find_coverage("K");
  REQUIRE(k);
  CHECK(k->covering[1].size() == 2);
  CHECK(k->covering[0].size() == 1);
  CHECK(k->covering[0][0].members.empty());

  CHECK_THROWS_AS(parse_document("category c\nobjects a\n"
                                 "presheaf P { at a = 2; along id_a = [0 2]; }\n"),
                  ParseError);
}

TEST_CASE("functor documents resolve against categories by name") {
  FinCat arrow = walking_arrow();
  FinCat chain = gen_poset({{true, true}, {false, true}});
  const char* fdoc = R"(functor F : arrow -> chain
object a => p0
object b => p1
morphism f => le0_1
)";
  FunctorDoc doc = parse_functor_document(fdoc);
  CHECK(doc.source == "arrow");
  FinFunctor fun = resolve_functor(doc, arrow, chain);
  CHECK(validate_functor(arrow, chain, fun).ok());
  CHECK(is_fully_faithful(arrow, chain, fun));

  // A mistyped image resolves but fails validation.
  FinFunctor bad = resolve_functor(parse_functor_document(
                                       "functor F : arrow -> chain\n"
                                       "object a => p0\nobject b => p1\n"
                                       "morphism f => id_p0\n"),
                                   arrow, chain);
  CHECK(!validate_functor(arrow, chain, bad).ok());
  // Missing a non-identity morphism is an error.
  CHECK_THROWS_AS(resolve_functor(parse_functor_document(
                                      "functor F : arrow -> chain\n"
                                      "object a => p0\nobject b => p1\n"),
                                  arrow, chain),
                  ValidationError);
}

TEST_CASE("finite-space generator counts") {
  FinTopCategory t1 = gen_fintop(1);
  CHECK(t1.cat.objects == 2);

  FinTopCategory t2 = gen_fintop(2);
  CHECK(t2.cat.objects == 6);
  CHECK(t2.cat.n_mor() == 69);
  CHECK(validate_category(t2.cat).ok());

  int two_point_spaces = 0;
  for (const Space& s : t2.spaces)
    if (s.points == 2) ++two_point_spaces;
  CHECK(two_point_spaces == 4);
}

TEST_CASE("surjectivity and quotient oracles") {
  FinTopCategory t = gen_fintop(2);
  int quotients = 0, surjections = 0;
  for (MorId f = 0; f < t.cat.n_mor(); ++f) {
    if (map_surjective(t, f)) ++surjections;
    if (is_quotient_map(t, f)) ++quotients;
  }
  CHECK(surjections > 0);
  CHECK(quotients > 0);
  CHECK(quotients < surjections);  // the coarsening identity maps are not quotients

  // identity maps are always quotient maps
  for (ObjId x = 0; x < t.cat.objects; ++x)
    CHECK(is_quotient_map(t, t.cat.identity[x]));
}

TEST_CASE("poset and monoid generators validate their inputs") {
  CHECK_THROWS_AS(gen_poset({{true, true}, {true, true}}), ValidationError);
  CHECK_THROWS_AS(gen_monoid({{1, 1}, {1, 1}}), ValidationError);  // no unit
  CHECK(all_monoids(1).size() == 1);
  CHECK(all_monoids(2).size() == 2);
  CHECK(!all_monoids(3).empty());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    FinCat p = random_poset(rng, 4);
    CHECK(validate_category(p).ok());
  }
}

TEST_CASE("generator detection for the oracle suites") {
  FinCat skel = gen_finset_skeleton(2).cat;
  CHECK(detect_finset_skeleton(skel).has_value());
  CHECK(!detect_fintop(skel).has_value());

  FinCat top2 = gen_fintop(2).cat;
  CHECK(detect_fintop(top2).has_value());
  CHECK(!detect_finset_skeleton(top2).has_value());

  // The one-point-space category coincides structurally with the one-element
  // skeleton (and with the walking arrow), so both detectors fire on it.
  FinCat top1 = gen_fintop(1).cat;
  CHECK(detect_fintop(top1).has_value());
  CHECK(detect_finset_skeleton(top1).has_value());

  // Reparse and re-detect: detection survives the document round trip.
  FinCat back = parse_category(emit_category(skel, "x"));
  CHECK(detect_finset_skeleton(back).has_value());
}

TEST_CASE("proposition suites pass on the small corpus") {
  for (const FinCat& c : {walking_arrow(), gen_finset_skeleton(2).cat,
                          gen_fintop(1).cat, gen_monoid({{0, 1}, {1, 0}})}) {
    auto results = run_suites(c, {});
    for (const SuiteResult& r : results) {
      INFO(r.id << ": " << r.detail);
      CHECK(r.status != SuiteResult::Status::Fail);
    }
  }
}

TEST_CASE("suite output is stable across jobs settings") {
  FinCat c = gen_finset_skeleton(2).cat;
  auto seq = run_suites(c, {}, 1);
  auto par = run_suites(c, {}, 4);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].id == par[i].id);
    CHECK(seq[i].status == par[i].status);
    CHECK(seq[i].detail == par[i].detail);
  }
}
