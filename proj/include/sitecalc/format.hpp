#ifndef SITECALC_FORMAT_HPP
#define SITECALC_FORMAT_HPP

#include <string>
#include <utility>
#include <vector>

#include "sitecalc/fincat.hpp"
#include "sitecalc/topology.hpp"

namespace sitecalc {

// A parsed category document: the category plus any named presheaves and
// coverages declared in it.
struct Document {
  std::string name = "C";
  FinCat cat;
  std::vector<std::pair<std::string, Presheaf>> presheaves;
  std::vector<std::pair<std::string, Coverage>> coverages;

  const Presheaf* find_presheaf(const std::string& name) const;
  const Coverage* find_coverage(const std::string& name) const;
};

Document parse_document(const std::string& text, const Limits& lim = {});
FinCat parse_category(const std::string& text, const Limits& lim = {});

// Inverse of parse_category up to structural equality; identities are written
// as identity statements at their id positions and compositions with an
// identity are left implied.
std::string emit_category(const FinCat& c, const std::string& name = "C");

struct FunctorDoc {
  std::string name = "F";
  std::string source;
  std::string target;
  std::vector<std::pair<std::string, std::string>> objects;
  std::vector<std::pair<std::string, std::string>> morphisms;
};

FunctorDoc parse_functor_document(const std::string& text);

// Resolves names against the two categories; identity morphisms may be left
// implicit.
FinFunctor resolve_functor(const FunctorDoc& doc, const FinCat& src,
                           const FinCat& dst);

}  // namespace sitecalc

#endif
