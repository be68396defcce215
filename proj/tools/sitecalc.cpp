// Command-line front end: analyses finite-category documents and runs the
// proposition suites. Exit codes: 0 success/true, 1 false/counterexample,
// 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sitecalc/format.hpp"
#include "sitecalc/suites.hpp"
#include "sitecalc/transport.hpp"

namespace {

using namespace sitecalc;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Printer {
  bool structured = false;

  void kv(const std::string& record,
          const std::vector<std::pair<std::string, std::string>>& fields) const {
    if (structured) {
      std::cout << record;
      for (const auto& [k, v] : fields) {
        std::string clean = v;
        std::replace(clean.begin(), clean.end(), ' ', '_');
        std::cout << " " << k << "=" << clean;
      }
      std::cout << "\n";
    } else {
      std::cout << record << ":";
      for (const auto& [k, v] : fields) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
  }
};

std::string members_str(const FinCat& c, const MorSet& s) {
  std::string out;
  s.for_each([&](int f) {
    if (!out.empty()) out += ",";
    out += c.morphism_name(f);
  });
  return out.empty() ? "-" : out;
}

GrothTopology topology_by_name(const Document& doc, const std::string& spec,
                               EpiTables& tables, const Limits& lim) {
  const FinCat& c = doc.cat;
  if (spec == "minimal") return minimal_topology(c, lim);
  if (spec == "regular") return saturate(c, regular_coverage(c, tables), lim);
  if (spec == "extensive") return saturate(c, extensive_coverage(c, lim), lim);
  if (spec == "coherent")
    return saturate(c, coherent_coverage(c, tables, lim), lim);
  if (spec == "union")
    return generated_by_union(c, regular_coverage(c, tables),
                              extensive_coverage(c, lim), lim);
  if (spec.rfind("file:", 0) == 0) {
    Document cov_doc = parse_document(read_file(spec.substr(5)));
    if (cov_doc.coverages.empty())
      throw std::runtime_error("document has no coverage block");
    if (!cov_doc.cat.structurally_equal(c))
      throw std::runtime_error("coverage document category differs");
    Coverage cov = cov_doc.coverages.front().second;
    if (auto rep = check_coverage(c, cov); !rep.ok())
      throw std::runtime_error("coverage axiom fails:\n" + rep.to_string());
    return saturate(c, cov, lim);
  }
  throw std::runtime_error("unknown topology '" + spec + "'");
}

int cmd_validate(const Printer& pr, const std::string& file) {
  Document doc;
  try {
    doc = parse_document(read_file(file));
  } catch (const ValidationError& e) {
    std::cout << e.what() << "\n";
    return 1;
  }
  bool ok = true;
  pr.kv("category", {{"name", doc.name}, {"status", "ok"}});
  for (const auto& [name, p] : doc.presheaves) {
    auto rep = validate_presheaf(doc.cat, p);
    if (!rep.ok()) ok = false;
    pr.kv("presheaf", {{"name", name}, {"status", rep.ok() ? "ok" : "invalid"}});
    if (!rep.ok() && !pr.structured) std::cout << rep.to_string();
  }
  for (const auto& [name, cov] : doc.coverages) {
    auto rep = check_coverage(doc.cat, cov);
    if (!rep.ok()) ok = false;
    pr.kv("coverage", {{"name", name}, {"status", rep.ok() ? "ok" : "invalid"}});
    if (!rep.ok() && !pr.structured) std::cout << rep.to_string();
  }
  return ok ? 0 : 1;
}

int cmd_epis(const Printer& pr, const std::string& file) {
  Document doc = parse_document(read_file(file));
  const FinCat& c = doc.cat;
  for (const EpiClass& e : classify_epis(c)) {
    pr.kv("epi",
          {{"morphism", c.morphism_name(e.f)},
           {"dom", c.object_name(c.dom(e.f))},
           {"cod", c.object_name(c.cod(e.f))},
           {"is_epi", e.is_epi ? "1" : "0"},
           {"is_regular", e.is_regular_epi ? "1" : "0"},
           {"is_effective", e.is_effective_epi ? "1" : "0"},
           {"kernel_pair",
            e.has_kernel_pair ? c.object_name(e.kernel_pair->apex) : "-"}});
  }
  return 0;
}

int cmd_limits(const Printer& pr, const std::string& file) {
  Document doc = parse_document(read_file(file));
  const FinCat& c = doc.cat;
  auto initial = find_initial(c);
  pr.kv("initial", {{"object", initial ? c.object_name(*initial) : "-"}});
  for (ObjId x = 0; x < c.objects; ++x)
    for (ObjId y = x; y < c.objects; ++y) {
      auto w = find_binary_coproduct(c, x, y);
      pr.kv("coproduct", {{"left", c.object_name(x)},
                          {"right", c.object_name(y)},
                          {"object", w ? c.object_name(w->apex) : "-"},
                          {"legs", w ? c.morphism_name(w->legs[0]) + "," +
                                           c.morphism_name(w->legs[1])
                                     : "-"}});
    }
  for (MorId f = 0; f < c.n_mor(); ++f) {
    auto w = kernel_pair(c, f);
    pr.kv("kernel_pair", {{"morphism", c.morphism_name(f)},
                          {"apex", w ? c.object_name(w->apex) : "-"}});
  }
  return 0;
}

int cmd_predicates(const Printer& pr, const std::string& file) {
  Document doc = parse_document(read_file(file));
  EpiTables tables(doc.cat);
  auto prereg = is_preregular(doc.cat, tables);
  auto ext = is_finitary_extensive(doc.cat);
  PredicateResult precoh{false, "family enumeration over cap"};
  try {
    precoh = is_precoherent(doc.cat, tables);
  } catch (const CapExceeded& e) {
    precoh = {false, e.what()};
  }
  for (auto [name, p] :
       {std::pair{"preregular", &prereg}, std::pair{"finitary-extensive", &ext},
        std::pair{"precoherent", &precoh}})
    pr.kv("predicate",
          {{"name", name},
           {"holds", p->holds ? "1" : "0"},
           {"witness", p->holds ? "-" : p->counterexample}});
  return (prereg.holds && ext.holds && precoh.holds) ? 0 : 1;
}

int cmd_topology(const Printer& pr, const std::string& file,
                 const std::string& coverage) {
  Document doc = parse_document(read_file(file));
  EpiTables tables(doc.cat);
  GrothTopology t = topology_by_name(doc, coverage, tables, {});
  for (ObjId x = 0; x < doc.cat.objects; ++x)
    for (const Sieve& s : t.covering[x])
      pr.kv("covering_sieve", {{"object", doc.cat.object_name(x)},
                               {"size", std::to_string(s.members.count())},
                               {"members", members_str(doc.cat, s.members)}});
  return 0;
}

int cmd_sieves(const Printer& pr, const std::string& file) {
  Document doc = parse_document(read_file(file));
  for (ObjId x = 0; x < doc.cat.objects; ++x) {
    auto sieves = enumerate_sieves(doc.cat, x);
    pr.kv("object", {{"name", doc.cat.object_name(x)},
                     {"sieves", std::to_string(sieves.size())}});
    for (const Sieve& s : sieves)
      pr.kv("sieve", {{"object", doc.cat.object_name(x)},
                      {"members", members_str(doc.cat, s.members)}});
  }
  return 0;
}

int cmd_sheaf(const Printer& pr, const std::string& file, const std::string& name,
              const std::string& topology) {
  Document doc = parse_document(read_file(file));
  const Presheaf* p = doc.find_presheaf(name);
  if (!p) throw std::runtime_error("no presheaf named '" + name + "'");
  if (auto rep = validate_presheaf(doc.cat, *p); !rep.ok())
    throw ValidationError("presheaf invalid:\n" + rep.to_string());
  EpiTables tables(doc.cat);
  GrothTopology t = topology_by_name(doc, topology, tables, {});
  bool sheaf = is_sheaf_for_topology(doc.cat, *p, t);
  pr.kv("sheaf", {{"presheaf", name},
                  {"topology", topology},
                  {"is_sheaf", sheaf ? "1" : "0"}});
  return sheaf ? 0 : 1;
}

int cmd_census(const Printer& pr, const std::string& file, int max_carrier,
               const std::string& topology) {
  Document doc = parse_document(read_file(file));
  EpiTables tables(doc.cat);
  GrothTopology t = topology_by_name(doc, topology, tables, {});
  auto census = sheaf_census(doc.cat, t, max_carrier);
  pr.kv("census", {{"topology", topology},
                   {"max_carrier", std::to_string(max_carrier)},
                   {"count", std::to_string(census.size())}});
  for (std::size_t i = 0; i < census.size(); ++i) {
    std::string sizes;
    for (int k : census[i].carrier) {
      if (!sizes.empty()) sizes += ",";
      sizes += std::to_string(k);
    }
    pr.kv("sheaf_class", {{"index", std::to_string(i)}, {"carriers", sizes}});
  }
  return 0;
}

int cmd_transport(const Printer& pr, const std::string& functor_file,
                  const std::string& src_file, const std::string& dst_file,
                  int max_carrier) {
  FunctorDoc fdoc = parse_functor_document(read_file(functor_file));
  Document src = parse_document(read_file(src_file));
  Document dst = parse_document(read_file(dst_file));
  if (fdoc.source != src.name)
    throw std::runtime_error("functor source '" + fdoc.source +
                             "' does not match category '" + src.name + "'");
  if (fdoc.target != dst.name)
    throw std::runtime_error("functor target '" + fdoc.target +
                             "' does not match category '" + dst.name + "'");
  FinFunctor f = resolve_functor(fdoc, src.cat, dst.cat);
  if (auto rep = validate_functor(src.cat, dst.cat, f); !rep.ok())
    throw ValidationError("functor invalid:\n" + rep.to_string());

  EquivalenceReport eq = check_equivalence_conditions(src.cat, dst.cat, f);
  for (const std::string& line : eq.lines())
    pr.kv("equivalence", {{"line", line}});
  if (!eq.ok()) return 1;

  SheafEquivalenceReport sr =
      verify_sheaf_equivalence(src.cat, dst.cat, f, max_carrier);
  for (const std::string& line : sr.lines())
    pr.kv("sheaf_equivalence", {{"line", line}});
  return sr.ok() ? 0 : 1;
}

int cmd_check_paper(const Printer& pr, const std::string& file,
                    const std::string& prop, int jobs) {
  Document doc = parse_document(read_file(file));
  std::vector<std::string> ids;
  if (!prop.empty()) {
    auto all = suite_ids();
    if (std::find(all.begin(), all.end(), prop) == all.end())
      throw std::runtime_error("unknown suite '" + prop + "'");
    ids.push_back(prop);
  }
  auto results = run_suites(doc.cat, ids, jobs);
  bool any_fail = false;
  for (const SuiteResult& r : results) {
    std::cout << format_suite_line(r, pr.structured) << "\n";
    if (r.status == SuiteResult::Status::Fail) any_fail = true;
  }
  return any_fail ? 1 : 0;
}

int cmd_gen(const std::string& kind, int n, const std::string& out_path) {
  FinCat cat;
  std::string name;
  if (kind == "finset-skeleton") {
    cat = gen_finset_skeleton(n).cat;
    name = "finset_skel_" + std::to_string(n);
  } else if (kind == "fintop") {
    cat = gen_fintop(n).cat;
    name = "fintop_" + std::to_string(n);
  } else if (kind == "walking-arrow") {
    cat = walking_arrow();
    name = "walking_arrow";
  } else if (kind == "poset-chain") {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) leq[i][j] = true;
    cat = gen_poset(leq);
    name = "chain_" + std::to_string(n);
  } else if (kind == "poset-diamond") {
    cat = gen_poset({{true, true, true, true},
                     {false, true, false, true},
                     {false, false, true, true},
                     {false, false, false, true}});
    name = "diamond";
  } else if (kind == "monoid-cyclic") {
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
    cat = gen_monoid(mul);
    name = "cyclic_" + std::to_string(n);
  } else {
    throw std::runtime_error("unknown generator '" + kind + "'");
  }
  std::string text = emit_category(cat, name);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-site workbench"};
  app.require_subcommand(1);

  std::string format = "text";
  int jobs = 1;
  app.add_option("--format", format, "output format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--jobs", jobs, "parallel proposition suites");

  std::string file, coverage = "coherent", presheaf, prop, functor_file, src_file,
                    dst_file, gen_kind, out_path;
  int max_carrier = 2, gen_n = 2;
  bool prop_all = false;

  auto* v = app.add_subcommand("validate", "validate a category document");
  v->add_option("file", file)->required();

  auto* e = app.add_subcommand("epis", "classify epimorphisms");
  e->add_option("file", file)->required();

  auto* l = app.add_subcommand("limits", "brute-force (co)limit survey");
  l->add_option("file", file)->required();

  auto* p = app.add_subcommand("predicates", "site predicates");
  p->add_option("file", file)->required();

  auto* t = app.add_subcommand("topology", "covering sieves of a topology");
  t->add_option("file", file)->required();
  t->add_option("--coverage", coverage,
                "regular|extensive|coherent|union|minimal|file:PATH");

  auto* sv = app.add_subcommand("sieves", "enumerate sieves per object");
  sv->add_option("file", file)->required();

  auto* sh = app.add_subcommand("sheaf", "sheaf check for a named presheaf");
  sh->add_option("file", file)->required();
  sh->add_option("--presheaf", presheaf)->required();
  sh->add_option("--topology", coverage,
                 "regular|extensive|coherent|union|minimal|file:PATH");

  auto* cs = app.add_subcommand("census", "bounded sheaf census");
  cs->add_option("file", file)->required();
  cs->add_option("--max-carrier", max_carrier);
  cs->add_option("--topology", coverage);

  auto* tr = app.add_subcommand("transport", "site-comparison along a functor");
  tr->add_option("--functor", functor_file)->required();
  tr->add_option("source", src_file)->required();
  tr->add_option("target", dst_file)->required();
  tr->add_option("--max-carrier", max_carrier);

  auto* cp = app.add_subcommand("check-paper", "run the proposition suites");
  cp->add_option("file", file)->required();
  cp->add_flag("--all", prop_all, "run every applicable suite (default)");
  cp->add_option("--prop", prop, "run one suite by id");

  auto* g = app.add_subcommand("gen", "emit a builtin category document");
  g->add_option("kind", gen_kind,
                "finset-skeleton|fintop|walking-arrow|poset-chain|poset-diamond|"
                "monoid-cyclic")
      ->required();
  g->add_option("n", gen_n);
  g->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    std::ostringstream os;
    int code = app.exit(err, os, os);
    std::cerr << os.str();
    return code == 0 ? 0 : 2;
  }

  Printer pr{format == "structured"};
  try {
    if (v->parsed()) return cmd_validate(pr, file);
    if (e->parsed()) return cmd_epis(pr, file);
    if (l->parsed()) return cmd_limits(pr, file);
    if (p->parsed()) return cmd_predicates(pr, file);
    if (t->parsed()) return cmd_topology(pr, file, coverage);
    if (sv->parsed()) return cmd_sieves(pr, file);
    if (sh->parsed()) return cmd_sheaf(pr, file, presheaf, coverage);
    if (cs->parsed()) return cmd_census(pr, file, max_carrier, coverage);
    if (tr->parsed())
      return cmd_transport(pr, functor_file, src_file, dst_file, max_carrier);
    if (cp->parsed()) return cmd_check_paper(pr, file, prop, jobs);
    if (g->parsed()) return cmd_gen(gen_kind, gen_n, out_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
