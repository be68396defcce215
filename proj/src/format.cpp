#include "sitecalc/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sitecalc {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

struct Statement {
  std::vector<Token> tokens;
  int line = 0;

  bool kw(const char* k) const { return !tokens.empty() && tokens[0].text == k; }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({line.substr(i, j - i), line_no, col});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", line_no, col});
      i += 2;
      continue;
    }
    if (c == '=' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"=>", line_no, col});
      i += 2;
      continue;
    }
    if (std::string(":={}[];").find(c) != std::string::npos) {
      out.push_back({std::string(1, c), line_no, col});
      ++i;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_no, col);
  }
  return out;
}

// Statements are lines, except that braces may spread an entry across lines.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream is(text);
  std::string line;
  Statement cur;
  int depth = 0;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = tokenize_line(line, line_no);
    if (toks.empty() && depth == 0) continue;
    if (cur.tokens.empty()) cur.line = line_no;
    for (auto& t : toks) {
      if (t.text == "{") ++depth;
      if (t.text == "}") --depth;
      cur.tokens.push_back(std::move(t));
    }
    if (depth < 0) throw ParseError("unbalanced '}'", line_no, 1);
    if (depth == 0 && !cur.tokens.empty()) {
      out.push_back(std::move(cur));
      cur = {};
    }
  }
  if (depth != 0) throw ParseError("unbalanced '{'", line_no, 1);
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Statement& s) : s_(s) {}

  bool done() const { return i_ >= s_.tokens.size(); }
  const Token& peek() const {
    if (done()) throw ParseError("unexpected end of statement", s_.line, 0);
    return s_.tokens[i_];
  }
  Token next() {
    Token t = peek();
    ++i_;
    return t;
  }
  Token expect(const char* what) {
    if (done()) throw ParseError(std::string("expected ") + what, s_.line, 0);
    return next();
  }
  void expect_punct(const char* p) {
    Token t = expect(p);
    if (t.text != p)
      throw ParseError(std::string("expected '") + p + "', got '" + t.text + "'",
                       t.line, t.col);
  }
  void expect_done() {
    if (!done())
      throw ParseError("trailing tokens after statement", peek().line, peek().col);
  }

 private:
  const Statement& s_;
  std::size_t i_ = 0;
};

struct NameTable {
  std::map<std::string, int> index;

  int lookup(const Token& t, const char* what) const {
    auto it = index.find(t.text);
    if (it == index.end())
      throw ParseError(std::string("unknown ") + what + " '" + t.text + "'", t.line,
                       t.col);
    return it->second;
  }
};

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!ident_char(c)) c = '_';
  if (s.empty()) s = "_";
  return s;
}

}  // namespace

const Presheaf* Document::find_presheaf(const std::string& nm) const {
  for (const auto& [n, p] : presheaves)
    if (n == nm) return &p;
  return nullptr;
}

const Coverage* Document::find_coverage(const std::string& nm) const {
  for (const auto& [n, c] : coverages)
    if (n == nm) return &c;
  return nullptr;
}

Document parse_document(const std::string& text, const Limits& lim) {
  Document doc;
  FinCat& cat = doc.cat;
  NameTable objects, morphisms;
  std::vector<int> identity_of;  // object id per identity-declared morphism, else -1
  bool saw_category = false;

  auto statements = split_statements(text);

  // Declarations first: the id space is the statement order.
  for (const Statement& st : statements) {
    Cursor c(st);
    if (st.kw("category")) {
      c.next();
      if (saw_category)
        throw ParseError("duplicate category statement", st.line, 1);
      saw_category = true;
      doc.name = c.expect("category name").text;
      c.expect_done();
    } else if (st.kw("objects")) {
      c.next();
      while (!c.done()) {
        Token t = c.next();
        if (objects.index.count(t.text))
          throw ParseError("duplicate object '" + t.text + "'", t.line, t.col);
        objects.index[t.text] = cat.objects++;
        cat.object_names.push_back(t.text);
      }
    } else if (st.kw("morphism") && st.tokens.size() >= 3 &&
               st.tokens[2].text == ":") {
      c.next();
      Token name = c.expect("morphism name");
      c.expect_punct(":");
      Token a = c.expect("domain object");
      c.expect_punct("->");
      Token b = c.expect("codomain object");
      c.expect_done();
      if (morphisms.index.count(name.text))
        throw ParseError("duplicate morphism '" + name.text + "'", name.line,
                         name.col);
      morphisms.index[name.text] = static_cast<int>(cat.mor.size());
      cat.mor.push_back({objects.lookup(a, "object"), objects.lookup(b, "object")});
      cat.morphism_names.push_back(name.text);
      identity_of.push_back(-1);
    } else if (st.kw("identity")) {
      c.next();
      Token obj = c.expect("object");
      c.expect_punct("=");
      Token name = c.expect("identity name");
      c.expect_done();
      int x = objects.lookup(obj, "object");
      if (morphisms.index.count(name.text))
        throw ParseError("duplicate morphism '" + name.text + "'", name.line,
                         name.col);
      morphisms.index[name.text] = static_cast<int>(cat.mor.size());
      cat.mor.push_back({x, x});
      cat.morphism_names.push_back(name.text);
      identity_of.push_back(x);
    }
  }

  // Auto identities for objects that declared none.
  std::vector<MorId> id_mor(cat.objects, kNoMor);
  for (std::size_t f = 0; f < identity_of.size(); ++f)
    if (identity_of[f] >= 0) {
      if (id_mor[identity_of[f]] != kNoMor)
        throw ParseError("object '" + cat.object_names[identity_of[f]] +
                             "' has two identity statements",
                         1, 1);
      id_mor[identity_of[f]] = static_cast<MorId>(f);
    }
  for (ObjId x = 0; x < cat.objects; ++x) {
    if (id_mor[x] != kNoMor) continue;
    std::string nm = "id_" + cat.object_names[x];
    if (morphisms.index.count(nm))
      throw ParseError("auto identity name '" + nm + "' clashes with a morphism", 1,
                       1);
    morphisms.index[nm] = static_cast<int>(cat.mor.size());
    id_mor[x] = static_cast<MorId>(cat.mor.size());
    cat.mor.push_back({x, x});
    cat.morphism_names.push_back(nm);
  }
  cat.identity.assign(id_mor.begin(), id_mor.end());

  const int m = cat.n_mor();
  cat.comp.assign(static_cast<std::size_t>(m) * m, kNoMor);
  std::vector<char> given(static_cast<std::size_t>(m) * m, 0);

  for (const Statement& st : statements) {
    if (!st.kw("compose")) continue;
    Cursor c(st);
    c.next();
    Token gt = c.expect("morphism");
    Token ft = c.expect("morphism");
    c.expect_punct("=");
    Token ht = c.expect("morphism");
    c.expect_done();
    MorId g = morphisms.lookup(gt, "morphism");
    MorId f = morphisms.lookup(ft, "morphism");
    MorId h = morphisms.lookup(ht, "morphism");
    if (cat.cod(f) != cat.dom(g))
      throw ParseError("composition entry on a non-composable pair", gt.line, gt.col);
    std::size_t slot = static_cast<std::size_t>(g) * m + f;
    if (given[slot])
      throw ParseError("duplicate composition entry", gt.line, gt.col);
    given[slot] = 1;
    cat.comp[slot] = h;
  }

  // Implied compositions with identities, and the completeness check.
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (cat.cod(f) != cat.dom(g)) continue;
      std::size_t slot = static_cast<std::size_t>(g) * m + f;
      if (given[slot]) continue;
      if (cat.identity[cat.dom(g)] == g)
        cat.comp[slot] = f;
      else if (cat.identity[cat.dom(f)] == f)
        cat.comp[slot] = g;
      else
        throw ParseError("missing composition entry for " + cat.morphism_names[g] +
                             " after " + cat.morphism_names[f],
                         1, 1);
    }

  cat.finalize(lim);
  if (auto rep = validate_category(cat); !rep.ok())
    throw ValidationError("document category fails validation:\n" + rep.to_string());

  // Presheaf and coverage blocks.
  for (const Statement& st : statements) {
    if (st.kw("presheaf")) {
      Cursor c(st);
      c.next();
      Token name = c.expect("presheaf name");
      c.expect_punct("{");
      Presheaf p;
      p.carrier.assign(cat.objects, 0);
      p.restriction.assign(m, {});
      std::vector<char> have_table(m, 0);
      while (!c.done() && c.peek().text != "}") {
        Token kw = c.next();
        if (kw.text == "at") {
          Token obj = c.expect("object");
          c.expect_punct("=");
          Token k = c.expect("carrier size");
          p.carrier[objects.lookup(obj, "object")] = std::stoi(k.text);
        } else if (kw.text == "along") {
          Token mt = c.expect("morphism");
          c.expect_punct("=");
          c.expect_punct("[");
          std::vector<int> table;
          while (c.peek().text != "]") table.push_back(std::stoi(c.next().text));
          c.expect_punct("]");
          MorId f = morphisms.lookup(mt, "morphism");
          p.restriction[f] = std::move(table);
          have_table[f] = 1;
        } else {
          throw ParseError("expected 'at' or 'along'", kw.line, kw.col);
        }
        if (!c.done() && c.peek().text == ";") c.next();
      }
      c.expect_punct("}");
      c.expect_done();
      for (MorId f = 0; f < m; ++f) {
        if (have_table[f]) continue;
        if (cat.identity[cat.dom(f)] == f) {
          p.restriction[f].resize(p.carrier[cat.dom(f)]);
          for (int i = 0; i < p.carrier[cat.dom(f)]; ++i) p.restriction[f][i] = i;
        } else if (p.carrier[cat.cod(f)] != 0) {
          throw ParseError("presheaf '" + name.text + "' missing table along '" +
                               cat.morphism_names[f] + "'",
                           name.line, name.col);
        }
      }
      for (MorId f = 0; f < m; ++f) {
        if (static_cast<int>(p.restriction[f].size()) != p.carrier[cat.cod(f)])
          throw ParseError("presheaf '" + name.text + "' table along '" +
                               cat.morphism_names[f] + "' has the wrong length",
                           name.line, name.col);
        for (int v : p.restriction[f])
          if (v < 0 || v >= p.carrier[cat.dom(f)])
            throw ParseError("presheaf '" + name.text + "' table along '" +
                                 cat.morphism_names[f] + "' has an out-of-range value",
                             name.line, name.col);
      }
      doc.presheaves.emplace_back(name.text, std::move(p));
    } else if (st.kw("coverage")) {
      Cursor c(st);
      c.next();
      Token name = c.expect("coverage name");
      c.expect_punct("{");
      Coverage cov;
      cov.covering.resize(cat.objects);
      while (!c.done() && c.peek().text != "}") {
        Token kw = c.next();
        if (kw.text != "on") throw ParseError("expected 'on'", kw.line, kw.col);
        Token obj = c.expect("object");
        c.expect_punct(":");
        ObjId x = objects.lookup(obj, "object");
        while (!c.done() && c.peek().text == "{") {
          c.next();
          MorSet s(m);
          while (c.peek().text != "}") {
            Token mt = c.next();
            MorId f = morphisms.lookup(mt, "morphism");
            if (cat.cod(f) != x)
              throw ParseError("presieve member '" + mt.text +
                                   "' does not target '" + obj.text + "'",
                               mt.line, mt.col);
            s.set(f);
          }
          c.expect_punct("}");
          cov.covering[x].push_back({x, s});
        }
        if (!c.done() && c.peek().text == ";") c.next();
      }
      c.expect_punct("}");
      c.expect_done();
      for (auto& lst : cov.covering)
        std::sort(lst.begin(), lst.end(), [](const Presieve& a, const Presieve& b) {
          return a.members < b.members;
        });
      doc.coverages.emplace_back(name.text, std::move(cov));
    }
  }
  return doc;
}

FinCat parse_category(const std::string& text, const Limits& lim) {
  return parse_document(text, lim).cat;
}

std::string emit_category(const FinCat& c, const std::string& name) {
  // Unique, token-safe names.
  std::vector<std::string> on(c.objects), mn(c.n_mor());
  {
    std::map<std::string, int> seen;
    for (ObjId x = 0; x < c.objects; ++x) {
      std::string nm = sanitize(c.object_name(x));
      if (seen.count(nm)) nm += "_" + std::to_string(x);
      seen[nm] = 1;
      on[x] = nm;
    }
    seen.clear();
    for (MorId f = 0; f < c.n_mor(); ++f) {
      std::string nm = sanitize(c.morphism_name(f));
      if (seen.count(nm)) nm += "_" + std::to_string(f);
      seen[nm] = 1;
      mn[f] = nm;
    }
  }

  std::ostringstream os;
  os << "category " << sanitize(name) << "\n";
  if (c.objects > 0) {
    os << "objects";
    for (ObjId x = 0; x < c.objects; ++x) os << " " << on[x];
    os << "\n";
  }
  for (MorId f = 0; f < c.n_mor(); ++f) {
    if (c.is_identity(f))
      os << "identity " << on[c.dom(f)] << " = " << mn[f] << "\n";
    else
      os << "morphism " << mn[f] << " : " << on[c.dom(f)] << " -> " << on[c.cod(f)]
         << "\n";
  }
  for (MorId g = 0; g < c.n_mor(); ++g)
    for (MorId f = 0; f < c.n_mor(); ++f) {
      if (!c.composable(g, f)) continue;
      if (c.is_identity(g) || c.is_identity(f)) continue;
      os << "compose " << mn[g] << " " << mn[f] << " = " << mn[c.compose(g, f)]
         << "\n";
    }
  return os.str();
}

FunctorDoc parse_functor_document(const std::string& text) {
  FunctorDoc doc;
  bool saw_functor = false;
  for (const Statement& st : split_statements(text)) {
    Cursor c(st);
    if (st.kw("functor")) {
      c.next();
      if (saw_functor) throw ParseError("duplicate functor statement", st.line, 1);
      saw_functor = true;
      doc.name = c.expect("functor name").text;
      c.expect_punct(":");
      doc.source = c.expect("source category").text;
      c.expect_punct("->");
      doc.target = c.expect("target category").text;
      c.expect_done();
    } else if (st.kw("object")) {
      c.next();
      Token a = c.expect("source object");
      c.expect_punct("=>");
      Token b = c.expect("target object");
      c.expect_done();
      doc.objects.emplace_back(a.text, b.text);
    } else if (st.kw("morphism")) {
      c.next();
      Token a = c.expect("source morphism");
      c.expect_punct("=>");
      Token b = c.expect("target morphism");
      c.expect_done();
      doc.morphisms.emplace_back(a.text, b.text);
    } else {
      throw ParseError("unexpected statement in functor document",
                       st.tokens[0].line, st.tokens[0].col);
    }
  }
  if (!saw_functor) throw ParseError("missing functor statement", 1, 1);
  return doc;
}

FinFunctor resolve_functor(const FunctorDoc& doc, const FinCat& src,
                           const FinCat& dst) {
  std::map<std::string, ObjId> src_obj, dst_obj;
  std::map<std::string, MorId> src_mor, dst_mor;
  for (ObjId x = 0; x < src.objects; ++x) src_obj[src.object_name(x)] = x;
  for (ObjId x = 0; x < dst.objects; ++x) dst_obj[dst.object_name(x)] = x;
  for (MorId f = 0; f < src.n_mor(); ++f) src_mor[src.morphism_name(f)] = f;
  for (MorId f = 0; f < dst.n_mor(); ++f) dst_mor[dst.morphism_name(f)] = f;

  FinFunctor fun;
  fun.object_map.assign(src.objects, kNoObj);
  fun.morphism_map.assign(src.n_mor(), kNoMor);
  for (const auto& [a, b] : doc.objects) {
    if (!src_obj.count(a)) throw ValidationError("unknown source object '" + a + "'");
    if (!dst_obj.count(b)) throw ValidationError("unknown target object '" + b + "'");
    fun.object_map[src_obj[a]] = dst_obj[b];
  }
  for (const auto& [a, b] : doc.morphisms) {
    if (!src_mor.count(a))
      throw ValidationError("unknown source morphism '" + a + "'");
    if (!dst_mor.count(b))
      throw ValidationError("unknown target morphism '" + b + "'");
    fun.morphism_map[src_mor[a]] = dst_mor[b];
  }
  for (ObjId x = 0; x < src.objects; ++x)
    if (fun.object_map[x] == kNoObj)
      throw ValidationError("functor document misses object '" +
                            src.object_name(x) + "'");
  for (MorId f = 0; f < src.n_mor(); ++f) {
    if (fun.morphism_map[f] != kNoMor) continue;
    if (src.is_identity(f))
      fun.morphism_map[f] = dst.identity[fun.object_map[src.dom(f)]];
    else
      throw ValidationError("functor document misses morphism '" +
                            src.morphism_name(f) + "'");
  }
  return fun;
}

}  // namespace sitecalc
