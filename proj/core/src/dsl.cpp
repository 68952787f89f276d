#include "coxcalc/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "coxcalc/error.hpp"

namespace coxcalc {

std::string to_string(const SourceLocation& loc) {
  return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (i + len < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_'))
        ++len;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Punct;
      len = 2;
    } else if (std::string_view("{}()[],;:+-*/^").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
    } else {
      throw Error(ErrorCode::SyntaxError, file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                              ": unexpected character '" + std::string(1, c) + "'");
    }
    t.text = src.substr(i, len);
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, std::string file) : file_(std::move(file)), toks_(tokenize(text, file_)) {}

  Workspace workspace() {
    Workspace ws;
    while (peek().kind != Tok::End) {
      const Token& kw = peek();
      if (is_word("fan")) {
        add(ws.fans, fan(), "fan");
      } else if (is_word("morphism")) {
        add(ws.morphisms, morphism(), "morphism");
      } else if (is_word("module")) {
        add(ws.modules, module(), "module");
      } else {
        fail(kw, "expected 'fan', 'morphism' or 'module'");
      }
    }
    return ws;
  }

  SparsePoly polynomial_only(char* symbol) {
    SparsePoly p = polynomial(symbol);
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after polynomial");
    return p;
  }

 private:
  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  SourceLocation here(const Token& t) const { return SourceLocation{file_, t.line, t.column}; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, to_string(here(t)) + ": " + msg);
  }

  std::string describe(const Token& t) const { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

  void expect(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "', found " + describe(peek()));
    next();
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(peek(), std::string("expected '") + w + "', found " + describe(peek()));
    next();
  }
  std::string name() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected a name, found " + describe(peek()));
    return next().text;
  }

  std::int64_t integer() {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Int) fail(peek(), "expected an integer, found " + describe(peek()));
    const Token& t = next();
    std::int64_t v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::out_of_range&) {
      fail(t, "integer " + t.text + " is out of range");
    }
    return neg ? -v : v;
  }

  std::vector<std::int64_t> int_tuple() {
    expect("(");
    std::vector<std::int64_t> v{integer()};
    while (is_punct(",")) {
      next();
      v.push_back(integer());
    }
    expect(")");
    return v;
  }

  template <class Decl>
  void add(std::vector<Decl>& list, Decl d, const char* kind) {
    for (const auto& e : list)
      if (e.name == d.name)
        throw Error(ErrorCode::DuplicateName, to_string(d.loc) + ": " + kind + " '" + d.name +
                                                  "' already declared at " + to_string(e.loc));
    list.push_back(std::move(d));
  }

  FanDecl fan() {
    FanDecl d;
    d.loc = here(next());
    d.name = name();
    expect("{");
    bool seen_rank = false, seen_rays = false, seen_cones = false;
    while (!is_punct("}")) {
      const Token& kw = peek();
      if (is_word("rank") && !seen_rank) {
        next();
        const std::int64_t r = integer();
        if (r < 0) fail(kw, "rank must be non-negative");
        d.fan.rank = static_cast<std::size_t>(r);
        seen_rank = true;
      } else if (is_word("rays") && !seen_rays) {
        next();
        while (is_punct("(")) d.fan.rays.push_back(int_tuple());
        seen_rays = true;
      } else if (is_word("cones") && !seen_cones) {
        next();
        while (is_punct("[")) {
          const Token& open = next();
          ConeIndices cone;
          while (peek().kind == Tok::Int) {
            const std::int64_t idx = integer();
            if (idx < 1) fail(open, "ray indices start at 1");
            cone.push_back(static_cast<std::size_t>(idx - 1));
          }
          expect("]");
          d.fan.max_cones.push_back(std::move(cone));
        }
        seen_cones = true;
      } else {
        fail(kw, "expected 'rank', 'rays' or 'cones' (each at most once), found " + describe(kw));
      }
      expect(";");
    }
    next();
    if (!seen_rank) fail(toks_[pos_ - 1], "fan '" + d.name + "' has no rank");
    for (const auto& cone : d.fan.max_cones)
      for (std::size_t idx : cone)
        if (idx >= d.fan.rays.size())
          throw Error(ErrorCode::SyntaxError, to_string(d.loc) + ": cone refers to ray " + std::to_string(idx + 1) +
                                                  " but fan '" + d.name + "' has " +
                                                  std::to_string(d.fan.rays.size()) + " rays");
    return d;
  }

  MorphismDecl morphism() {
    MorphismDecl d;
    d.loc = here(next());
    d.name = name();
    expect(":");
    d.source = name();
    expect("->");
    d.target = name();
    expect("{");
    expect_word("matrix");
    expect("[");
    while (is_punct("[")) {
      next();
      std::vector<std::int64_t> row;
      if (!is_punct("]")) {
        row.push_back(integer());
        while (is_punct(",")) {
          next();
          row.push_back(integer());
        }
      }
      expect("]");
      d.matrix.push_back(std::move(row));
      if (is_punct(",")) next();
    }
    expect("]");
    expect(";");
    expect("}");
    return d;
  }

  ModuleDecl module() {
    ModuleDecl d;
    d.loc = here(next());
    d.name = name();
    expect_word("over");
    d.ring = name();
    expect("{");
    bool seen_shifts = false, seen_relations = false, symbol_set = false;
    while (!is_punct("}")) {
      const Token& kw = peek();
      if (is_word("shifts") && !seen_shifts) {
        next();
        expect("[");
        while (!is_punct("]")) {
          if (is_punct("(")) {
            d.shifts.push_back(int_tuple());
          } else {
            d.shifts.push_back({integer()});
          }
          if (is_punct(",")) next();
        }
        next();
        seen_shifts = true;
      } else if (is_word("relations") && !seen_relations) {
        next();
        expect("[");
        while (is_punct("[")) {
          next();
          std::vector<SparsePoly> column;
          char symbol = 0;
          column.push_back(polynomial(&symbol));
          while (is_punct(",")) {
            next();
            column.push_back(polynomial(&symbol));
          }
          expect("]");
          if (symbol && !symbol_set) {
            d.var_symbol = symbol;
            symbol_set = true;
          }
          d.relations.push_back(std::move(column));
          if (is_punct(",")) next();
        }
        expect("]");
        seen_relations = true;
      } else {
        fail(kw, "expected 'shifts' or 'relations' (each at most once), found " + describe(kw));
      }
      expect(";");
    }
    next();
    return d;
  }

  // poly := ['-'] term (('+'|'-') term)*
  // term := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
  SparsePoly polynomial(char* symbol) {
    SparsePoly p;
    bool negative = false;
    if (is_punct("-")) {
      next();
      negative = true;
    } else if (is_punct("+")) {
      next();
    }
    for (;;) {
      auto [mono, c] = term(symbol);
      if (negative) c = -c;
      Rational& slot = p[mono];
      slot += c;
      if (slot == 0) p.erase(mono);
      if (is_punct("+")) {
        negative = false;
      } else if (is_punct("-")) {
        negative = true;
      } else {
        break;
      }
      next();
    }
    return p;
  }

  std::pair<SparseMonomial, Rational> term(char* symbol) {
    Rational c = 1;
    SparseMonomial mono;
    bool need_factor = true;
    if (peek().kind == Tok::Int) {
      c = coefficient();
      need_factor = false;
      if (!is_punct("*")) return {mono, c};
      next();
      need_factor = true;
    }
    while (need_factor) {
      factor(mono, symbol);
      need_factor = false;
      if (is_punct("*")) {
        next();
        need_factor = true;
      }
    }
    return {mono, c};
  }

  Rational coefficient() {
    const Token& num = next();
    Rational c(Integer(num.text), Integer(1));
    if (is_punct("/")) {
      next();
      if (peek().kind != Tok::Int) fail(peek(), "expected a denominator, found " + describe(peek()));
      const Token& den = next();
      const Integer q(den.text);
      if (q == 0) fail(den, "zero denominator");
      c = Rational(Integer(num.text), q);
      c.canonicalize();
    }
    return c;
  }

  void factor(SparseMonomial& mono, char* symbol) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text.size() < 2 || !std::isalpha(static_cast<unsigned char>(t.text[0])) ||
        !std::all_of(t.text.begin() + 1, t.text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail(t, "expected a variable like x3, found " + describe(t));
    next();
    const std::size_t index = std::stoul(t.text.substr(1));
    if (index < 1) fail(t, "variable indices start at 1");
    if (symbol && !*symbol) *symbol = t.text[0];
    std::uint32_t power = 1;
    if (is_punct("^")) {
      next();
      if (peek().kind != Tok::Int) fail(peek(), "expected an exponent, found " + describe(peek()));
      const Token& e = next();
      power = static_cast<std::uint32_t>(std::stoul(e.text));
    }
    if (power > 0) mono[index - 1] += power;
  }
};

template <class Decl>
const Decl* find_by_name(const std::vector<Decl>& list, const std::string& name) {
  for (const auto& d : list)
    if (d.name == name) return &d;
  return nullptr;
}

[[noreturn]] void rethrow_at(const Error& e, const SourceLocation& loc, const std::string& what) {
  throw Error(e.code(), to_string(loc) + ": in " + what + ": " + e.what());
}

const FanDecl& require_fan(const Workspace& ws, const std::string& name, const SourceLocation* from) {
  const FanDecl* f = ws.find_fan(name);
  if (!f)
    throw Error(ErrorCode::UnresolvedReference, (from ? to_string(*from) + ": " : std::string()) + "no fan named '" +
                                                    name + "'");
  return *f;
}

LatticeMap lattice_map_of(const MorphismDecl& m, const Fan& src, const Fan& dst) {
  if (m.matrix.size() != dst.rank)
    throw Error(ErrorCode::ShapeMismatch, to_string(m.loc) + ": matrix of '" + m.name + "' has " +
                                              std::to_string(m.matrix.size()) + " rows, target rank is " +
                                              std::to_string(dst.rank));
  LatticeMap map;
  map.source_rank = src.rank;
  map.target_rank = dst.rank;
  map.matrix = IntMatrix(dst.rank, src.rank);
  for (std::size_t r = 0; r < dst.rank; ++r) {
    if (m.matrix[r].size() != src.rank)
      throw Error(ErrorCode::ShapeMismatch, to_string(m.loc) + ": row " + std::to_string(r + 1) + " of '" + m.name +
                                                "' has " + std::to_string(m.matrix[r].size()) +
                                                " entries, source rank is " + std::to_string(src.rank));
    for (std::size_t c = 0; c < src.rank; ++c) map.matrix(r, c) = static_cast<long>(m.matrix[r][c]);
  }
  return map;
}

void print_tuple(std::ostream& os, const std::vector<std::int64_t>& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
}

}  // namespace

SparsePoly parse_polynomial(const std::string& text) {
  Parser p(text, "<polynomial>");
  char symbol = 0;
  return p.polynomial_only(&symbol);
}

std::string print_polynomial(const SparsePoly& p, char var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Lexicographic on exponent vectors, largest first.
  std::vector<const SparsePoly::value_type*> terms;
  for (const auto& t : p) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
    auto i = a->first.begin(), j = b->first.begin();
    for (; i != a->first.end() && j != b->first.end(); ++i, ++j) {
      if (i->first != j->first) return i->first < j->first;
      if (i->second != j->second) return i->second > j->second;
    }
    return j == b->first.end() && i != a->first.end();
  });
  for (const auto* term : terms) {
    const auto& [mono, c] = *term;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1;
    if (!unit || mono.empty()) os << a.get_str();
    bool star = !unit;
    for (const auto& [v, e] : mono) {
      if (star) os << '*';
      os << var << v + 1;
      if (e != 1) os << '^' << e;
      star = true;
    }
  }
  return os.str();
}

const FanDecl* Workspace::find_fan(const std::string& name) const { return find_by_name(fans, name); }
const MorphismDecl* Workspace::find_morphism(const std::string& name) const { return find_by_name(morphisms, name); }
const ModuleDecl* Workspace::find_module(const std::string& name) const { return find_by_name(modules, name); }

void Workspace::merge(const Workspace& other) {
  auto append = [](auto& mine, const auto& theirs, const char* kind) {
    for (const auto& d : theirs) {
      for (const auto& e : mine)
        if (e.name == d.name)
          throw Error(ErrorCode::DuplicateName, to_string(d.loc) + ": " + kind + " '" + d.name +
                                                    "' already declared at " + to_string(e.loc));
      mine.push_back(d);
    }
  };
  append(fans, other.fans, "fan");
  append(morphisms, other.morphisms, "morphism");
  append(modules, other.modules, "module");
}

Workspace parse_input(const std::string& text, const std::string& file) { return Parser(text, file).workspace(); }

void resolve(const Workspace& ws) {
  for (const auto& f : ws.fans) {
    try {
      validate_fan(f.fan);
    } catch (const Error& e) {
      rethrow_at(e, f.loc, "fan '" + f.name + "'");
    }
  }
  for (const auto& m : ws.morphisms) {
    const Fan& src = require_fan(ws, m.source, &m.loc).fan;
    const Fan& dst = require_fan(ws, m.target, &m.loc).fan;
    lattice_map_of(m, src, dst);
  }
  for (const auto& m : ws.modules) {
    const Fan& fan = require_fan(ws, m.ring, &m.loc).fan;
    for (const auto& col : m.relations)
      if (col.size() != m.shifts.size())
        throw Error(ErrorCode::ShapeMismatch, to_string(m.loc) + ": module '" + m.name + "' has " +
                                                  std::to_string(m.shifts.size()) + " generators but a relation with " +
                                                  std::to_string(col.size()) + " entries");
    for (const auto& col : m.relations)
      for (const auto& p : col)
        for (const auto& [mono, c] : p)
          for (const auto& [v, e] : mono)
            if (v >= fan.rays.size())
              throw Error(ErrorCode::UnresolvedReference, to_string(m.loc) + ": module '" + m.name + "' uses " +
                                                              std::string(1, m.var_symbol) + std::to_string(v + 1) +
                                                              " but '" + m.ring + "' has " +
                                                              std::to_string(fan.rays.size()) + " variables");
  }
}

std::string print_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& f : ws.fans) {
    os << "fan " << f.name << " {\n  rank " << f.fan.rank << ";\n  rays";
    for (const auto& r : f.fan.rays) {
      os << ' ';
      print_tuple(os, r);
    }
    os << ";\n  cones";
    for (const auto& c : f.fan.max_cones) {
      os << " [";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
      os << ']';
    }
    os << ";\n}\n";
  }
  for (const auto& m : ws.morphisms) {
    os << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n  matrix [";
    for (std::size_t r = 0; r < m.matrix.size(); ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.matrix[r].size(); ++c) os << (c ? "," : "") << m.matrix[r][c];
      os << ']';
    }
    os << "];\n}\n";
  }
  for (const auto& m : ws.modules) {
    os << "module " << m.name << " over " << m.ring << " {\n  shifts [";
    for (std::size_t i = 0; i < m.shifts.size(); ++i) {
      if (i) os << ' ';
      print_tuple(os, m.shifts[i]);
    }
    os << "];\n";
    if (!m.relations.empty()) {
      os << "  relations [";
      for (std::size_t j = 0; j < m.relations.size(); ++j) {
        os << (j ? ", [" : "[");
        for (std::size_t i = 0; i < m.relations[j].size(); ++i)
          os << (i ? ", " : "") << print_polynomial(m.relations[j][i], m.var_symbol);
        os << ']';
      }
      os << "];\n";
    }
    os << "}\n";
  }
  return os.str();
}

GradedRing workspace_ring(const Workspace& ws, const std::string& fan_name) {
  const FanDecl& f = require_fan(ws, fan_name, nullptr);
  try {
    validate_fan(f.fan);
    return build_cox_ring(f.fan);
  } catch (const Error& e) {
    rethrow_at(e, f.loc, "fan '" + f.name + "'");
  }
}

GradedModule workspace_module(const Workspace& ws, const std::string& module_name) {
  const ModuleDecl* m = ws.find_module(module_name);
  if (!m) throw Error(ErrorCode::UnresolvedReference, "no module named '" + module_name + "'");
  const GradedRing ring = workspace_ring(ws, m->ring);
  const std::size_t n_free = ring.class_group.free_rank();
  const std::size_t n_tors = ring.class_group.torsion().size();

  try {
    std::vector<DegreeVector> gens;
    for (const auto& s : m->shifts) {
      if (s.size() != n_free + n_tors)
        throw Error(ErrorCode::DegreeMismatch, "shift has " + std::to_string(s.size()) + " coordinates, the class group of '" +
                                                   m->ring + "' needs " + std::to_string(n_free + n_tors));
      gens.push_back(ring.class_group.make(std::vector<std::int64_t>(s.begin(), s.begin() + n_free),
                                           std::vector<std::int64_t>(s.begin() + n_free, s.end())));
    }

    // Relation shifts are inferred from the first nonzero entry of each
    // column; zero columns are dropped.
    std::vector<DegreeVector> rels;
    std::vector<std::vector<HomogPoly>> columns;
    for (const auto& col : m->relations) {
      if (col.size() != gens.size())
        throw Error(ErrorCode::ShapeMismatch, "relation has " + std::to_string(col.size()) + " entries for " +
                                                  std::to_string(gens.size()) + " generators");
      std::vector<Terms> dense;
      std::optional<DegreeVector> rel_shift;
      for (std::size_t i = 0; i < col.size(); ++i) {
        Terms t;
        for (const auto& [mono, c] : col[i]) {
          Exponent e(ring.num_vars, 0);
          for (const auto& [v, k] : mono) {
            if (v >= ring.num_vars)
              throw Error(ErrorCode::UnresolvedReference, "variable index " + std::to_string(v + 1) + " out of range");
            e[v] = k;
          }
          t.emplace(std::move(e), c);
        }
        if (!rel_shift && !t.empty()) rel_shift = gens[i] - monomial_degree(ring, t.begin()->first);
        dense.push_back(std::move(t));
      }
      if (!rel_shift) continue;
      std::vector<HomogPoly> entries;
      for (std::size_t i = 0; i < dense.size(); ++i) entries.push_back(make_poly(ring, dense[i], gens[i] - *rel_shift));
      rels.push_back(*rel_shift);
      columns.push_back(std::move(entries));
    }
    std::vector<HomogPoly> entries;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < columns.size(); ++j) entries.push_back(columns[j][i]);
    return presented_module(ring, gens, rels, PolyMatrix(gens.size(), columns.size(), std::move(entries)));
  } catch (const Error& e) {
    rethrow_at(e, m->loc, "module '" + m->name + "'");
  }
}

MorphismLift workspace_lift(const Workspace& ws, const std::string& morphism_name) {
  const MorphismDecl* m = ws.find_morphism(morphism_name);
  if (!m) throw Error(ErrorCode::UnresolvedReference, "no morphism named '" + morphism_name + "'");
  const FanDecl& src = require_fan(ws, m->source, &m->loc);
  const FanDecl& dst = require_fan(ws, m->target, &m->loc);
  const LatticeMap map = lattice_map_of(*m, src.fan, dst.fan);
  try {
    return lift_morphism(src.fan, dst.fan, map);
  } catch (const Error& e) {
    rethrow_at(e, m->loc, "morphism '" + m->name + "'");
  }
}

}  // namespace coxcalc
