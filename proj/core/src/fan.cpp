#include "coxcalc/fan.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "coxcalc/error.hpp"

namespace coxcalc {

namespace {

RatMatrix rows_to_matrix(const std::vector<LatticeVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(static_cast<long>(rows[r][c]));
  return m;
}

RatMatrix rows_to_matrix(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(rows[r][c]);
  return m;
}

Integer dot(const std::vector<Integer>& u, const LatticeVector& v) {
  Integer s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += u[i] * static_cast<long>(v[i]);
  return s;
}

Rational dot(const std::vector<Integer>& u, const std::vector<Rational>& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += Rational(u[i]) * v[i];
  return s;
}

// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Integer> column_as_primitive(const RatMatrix& basis, std::size_t col) {
  return primitive_integer_vector(basis.col(col));
}

std::string describe_vector(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::vector<LatticeVector> cone_generators(const Fan& fan, const ConeIndices& cone) {
  std::vector<LatticeVector> gens;
  gens.reserve(cone.size());
  for (std::size_t idx : cone) gens.push_back(fan.rays[idx]);
  return gens;
}

std::vector<std::size_t> lexicographic_cone_order(const Fan& fan) {
  std::vector<std::size_t> order(fan.max_cones.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<ConeIndices> sorted = fan.max_cones;
  for (auto& c : sorted) std::sort(c.begin(), c.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sorted[a] < sorted[b]; });
  return order;
}

// Is cone(gens[positions]) a face of the cone described by `desc`?
bool generates_face(const ConeDescription& desc, std::size_t num_gens, const std::set<std::size_t>& positions) {
  if (positions.empty()) return desc.pointed;
  std::set<std::size_t> on_all;
  for (std::size_t p = 0; p < num_gens; ++p) on_all.insert(p);
  for (std::size_t f = 0; f < desc.facets.size(); ++f) {
    const auto& fr = desc.facet_rays[f];
    bool contains_all = std::all_of(positions.begin(), positions.end(), [&](std::size_t p) {
      return std::find(fr.begin(), fr.end(), p) != fr.end();
    });
    if (!contains_all) continue;
    std::set<std::size_t> next;
    for (std::size_t p : fr)
      if (on_all.count(p)) next.insert(p);
    on_all = std::move(next);
  }
  return on_all == positions;
}

// Primitive generators of the extreme rays of the (pointed) cone cut out by
// equations == 0 and inequalities >= 0.
std::vector<std::vector<Integer>> extreme_rays(const std::vector<std::vector<Integer>>& equations,
                                               const std::vector<std::vector<Integer>>& inequalities,
                                               std::size_t n) {
  std::vector<std::vector<Integer>> all = equations;
  all.insert(all.end(), inequalities.begin(), inequalities.end());
  std::set<std::vector<Integer>> found;
  if (n == 0) return {};
  const std::size_t k = std::min(n - 1, all.size());
  for_each_subset(all.size(), k, [&](const std::vector<std::size_t>& subset) {
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i : subset) rows.push_back(all[i]);
    RatMatrix ns = nullspace(rows_to_matrix(rows, n));
    if (ns.cols() != 1) return;
    std::vector<Integer> d = column_as_primitive(ns, 0);
    for (int sign : {1, -1}) {
      std::vector<Integer> cand = d;
      if (sign < 0)
        for (auto& z : cand) z = -z;
      bool ok = true;
      for (const auto& e : equations) {
        Integer s = 0;
        for (std::size_t i = 0; i < n; ++i) s += e[i] * cand[i];
        if (s != 0) ok = false;
      }
      for (const auto& f : inequalities) {
        Integer s = 0;
        for (std::size_t i = 0; i < n; ++i) s += f[i] * cand[i];
        if (s < 0) ok = false;
      }
      if (ok) found.insert(cand);
    }
  });
  return {found.begin(), found.end()};
}

bool parallel_positive(const std::vector<Integer>& a, const LatticeVector& b) {
  // Both primitive, so positive parallelism means equality.
  for (std::size_t i = 0; i < b.size(); ++i)
    if (a[i] != static_cast<long>(b[i])) return false;
  return true;
}

}  // namespace

LatticeMap LatticeMap::identity(std::size_t rank) {
  return LatticeMap{rank, rank, IntMatrix::identity(rank)};
}

LatticeVector LatticeMap::apply(const LatticeVector& v) const {
  assert(v.size() == source_rank);
  LatticeVector out(target_rank, 0);
  for (std::size_t r = 0; r < target_rank; ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < source_rank; ++c) s += matrix(r, c) * static_cast<long>(v[c]);
    out[r] = s.get_si();
  }
  return out;
}

LatticeMap LatticeMap::compose_after(const LatticeMap& first) const {
  assert(first.target_rank == source_rank);
  return LatticeMap{first.source_rank, target_rank, matrix * first.matrix};
}

ConeDescription describe_cone(const std::vector<LatticeVector>& generators, std::size_t n) {
  ConeDescription desc;
  const RatMatrix g = rows_to_matrix(generators, n);
  const std::size_t s = rank(g);
  desc.dimension = s;
  const RatMatrix perp = nullspace(g);
  for (std::size_t c = 0; c < perp.cols(); ++c) desc.equations.push_back(column_as_primitive(perp, c));
  if (s == 0) return desc;

  std::set<std::vector<Integer>> seen;
  for_each_subset(generators.size(), s - 1, [&](const std::vector<std::size_t>& subset) {
    std::vector<std::vector<Integer>> rows = desc.equations;
    for (std::size_t i : subset) {
      std::vector<Integer> r;
      for (auto x : generators[i]) r.emplace_back(static_cast<long>(x));
      rows.push_back(std::move(r));
    }
    RatMatrix ns = nullspace(rows_to_matrix(rows, n));
    if (ns.cols() != 1) return;
    std::vector<Integer> u = column_as_primitive(ns, 0);
    bool nonneg = true, nonpos = true;
    for (const auto& gen : generators) {
      Integer v = dot(u, gen);
      if (v < 0) nonneg = false;
      if (v > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;
    if (!nonneg)
      for (auto& z : u) z = -z;
    if (!seen.insert(u).second) return;
    std::vector<std::size_t> on;
    for (std::size_t p = 0; p < generators.size(); ++p)
      if (dot(u, generators[p]) == 0) on.push_back(p);
    desc.facets.push_back(std::move(u));
    desc.facet_rays.push_back(std::move(on));
  });
  desc.pointed = !desc.facets.empty() && rank(rows_to_matrix(desc.facets, n)) == s;
  return desc;
}

bool cone_contains(const ConeDescription& cone, const LatticeVector& v) {
  for (const auto& e : cone.equations)
    if (dot(e, v) != 0) return false;
  for (const auto& f : cone.facets)
    if (dot(f, v) < 0) return false;
  return true;
}

bool cone_contains(const ConeDescription& cone, const std::vector<Rational>& v) {
  for (const auto& e : cone.equations)
    if (dot(e, v) != 0) return false;
  for (const auto& f : cone.facets)
    if (dot(f, v) < 0) return false;
  return true;
}

FanValidation validate_fan(const Fan& fan) {
  const std::size_t n = fan.rank;
  std::set<LatticeVector> distinct;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const LatticeVector& r = fan.rays[i];
    if (r.size() != n)
      throw Error(ErrorCode::InvalidFan, "ray " + std::to_string(i + 1) + " has " + std::to_string(r.size()) +
                                             " coordinates, expected " + std::to_string(n));
    std::int64_t g = 0;
    for (auto x : r) g = std::gcd(g, x);
    if (g != 1)
      throw Error(ErrorCode::NonPrimitiveRay, "ray " + std::to_string(i + 1) + " " + describe_vector(r) +
                                                  " is not primitive");
    if (!distinct.insert(r).second)
      throw Error(ErrorCode::DuplicateRay, "ray " + describe_vector(r) + " listed twice");
  }

  std::vector<bool> used(fan.rays.size(), false);
  std::vector<ConeDescription> descs;
  FanValidation report{fan.rays.size(), fan.max_cones.size(), true};
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const ConeIndices& cone = fan.max_cones[c];
    const std::string label = "cone " + std::to_string(c + 1);
    if (cone.empty() && !fan.rays.empty()) throw Error(ErrorCode::InvalidFan, label + " is empty");
    std::set<std::size_t> uniq(cone.begin(), cone.end());
    if (uniq.size() != cone.size()) throw Error(ErrorCode::DegenerateCone, label + " repeats a ray");
    for (std::size_t idx : cone) {
      if (idx >= fan.rays.size())
        throw Error(ErrorCode::InvalidFan, label + " references missing ray " + std::to_string(idx + 1));
      used[idx] = true;
    }
    ConeDescription d = describe_cone(cone_generators(fan, cone), n);
    if (!cone.empty() && !d.pointed) throw Error(ErrorCode::DegenerateCone, label + " contains a line");
    if (d.dimension < cone.size()) report.simplicial = false;
    // Every listed ray must span an edge of the cone.
    if (d.dimension >= 2) {
      for (std::size_t p = 0; p < cone.size(); ++p) {
        std::vector<std::vector<Integer>> through;
        for (std::size_t f = 0; f < d.facets.size(); ++f)
          if (std::find(d.facet_rays[f].begin(), d.facet_rays[f].end(), p) != d.facet_rays[f].end())
            through.push_back(d.facets[f]);
        if (through.empty() || rank(rows_to_matrix(through, n)) != d.dimension - 1)
          throw Error(ErrorCode::DegenerateCone,
                      label + ": ray " + describe_vector(fan.rays[cone[p]]) + " is not an edge");
      }
    }
    descs.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i])
      throw Error(ErrorCode::InvalidFan, "ray " + std::to_string(i + 1) + " is not in any maximal cone");

  for (std::size_t a = 0; a < fan.max_cones.size(); ++a) {
    for (std::size_t b = a + 1; b < fan.max_cones.size(); ++b) {
      const ConeIndices& ca = fan.max_cones[a];
      const ConeIndices& cb = fan.max_cones[b];
      std::set<std::size_t> sa(ca.begin(), ca.end()), sb(cb.begin(), cb.end());
      if (std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()) ||
          std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()))
        throw Error(ErrorCode::InvalidFan,
                    "cones " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " are nested");

      std::vector<std::vector<Integer>> eqs = descs[a].equations;
      eqs.insert(eqs.end(), descs[b].equations.begin(), descs[b].equations.end());
      std::vector<std::vector<Integer>> ineqs = descs[a].facets;
      ineqs.insert(ineqs.end(), descs[b].facets.begin(), descs[b].facets.end());

      std::set<std::size_t> pos_a, pos_b;
      bool overlap = false;
      for (const auto& r : extreme_rays(eqs, ineqs, n)) {
        bool matched = false;
        for (std::size_t pa = 0; pa < ca.size() && !matched; ++pa) {
          if (!parallel_positive(r, fan.rays[ca[pa]])) continue;
          auto it = std::find(cb.begin(), cb.end(), ca[pa]);
          if (it == cb.end()) continue;
          pos_a.insert(pa);
          pos_b.insert(static_cast<std::size_t>(it - cb.begin()));
          matched = true;
        }
        if (!matched) overlap = true;
      }
      if (overlap || !generates_face(descs[a], ca.size(), pos_a) || !generates_face(descs[b], cb.size(), pos_b))
        throw Error(ErrorCode::OverlappingCones, "cones " + std::to_string(a + 1) + " and " +
                                                     std::to_string(b + 1) + " meet outside a common face");
    }
  }
  return report;
}

bool is_simplicial(const Fan& fan) {
  for (const auto& cone : fan.max_cones)
    if (rank(rows_to_matrix(cone_generators(fan, cone), fan.rank)) != cone.size()) return false;
  return true;
}

bool is_smooth(const Fan& fan) {
  bool smooth = true;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto gens = cone_generators(fan, fan.max_cones[c]);
    IntMatrix m(gens.size(), fan.rank);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < fan.rank; ++j) m(i, j) = static_cast<long>(gens[i][j]);
    if (rank(m) != gens.size())
      throw Error(ErrorCode::NotSimplicial, "cone " + std::to_string(c + 1) + " has " +
                                                std::to_string(gens.size()) + " rays but dimension " +
                                                std::to_string(rank(m)));
    const SnfResult snf = smith_normal_form(m);
    for (const auto& d : snf.diagonal)
      if (d != 1) smooth = false;
  }
  return smooth;
}

bool is_complete(const Fan& fan) {
  const std::size_t n = fan.rank;
  if (n > 3) throw Error(ErrorCode::RankTooLarge, "completeness check supports rank <= 3");
  if (n == 0) return true;

  std::vector<ConeDescription> descs;
  for (const auto& cone : fan.max_cones) {
    descs.push_back(describe_cone(cone_generators(fan, cone), n));
    if (descs.back().dimension != n) return false;
  }
  if (descs.empty()) return false;

  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const ConeIndices& cone = fan.max_cones[c];
    for (const auto& on_facet : descs[c].facet_rays) {
      std::set<std::size_t> facet;
      for (std::size_t p : on_facet) facet.insert(cone[p]);
      std::size_t neighbours = 0;
      for (std::size_t o = 0; o < fan.max_cones.size(); ++o) {
        if (o == c) continue;
        std::set<std::size_t> other(fan.max_cones[o].begin(), fan.max_cones[o].end());
        if (std::includes(other.begin(), other.end(), facet.begin(), facet.end())) ++neighbours;
      }
      if (neighbours != 1) return false;
    }
  }

  std::mt19937_64 rng(0x5eedc0feULL);
  std::uniform_int_distribution<std::int64_t> coord(-12, 12);
  for (int sample = 0; sample < 256; ++sample) {
    LatticeVector p(n);
    for (auto& x : p) x = coord(rng);
    bool covered = std::any_of(descs.begin(), descs.end(), [&](const ConeDescription& d) { return cone_contains(d, p); });
    if (!covered) return false;
  }
  return true;
}

std::optional<std::size_t> find_containing_cone(const Fan& fan, const LatticeVector& v) {
  for (std::size_t c : lexicographic_cone_order(fan))
    if (cone_contains(describe_cone(cone_generators(fan, fan.max_cones[c]), fan.rank), v)) return c;
  return std::nullopt;
}

bool check_compatible(const Fan& src, const Fan& dst, const LatticeMap& map) {
  if (map.source_rank != src.rank || map.target_rank != dst.rank || map.matrix.rows() != dst.rank ||
      map.matrix.cols() != src.rank)
    throw Error(ErrorCode::ShapeMismatch, "lattice map is " + std::to_string(map.matrix.rows()) + "x" +
                                              std::to_string(map.matrix.cols()) + ", fans need " +
                                              std::to_string(dst.rank) + "x" + std::to_string(src.rank));
  std::vector<ConeDescription> targets;
  for (const auto& cone : dst.max_cones) targets.push_back(describe_cone(cone_generators(dst, cone), dst.rank));
  for (const auto& cone : src.max_cones) {
    std::vector<LatticeVector> images;
    for (std::size_t idx : cone) images.push_back(map.apply(src.rays[idx]));
    bool inside = std::any_of(targets.begin(), targets.end(), [&](const ConeDescription& t) {
      return std::all_of(images.begin(), images.end(), [&](const LatticeVector& v) { return cone_contains(t, v); });
    });
    if (!inside) return false;
  }
  return true;
}

namespace fans {

Fan projective_space(std::size_t n) {
  Fan f;
  f.rank = n;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(LatticeVector(n, -1));
  for_each_subset(n + 1, n, [&](const std::vector<std::size_t>& s) { f.max_cones.push_back(s); });
  return f;
}

Fan hirzebruch(std::int64_t a) {
  return Fan{2, {{1, 0}, {0, 1}, {-1, -a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
}

Fan affine_plane() { return Fan{2, {{1, 0}, {0, 1}}, {{0, 1}}}; }

}  // namespace fans

}  // namespace coxcalc
