#include "coxcalc/cox_ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "coxcalc/error.hpp"

namespace coxcalc {

ClassGroup fan_class_group(const Fan& fan) {
  IntMatrix pairing(fan.rays.size(), fan.rank);
  for (std::size_t r = 0; r < fan.rays.size(); ++r)
    for (std::size_t j = 0; j < fan.rank; ++j) pairing(r, j) = static_cast<long>(fan.rays[r][j]);
  if (rank(pairing) != fan.rank)
    throw Error(ErrorCode::RaysDontSpan, "rays span a sublattice of rank " + std::to_string(rank(pairing)) +
                                             " in rank " + std::to_string(fan.rank));
  return ClassGroup(pairing);
}

std::optional<std::vector<Rational>> find_positivity(const std::vector<DegreeVector>& degrees, std::size_t f) {
  if (degrees.empty()) return std::vector<Rational>(f, Rational(1));
  if (f == 0) return std::nullopt;

  auto value = [](const std::vector<Rational>& lambda, const DegreeVector& d) {
    Rational s = 0;
    for (std::size_t k = 0; k < d.free.size(); ++k) s += lambda[k] * static_cast<long>(d.free[k]);
    return s;
  };
  std::vector<Rational> ones(f, Rational(1));
  if (std::all_of(degrees.begin(), degrees.end(), [&](const DegreeVector& d) { return value(ones, d) > 0; }))
    return ones;

  // {lambda : G lambda >= 1} is pointed when the degrees span, so a feasible
  // system has a vertex cut out by f of the rows.
  const std::size_t n = degrees.size();
  if (f > n) return std::nullopt;
  std::vector<std::size_t> subset(f);
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    RatMatrix a(f, f);
    for (std::size_t r = 0; r < f; ++r)
      for (std::size_t c = 0; c < f; ++c) a(r, c) = Rational(static_cast<long>(degrees[subset[r]].free[c]));
    if (rank(a) == f) {
      auto sol = solve(a, std::vector<Rational>(f, Rational(1)));
      if (sol && std::all_of(degrees.begin(), degrees.end(), [&](const DegreeVector& d) { return value(*sol, d) >= 1; }))
        return sol;
    }
    std::size_t i = f;
    while (i > 0 && subset[i - 1] == n - f + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < f; ++j) subset[j] = subset[j - 1] + 1;
  }
  return std::nullopt;
}

GradedRing build_cox_ring(const Fan& fan, char var_symbol) {
  GradedRing ring;
  ring.num_vars = fan.rays.size();
  ring.class_group = fan_class_group(fan);
  ring.var_symbol = var_symbol;
  for (std::size_t i = 0; i < ring.num_vars; ++i) ring.var_degrees.push_back(ring.class_group.generator_class(i));
  for (const auto& cone : fan.max_cones) {
    Exponent e(ring.num_vars, 1);
    for (std::size_t idx : cone) e[idx] = 0;
    ring.irrelevant_gens.push_back(std::move(e));
  }
  std::sort(ring.irrelevant_gens.begin(), ring.irrelevant_gens.end(), std::greater<>());
  ring.irrelevant_gens.erase(std::unique(ring.irrelevant_gens.begin(), ring.irrelevant_gens.end()),
                             ring.irrelevant_gens.end());
  ring.positivity = find_positivity(ring.var_degrees, ring.class_group.free_rank());
  return ring;
}

DegreeVector monomial_degree(const GradedRing& ring, const Exponent& e) {
  assert(e.size() == ring.num_vars);
  DegreeVector d = ring.zero_degree();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) d += static_cast<std::int64_t>(e[i]) * ring.var_degrees[i];
  return d;
}

std::vector<Exponent> monomials_of_degree(const GradedRing& ring, const DegreeVector& d) {
  if (!ring.positivity)
    throw Error(ErrorCode::NoPositivityCertificate, "graded pieces of this ring are not known to be finite");
  if (!ring.class_group.compatible(d))
    throw Error(ErrorCode::DegreeMismatch, "degree " + to_string(d) + " does not belong to the class group");

  const std::size_t n = ring.num_vars;
  const std::size_t f = d.free.size();
  const auto& lambda = *ring.positivity;
  Integer den = 1;
  for (const auto& q : lambda) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<std::int64_t> scaled(f);
  for (std::size_t k = 0; k < f; ++k) scaled[k] = Integer(lambda[k] * den).get_si();

  auto weight = [&](const DegreeVector& v) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < f; ++k) s += scaled[k] * v.free[k];
    return s;
  };
  std::vector<std::int64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = weight(ring.var_degrees[i]);
  const std::int64_t budget = weight(d);

  std::vector<Exponent> out;
  if (budget < 0) return out;
  Exponent e(n, 0);
  DegreeVector running = ring.zero_degree();
  // Exponents are tried in increasing order, so leaves come out in lex order.
  std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      if (running == d) out.push_back(e);
      return;
    }
    DegreeVector saved = running;
    for (std::uint32_t k = 0;; ++k) {
      e[i] = k;
      dfs(i + 1, left);
      if (left < w[i]) break;
      left -= w[i];
      running += ring.var_degrees[i];
    }
    e[i] = 0;
    running = std::move(saved);
  };
  dfs(0, budget);
  return out;
}

HomogPoly zero_poly(const GradedRing& ring, const DegreeVector& d) { return HomogPoly(ring.num_vars, d); }

HomogPoly constant_poly(const GradedRing& ring, const Rational& c) {
  return HomogPoly(ring.num_vars, ring.zero_degree(), Terms{{Exponent(ring.num_vars, 0), c}});
}

HomogPoly variable(const GradedRing& ring, std::size_t i) {
  Exponent e(ring.num_vars, 0);
  e[i] = 1;
  return monomial(ring, e);
}

HomogPoly monomial(const GradedRing& ring, const Exponent& e, const Rational& c) {
  return HomogPoly(ring.num_vars, monomial_degree(ring, e), Terms{{e, c}});
}

HomogPoly make_poly(const GradedRing& ring, const Terms& terms, const DegreeVector& degree_if_zero) {
  std::optional<DegreeVector> deg;
  for (const auto& [e, c] : terms) {
    if (c == 0) continue;
    if (e.size() != ring.num_vars)
      throw Error(ErrorCode::NotHomogeneous, "monomial has " + std::to_string(e.size()) + " exponents, ring has " +
                                                 std::to_string(ring.num_vars) + " variables");
    DegreeVector here = monomial_degree(ring, e);
    if (deg && *deg != here)
      throw Error(ErrorCode::NotHomogeneous, "terms of degrees " + to_string(*deg) + " and " + to_string(here));
    deg = here;
  }
  return HomogPoly(ring.num_vars, deg ? *deg : degree_if_zero, terms);
}

DegreeVector GradingMap::apply(const DegreeVector& d) const {
  DegreeVector out = target_zero;
  const std::size_t t = d.torsion.size();
  assert(generator_images.size() == t + d.free.size());
  for (std::size_t k = 0; k < t; ++k) out += d.torsion[k] * generator_images[k];
  for (std::size_t k = 0; k < d.free.size(); ++k) out += d.free[k] * generator_images[t + k];
  return out;
}

GradingMap induced_grading_map(const GradedRing& source, const GradedRing& target,
                               const std::vector<Exponent>& images) {
  if (images.size() != source.num_vars)
    throw Error(ErrorCode::InconsistentImages, "need one image per source variable");
  std::vector<DegreeVector> image_degrees;
  for (const auto& img : images) {
    if (img.size() != target.num_vars)
      throw Error(ErrorCode::InconsistentImages, "image monomial has the wrong number of exponents");
    image_degrees.push_back(monomial_degree(target, img));
  }
  auto psi = [&](const std::vector<std::int64_t>& divisor) {
    DegreeVector out = target.zero_degree();
    for (std::size_t j = 0; j < divisor.size(); ++j) out += divisor[j] * image_degrees[j];
    return out;
  };

  const IntMatrix& rel = source.class_group.relations();
  for (std::size_t c = 0; c < rel.cols(); ++c) {
    std::vector<std::int64_t> col(rel.rows());
    for (std::size_t r = 0; r < rel.rows(); ++r) col[r] = rel(r, c).get_si();
    if (!psi(col).is_zero())
      throw Error(ErrorCode::InconsistentImages,
                  "image degrees do not respect relation " + std::to_string(c + 1) + " of the source class group");
  }

  GradingMap phi;
  phi.target_zero = target.zero_degree();
  const ClassGroup& cl = source.class_group;
  const std::size_t t = cl.torsion().size();
  for (std::size_t k = 0; k < t + cl.free_rank(); ++k) {
    DegreeVector basis = cl.zero();
    if (k < t)
      basis.torsion[k] = 1;
    else
      basis.free[k - t] = 1;
    phi.generator_images.push_back(psi(cl.section(basis)));
  }
  return phi;
}

HomogPoly substitute(const HomogPoly& p, const GradedRing& source, const GradedRing& target,
                     const std::vector<Exponent>& images, const GradingMap& phi) {
  if (images.size() != source.num_vars)
    throw Error(ErrorCode::InconsistentImages, "need one image per source variable");
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (monomial_degree(target, images[j]) != phi.apply(source.var_degrees[j]))
      throw Error(ErrorCode::InconsistentImages,
                  std::string(1, source.var_symbol) + std::to_string(j + 1) + " maps to " +
                      monomial_to_string(images[j], target.var_symbol) + " of degree " +
                      to_string(monomial_degree(target, images[j])) + ", expected " +
                      to_string(phi.apply(source.var_degrees[j])));
  }
  Terms out;
  for (const auto& [e, c] : p.terms()) {
    Exponent img(target.num_vars, 0);
    for (std::size_t j = 0; j < e.size(); ++j)
      for (std::size_t i = 0; i < target.num_vars; ++i) img[i] += e[j] * images[j][i];
    out[img] += c;
  }
  return HomogPoly(target.num_vars, phi.apply(p.degree()), std::move(out));
}

}  // namespace coxcalc
