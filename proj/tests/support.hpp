#ifndef COXCALC_TESTS_SUPPORT_HPP
#define COXCALC_TESTS_SUPPORT_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coxcalc/dsl.hpp"
#include "coxcalc/graded_module.hpp"
#include "coxcalc/morphism.hpp"
#include "coxcalc/sheaf_ops.hpp"

namespace coxcalc::testing {

inline MorphismLift blowup_lift() {
  return lift_morphism(fans::hirzebruch(1), fans::projective_space(2), LatticeMap::identity(2));
}

inline MorphismLift hirzebruch_projection(std::int64_t a) {
  return lift_morphism(fans::hirzebruch(a), fans::projective_space(1), LatticeMap{2, 1, IntMatrix{{1, 0}}});
}

inline GradedModule tangent_module(const GradedRing& r) { return cokernel_module(euler_tangent_map(r)); }

inline HomogPoly poly(const GradedRing& ring, const std::string& text, std::optional<DegreeVector> deg = {}) {
  Terms terms;
  for (const auto& [mono, c] : parse_polynomial(text)) {
    Exponent e(ring.num_vars, 0);
    for (const auto& [v, k] : mono) e.at(v) = k;
    terms.emplace(std::move(e), c);
  }
  return make_poly(ring, terms, deg ? *deg : ring.zero_degree());
}

inline DegreeVector deg2(const GradedRing& ring, std::int64_t a, std::int64_t b) { return ring.class_group.make({a, b}); }

// (s,t,u) |-> a x2x4 s + x3 t - x1 u, from R((2,0)) + R((a+1,2))^2 to R((a+2,2)).
inline GradedMap qdual_map(const GradedRing& r, std::int64_t a) {
  const auto src = free_module(r, {deg2(r, 2, 0), deg2(r, a + 1, 2), deg2(r, a + 1, 2)});
  const auto dst = free_module(r, {deg2(r, a + 2, 2)});
  const std::string first = std::to_string(a) + "*x2*x4";
  PolyMatrix m(1, 3, {poly(r, first, deg2(r, a, 2)), poly(r, "x3"), poly(r, "-x1")});
  return graded_map(src, dst, std::move(m));
}

// The three syzygies of theta, as columns of length 4, with their degrees.
struct KernelGenerator {
  DegreeVector degree;
  std::vector<HomogPoly> entries;
};

inline std::vector<KernelGenerator> theta_kernel_generators(const GradedRing& r, std::int64_t a) {
  const std::string A = std::to_string(a);
  auto entry = [&](const std::string& text, std::size_t i, const DegreeVector& d) {
    return poly(r, text, d - r.var_degrees[i]);
  };
  std::vector<KernelGenerator> out;
  const DegreeVector d1 = deg2(r, 2, 0), d2 = deg2(r, a + 1, 2);
  out.push_back({d1, {entry("x3", 0, d1), entry("0", 1, d1), entry("-x1", 2, d1), entry("0", 3, d1)}});
  out.push_back(
      {d2, {entry("-" + A + "*x2*x4", 0, d2), entry("x1*x4", 1, d2), entry("0", 2, d2), entry("-x1*x2", 3, d2)}});
  out.push_back(
      {d2, {entry("0", 0, d2), entry("x3*x4", 1, d2), entry("-" + A + "*x2*x4", 2, d2), entry("-x2*x3", 3, d2)}});
  return out;
}

// Every exponent vector with entries <= bound, filtered by degree. With the
// all-ones functional positive on each variable degree, no exponent of a
// monomial of degree d exceeds the coordinate sum of d.
inline std::vector<Exponent> brute_force_monomials(const GradedRing& ring, const DegreeVector& d) {
  std::int64_t bound = 0;
  for (auto v : d.free) bound += v;
  std::vector<Exponent> out;
  if (bound < 0) return out;
  Exponent e(ring.num_vars, 0);
  for (;;) {
    if (monomial_degree(ring, e) == d) out.push_back(e);
    std::size_t i = ring.num_vars;
    while (i > 0) {
      --i;
      if (e[i] < static_cast<std::uint32_t>(bound)) {
        ++e[i];
        break;
      }
      e[i] = 0;
      if (i == 0) return out;
    }
    if (ring.num_vars == 0) return out;
  }
}

inline HomogPoly random_poly(std::mt19937& rng, const GradedRing& ring, const DegreeVector& d) {
  HomogPoly p = zero_poly(ring, d);
  std::uniform_int_distribution<int> coeff(-3, 3), den(1, 2);
  for (const auto& mono : monomials_of_degree(ring, d)) {
    const int c = coeff(rng);
    if (c != 0) p += monomial(ring, mono, Rational(c, den(rng)));
  }
  return p;
}

// Dimension formulas for the Hirzebruch surface F_a, graded by (k, l).
inline std::size_t dim_R_k0(std::int64_t k) { return k < 0 ? 0 : static_cast<std::size_t>(k + 1); }

inline std::size_t dim_R_k1(std::int64_t a, std::int64_t k) {
  if (k < 0) return 0;
  if (k < a) return static_cast<std::size_t>(k + 1);
  return static_cast<std::size_t>(2 * k + 2 - a);
}

inline std::size_t dim_P_n0(std::int64_t a, std::int64_t n) {
  if (a == 0) {
    if (n < -1) return 0;
    if (n == -1) return 2;
    return static_cast<std::size_t>(4 * n + 6);
  }
  if (a == 1) {
    if (n < -1) return 0;
    if (n == -1) return 3;
    if (n == 0) return 6;
    return static_cast<std::size_t>(4 * n + 6);
  }
  if (n < -a) return 0;
  if (n <= -2) return static_cast<std::size_t>(n + a + 1);
  if (n <= a - 1) return static_cast<std::size_t>(3 * n + a + 5);
  return static_cast<std::size_t>(4 * n + 6);
}

// Column vector of a module element m * e_gen in a free module's piece.
inline std::vector<Rational> free_element(const PresentedPiece& piece, const std::vector<HomogPoly>& entries) {
  std::vector<Rational> v(piece.ambient_size(), Rational(0));
  for (std::size_t g = 0; g < entries.size(); ++g)
    for (const auto& [mono, c] : entries[g].terms()) v.at(*piece.ambient_position(g, mono)) += c;
  return v;
}

}  // namespace coxcalc::testing

#endif  // COXCALC_TESTS_SUPPORT_HPP
