#ifndef COXCALC_COX_RING_HPP
#define COXCALC_COX_RING_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "coxcalc/degree.hpp"
#include "coxcalc/fan.hpp"
#include "coxcalc/polynomial.hpp"

namespace coxcalc {

// Polynomial ring k[x_1..x_n] graded by a finitely generated abelian group.
struct GradedRing {
  std::size_t num_vars = 0;
  ClassGroup class_group;
  std::vector<DegreeVector> var_degrees;
  std::vector<Exponent> irrelevant_gens;
  // lambda with lambda(deg x_i) > 0 on free parts; makes every graded piece finite.
  std::optional<std::vector<Rational>> positivity;
  char var_symbol = 'x';

  DegreeVector zero_degree() const { return class_group.zero(); }

  friend bool operator==(const GradedRing& a, const GradedRing& b) {
    return a.num_vars == b.num_vars && a.class_group == b.class_group && a.var_degrees == b.var_degrees &&
           a.irrelevant_gens == b.irrelevant_gens && a.positivity == b.positivity;
  }
};

// Cl = Z^rays modulo the image of the pairing with M. Throws RaysDontSpan.
ClassGroup fan_class_group(const Fan& fan);

GradedRing build_cox_ring(const Fan& fan, char var_symbol = 'x');

// A functional positive on the free part of every degree, or nullopt.
std::optional<std::vector<Rational>> find_positivity(const std::vector<DegreeVector>& degrees, std::size_t free_rank);

DegreeVector monomial_degree(const GradedRing& ring, const Exponent& e);

// Lexicographically ascending. Throws NoPositivityCertificate.
std::vector<Exponent> monomials_of_degree(const GradedRing& ring, const DegreeVector& d);

HomogPoly zero_poly(const GradedRing& ring, const DegreeVector& d);
HomogPoly constant_poly(const GradedRing& ring, const Rational& c);
HomogPoly variable(const GradedRing& ring, std::size_t i);
HomogPoly monomial(const GradedRing& ring, const Exponent& e, const Rational& c = 1);
// Throws NotHomogeneous if the terms have different degrees.
HomogPoly make_poly(const GradedRing& ring, const Terms& terms, const DegreeVector& degree_if_zero);

// Group homomorphism Cl(Y) -> Cl(X) stored by the images of the coordinate
// generators of Cl(Y) (torsion generators first, then free ones).
struct GradingMap {
  std::vector<DegreeVector> generator_images;
  DegreeVector target_zero;

  DegreeVector apply(const DegreeVector& d) const;
  friend bool operator==(const GradingMap&, const GradingMap&) = default;
};

// The map deg(y_j) |-> deg(images[j]). Throws InconsistentImages when the
// image degrees do not respect the relations of Cl(Y).
GradingMap induced_grading_map(const GradedRing& source, const GradedRing& target,
                               const std::vector<Exponent>& images);

// Ring map S -> R sending y_j to the monomial images[j]. Throws
// InconsistentImages if deg(images[j]) != phi(deg y_j).
HomogPoly substitute(const HomogPoly& p, const GradedRing& source, const GradedRing& target,
                     const std::vector<Exponent>& images, const GradingMap& phi);

}  // namespace coxcalc

#endif  // COXCALC_COX_RING_HPP
