#ifndef COXCALC_POLYNOMIAL_HPP
#define COXCALC_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxcalc/degree.hpp"
#include "coxcalc/linalg.hpp"

namespace coxcalc {

using Exponent = std::vector<std::uint32_t>;
using Terms = std::map<Exponent, Rational>;

Exponent exponent_sum(const Exponent& a, const Exponent& b);
// a - b, assuming b divides a.
Exponent exponent_quotient(const Exponent& a, const Exponent& b);
bool divides(const Exponent& a, const Exponent& b);
std::uint64_t total_degree(const Exponent& e);

// "x1^2*x3", or "1" for the empty monomial.
std::string monomial_to_string(const Exponent& e, char var = 'x');

// A homogeneous polynomial. The degree is stored explicitly so the zero
// polynomial still knows where it lives.
class HomogPoly {
 public:
  HomogPoly() = default;
  HomogPoly(std::size_t num_vars, DegreeVector degree) : num_vars_(num_vars), degree_(std::move(degree)) {}
  // Caller guarantees every monomial of `terms` has degree `degree`.
  HomogPoly(std::size_t num_vars, DegreeVector degree, Terms terms);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const DegreeVector& degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const;

  HomogPoly& operator+=(const HomogPoly& o);
  HomogPoly& operator-=(const HomogPoly& o);
  HomogPoly& operator*=(const Rational& c);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(const Rational& c, HomogPoly p) { return p *= c; }
  HomogPoly operator-() const;
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b);

  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

  std::string to_string(char var = 'x') const;

 private:
  std::size_t num_vars_ = 0;
  DegreeVector degree_;
  Terms terms_;
};

}  // namespace coxcalc

#endif  // COXCALC_POLYNOMIAL_HPP
