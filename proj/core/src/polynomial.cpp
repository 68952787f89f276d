#include "coxcalc/polynomial.hpp"

#include <sstream>

#include "coxcalc/error.hpp"

namespace coxcalc {

Exponent exponent_sum(const Exponent& a, const Exponent& b) {
  assert(a.size() == b.size());
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Exponent exponent_quotient(const Exponent& a, const Exponent& b) {
  assert(divides(b, a));
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::uint64_t total_degree(const Exponent& e) {
  std::uint64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

std::string monomial_to_string(const Exponent& e, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << var << (i + 1);
    if (e[i] > 1) os << '^' << e[i];
  }
  if (first) return "1";
  return os.str();
}

HomogPoly::HomogPoly(std::size_t num_vars, DegreeVector degree, Terms terms)
    : num_vars_(num_vars), degree_(std::move(degree)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    assert(it->first.size() == num_vars_);
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

Rational HomogPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& o) {
  if (o.degree_ != degree_)
    throw Error(ErrorCode::DegreeMismatch,
                "cannot add polynomials of degrees " + coxcalc::to_string(degree_) + " and " +
                    coxcalc::to_string(o.degree_));
  for (const auto& [e, c] : o.terms_) {
    Rational& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& o) { return *this += -o; }

HomogPoly& HomogPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HomogPoly HomogPoly::operator-() const {
  HomogPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
  assert(a.num_vars_ == b.num_vars_);
  HomogPoly out(a.num_vars_, a.degree_ + b.degree_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational& slot = out.terms_[exponent_sum(ea, eb)];
      slot += ca * cb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) it = it->second == 0 ? out.terms_.erase(it) : std::next(it);
  return out;
}

std::string HomogPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    Rational c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const bool constant = total_degree(e) == 0;
    if (constant) {
      os << coxcalc::to_string(c);
    } else {
      if (c != 1) os << coxcalc::to_string(c) << '*';
      os << monomial_to_string(e, var);
    }
  }
  return os.str();
}

}  // namespace coxcalc
