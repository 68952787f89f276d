#include "coxcalc/degree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coxcalc/error.hpp"

namespace coxcalc {

namespace {

std::int64_t reduce_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

void reduce_torsion(DegreeVector& d) {
  for (std::size_t i = 0; i < d.torsion.size(); ++i) d.torsion[i] = reduce_mod(d.torsion[i], d.moduli[i]);
}

std::vector<std::size_t> descending(const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out(s.rbegin(), s.rend());
  return out;
}

}  // namespace

DegreeVector::DegreeVector(std::vector<std::int64_t> free_part, std::vector<std::int64_t> torsion_part,
                           std::vector<std::int64_t> torsion_moduli)
    : free(std::move(free_part)), torsion(std::move(torsion_part)), moduli(std::move(torsion_moduli)) {
  assert(torsion.size() == moduli.size());
  reduce_torsion(*this);
}

bool DegreeVector::is_zero() const {
  return std::all_of(free.begin(), free.end(), [](auto v) { return v == 0; }) &&
         std::all_of(torsion.begin(), torsion.end(), [](auto v) { return v == 0; });
}

DegreeVector DegreeVector::zero_like() const {
  return DegreeVector(std::vector<std::int64_t>(free.size(), 0), std::vector<std::int64_t>(torsion.size(), 0),
                      moduli);
}

DegreeVector& DegreeVector::operator+=(const DegreeVector& o) {
  assert(free.size() == o.free.size() && torsion.size() == o.torsion.size());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] += o.free[i];
  for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] += o.torsion[i];
  reduce_torsion(*this);
  return *this;
}

DegreeVector& DegreeVector::operator-=(const DegreeVector& o) {
  assert(free.size() == o.free.size() && torsion.size() == o.torsion.size());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] -= o.free[i];
  for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] -= o.torsion[i];
  reduce_torsion(*this);
  return *this;
}

DegreeVector DegreeVector::operator-() const { return zero_like() - *this; }

DegreeVector operator*(std::int64_t k, const DegreeVector& d) {
  DegreeVector out = d;
  for (auto& v : out.free) v *= k;
  for (auto& v : out.torsion) v *= k;
  reduce_torsion(out);
  return out;
}

std::string to_string(const DegreeVector& d) {
  std::ostringstream os;
  if (d.torsion.empty() && d.free.size() == 1) {
    os << d.free[0];
    return os.str();
  }
  os << '(';
  for (std::size_t i = 0; i < d.free.size(); ++i) os << (i ? "," : "") << d.free[i];
  if (!d.torsion.empty()) {
    os << '|';
    for (std::size_t i = 0; i < d.torsion.size(); ++i) os << (i ? "," : "") << d.torsion[i];
    os << " mod ";
    for (std::size_t i = 0; i < d.moduli.size(); ++i) os << (i ? "," : "") << d.moduli[i];
  }
  os << ')';
  return os.str();
}

ClassGroup::ClassGroup(const IntMatrix& relations) : num_generators_(relations.rows()), relations_(relations) {
  const std::size_t n = relations.rows();
  const SnfResult snf = smith_normal_form(relations);
  std::size_t k = 0;
  while (k < snf.diagonal.size() && snf.diagonal[k] != 0) ++k;
  free_rank_ = n - k;

  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < k; ++i) {
    if (snf.diagonal[i] == 1) continue;
    torsion_rows.push_back(i);
    torsion_.push_back(snf.diagonal[i].get_si());
  }
  const std::size_t t = torsion_rows.size();
  const std::size_t f = free_rank_;

  IntMatrix g(f, n);
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = snf.left(k + r, c);

  // Change of basis on the free part: if some f variables have unimodular
  // degree matrix, make them the unit vectors, preferring later variables.
  IntMatrix basis_change = IntMatrix::identity(f);
  IntMatrix basis_change_inv = IntMatrix::identity(f);
  if (f > 0) {
    std::vector<std::size_t> best;
    std::vector<std::size_t> subset(f);
    std::iota(subset.begin(), subset.end(), 0);
    for (;;) {
      IntMatrix sub(f, f);
      for (std::size_t r = 0; r < f; ++r)
        for (std::size_t c = 0; c < f; ++c) sub(r, c) = g(r, subset[c]);
      Integer det = determinant(sub);
      if ((det == 1 || det == -1) && (best.empty() || descending(subset) > descending(best))) best = subset;
      std::size_t i = f;
      while (i > 0 && subset[i - 1] == n - f + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < f; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (!best.empty()) {
      IntMatrix sub(f, f);
      for (std::size_t r = 0; r < f; ++r)
        for (std::size_t c = 0; c < f; ++c) sub(r, c) = g(r, best[c]);
      basis_change_inv = sub;
      basis_change = *unimodular_inverse(sub);
    } else {
      HermiteResult h = hermite_normal_form(g);
      basis_change = h.transform;
      basis_change_inv = *unimodular_inverse(h.transform);
    }
  }
  const IntMatrix free_quotient = basis_change * g;

  quotient_ = IntMatrix(t + f, n);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t c = 0; c < n; ++c) {
      Integer v = snf.left(torsion_rows[j], c);
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), snf.diagonal[torsion_rows[j]].get_mpz_t());
      quotient_(j, c) = v;
    }
  }
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t c = 0; c < n; ++c) quotient_(t + r, c) = free_quotient(r, c);

  const IntMatrix u_inv = *unimodular_inverse(snf.left);
  IntMatrix embed(n, t + f);
  for (std::size_t j = 0; j < t; ++j) embed(torsion_rows[j], j) = 1;
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t j = 0; j < f; ++j) embed(k + r, t + j) = basis_change_inv(r, j);
  section_ = u_inv * embed;
}

DegreeVector ClassGroup::zero() const {
  return DegreeVector(std::vector<std::int64_t>(free_rank_, 0), std::vector<std::int64_t>(torsion_.size(), 0),
                      torsion_);
}

DegreeVector ClassGroup::make(std::vector<std::int64_t> free_part, std::vector<std::int64_t> torsion_part) const {
  if (torsion_part.empty()) torsion_part.assign(torsion_.size(), 0);
  if (free_part.size() != free_rank_ || torsion_part.size() != torsion_.size())
    throw Error(ErrorCode::DegreeMismatch, "degree has wrong shape for this class group");
  return DegreeVector(std::move(free_part), std::move(torsion_part), torsion_);
}

DegreeVector ClassGroup::project(const std::vector<std::int64_t>& divisor) const {
  assert(divisor.size() == num_generators_);
  const std::size_t t = torsion_.size();
  std::vector<std::int64_t> tors(t), fr(free_rank_);
  for (std::size_t r = 0; r < t + free_rank_; ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < num_generators_; ++c) s += quotient_(r, c) * static_cast<long>(divisor[c]);
    if (r < t)
      tors[r] = Integer(s % torsion_[r]).get_si();
    else
      fr[r - t] = s.get_si();
  }
  return DegreeVector(std::move(fr), std::move(tors), torsion_);
}

DegreeVector ClassGroup::generator_class(std::size_t i) const {
  std::vector<std::int64_t> e(num_generators_, 0);
  e[i] = 1;
  return project(e);
}

std::vector<std::int64_t> ClassGroup::section(const DegreeVector& d) const {
  assert(compatible(d));
  const std::size_t t = torsion_.size();
  std::vector<std::int64_t> out(num_generators_, 0);
  for (std::size_t r = 0; r < num_generators_; ++r) {
    Integer s = 0;
    for (std::size_t j = 0; j < t; ++j) s += section_(r, j) * static_cast<long>(d.torsion[j]);
    for (std::size_t j = 0; j < free_rank_; ++j) s += section_(r, t + j) * static_cast<long>(d.free[j]);
    out[r] = s.get_si();
  }
  return out;
}

bool ClassGroup::compatible(const DegreeVector& d) const {
  return d.free.size() == free_rank_ && d.torsion.size() == torsion_.size() && d.moduli == torsion_;
}

}  // namespace coxcalc
