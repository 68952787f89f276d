#ifndef COXCALC_DEGREE_HPP
#define COXCALC_DEGREE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coxcalc/linalg.hpp"

namespace coxcalc {

// An element of Z^f + Z/d_1 + ... + Z/d_t. The moduli travel with the value
// so that arithmetic can reduce torsion residues without the group at hand.
struct DegreeVector {
  std::vector<std::int64_t> free;
  std::vector<std::int64_t> torsion;
  std::vector<std::int64_t> moduli;

  DegreeVector() = default;
  explicit DegreeVector(std::vector<std::int64_t> free_part) : free(std::move(free_part)) {}
  DegreeVector(std::vector<std::int64_t> free_part, std::vector<std::int64_t> torsion_part,
               std::vector<std::int64_t> torsion_moduli);

  bool is_zero() const;
  DegreeVector zero_like() const;

  DegreeVector& operator+=(const DegreeVector& o);
  DegreeVector& operator-=(const DegreeVector& o);
  friend DegreeVector operator+(DegreeVector a, const DegreeVector& b) { return a += b; }
  friend DegreeVector operator-(DegreeVector a, const DegreeVector& b) { return a -= b; }
  DegreeVector operator-() const;
  friend DegreeVector operator*(std::int64_t k, const DegreeVector& d);

  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
  friend auto operator<=>(const DegreeVector& a, const DegreeVector& b) {
    if (auto c = a.free <=> b.free; c != 0) return c;
    return a.torsion <=> b.torsion;
  }
};

// "(1,0)", "3", or "(1|1 mod 2)" when torsion is present.
std::string to_string(const DegreeVector& d);

// Cokernel of an integer matrix A (n x r), viewed as Z^n / A Z^r. The
// quotient map sends a divisor (vector in Z^n) to a DegreeVector; `section`
// picks a preimage for each class.
class ClassGroup {
 public:
  ClassGroup() = default;
  explicit ClassGroup(const IntMatrix& relations);

  std::size_t num_generators() const noexcept { return num_generators_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<std::int64_t>& torsion() const noexcept { return torsion_; }
  bool torsion_free() const noexcept { return torsion_.empty(); }

  DegreeVector zero() const;
  DegreeVector make(std::vector<std::int64_t> free_part, std::vector<std::int64_t> torsion_part = {}) const;
  DegreeVector project(const std::vector<std::int64_t>& divisor) const;
  DegreeVector generator_class(std::size_t i) const;
  std::vector<std::int64_t> section(const DegreeVector& d) const;

  // (t + f) x n matrix: torsion coordinates first, then free coordinates.
  const IntMatrix& quotient_matrix() const noexcept { return quotient_; }
  const IntMatrix& relations() const noexcept { return relations_; }

  bool compatible(const DegreeVector& d) const;

  friend bool operator==(const ClassGroup& a, const ClassGroup& b) {
    return a.num_generators_ == b.num_generators_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_ &&
           a.quotient_ == b.quotient_;
  }

 private:
  std::size_t num_generators_ = 0;
  std::size_t free_rank_ = 0;
  IntMatrix relations_;
  std::vector<std::int64_t> torsion_;
  IntMatrix quotient_;
  IntMatrix section_;
};

}  // namespace coxcalc

#endif  // COXCALC_DEGREE_HPP
