#ifndef COXCALC_LINALG_HPP
#define COXCALC_LINALG_HPP

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace coxcalc {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    assert(data_.size() == rows_ * cols_);
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      assert(r.size() == cols_);
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  const std::vector<T>& data() const noexcept { return data_; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// U * A * V == diag(diagonal), diagonal[i] | diagonal[i+1], U and V unimodular.
// `diagonal` has min(rows, cols) entries; trailing zeros mark the rank deficit.
struct SnfResult {
  std::vector<Integer> diagonal;
  IntMatrix left;
  IntMatrix right;
};

SnfResult smith_normal_form(const IntMatrix& a);

// Row-style Hermite form: transform * a == hermite, transform unimodular.
struct HermiteResult {
  IntMatrix hermite;
  IntMatrix transform;
};

HermiteResult hermite_normal_form(const IntMatrix& a);

// Fraction-free (Bareiss) echelon form over the integers. Entries of the
// result are minors of the input; pivots lists one column per nonzero row.
struct IntegerEchelon {
  IntMatrix echelon;
  std::vector<std::size_t> pivots;
};

IntegerEchelon bareiss_echelon(const IntMatrix& a);

// Reduced row echelon form over Q with the zero rows dropped.
struct ReducedEchelon {
  RatMatrix rows;
  std::vector<std::size_t> pivots;
};

ReducedEchelon reduced_row_echelon(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

// Columns of the result form a basis of {v : a v = 0}.
RatMatrix nullspace(const RatMatrix& a);

Integer determinant(const IntMatrix& a);

// Inverse of a unimodular integer matrix; nullopt when singular or not unimodular.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& a);

// Some solution x of a x = b, or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& a, const std::vector<Rational>& b);

RatMatrix to_rational(const IntMatrix& a);

// Rows scaled by the lcm of their denominators.
IntMatrix clear_denominators(const RatMatrix& a);

// Scales a rational vector to a primitive integer vector with the same direction.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace coxcalc

#endif  // COXCALC_LINALG_HPP
