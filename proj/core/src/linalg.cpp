#include "coxcalc/linalg.hpp"

#include <algorithm>
#include <utility>

#include "coxcalc/error.hpp"

namespace coxcalc {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::DuplicateRay: return "DuplicateRay";
    case ErrorCode::DegenerateCone: return "DegenerateCone";
    case ErrorCode::OverlappingCones: return "OverlappingCones";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RaysDontSpan: return "RaysDontSpan";
    case ErrorCode::NoPositivityCertificate: return "NoPositivityCertificate";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::InconsistentImages: return "InconsistentImages";
    case ErrorCode::DegreeInconsistentMap: return "DegreeInconsistentMap";
    case ErrorCode::TorsionGrading: return "TorsionGrading";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::TargetNotSmooth: return "TargetNotSmooth";
    case ErrorCode::IncompatibleFans: return "IncompatibleFans";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotProjectiveSpaceTarget: return "NotProjectiveSpaceTarget";
    case ErrorCode::WindowInsufficient: return "WindowInsufficient";
    case ErrorCode::NotFreeOnWindow: return "NotFreeOnWindow";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Pivot on the smallest nonzero entry of the trailing block.
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Integer mag = abs(a(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pr = i;
            pc = j;
          }
        }
      if (!found) break;
      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      const Integer pivot = a(t, t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), pivot.get_mpz_t());
        add_row_multiple(a, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), pivot.get_mpz_t());
        add_col_multiple(a, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column are clear; enforce divisibility of the trailing block.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), pivot.get_mpz_t())) {
            add_row_multiple(a, t, i, Integer(1));
            add_row_multiple(u, t, i, Integer(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }

  SnfResult out;
  out.diagonal.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal.push_back(a(i, i));
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

HermiteResult hermite_normal_form(const IntMatrix& input) {
  IntMatrix h = input;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  IntMatrix t = IntMatrix::identity(m);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    // Euclid down the column until a single nonzero remains at `row`.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      h.swap_rows(row, best);
      t.swap_rows(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
        add_row_multiple(h, i, row, -q);
        add_row_multiple(t, i, row, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(row, c) == 0) continue;
    if (h(row, c) < 0) {
      negate_row(h, row);
      negate_row(t, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
      add_row_multiple(h, i, row, -q);
      add_row_multiple(t, i, row, -q);
    }
    ++row;
  }
  return {std::move(h), std::move(t)};
}

IntegerEchelon bareiss_echelon(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n && k < m; ++c) {
    std::size_t pr = m;
    for (std::size_t i = k; i < m; ++i)
      if (a(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr == m) continue;
    a.swap_rows(k, pr);
    const Integer piv = a(k, c);
    for (std::size_t i = k + 1; i < m; ++i) {
      const Integer lead = a(i, c);
      for (std::size_t j = c + 1; j < n; ++j) {
        Integer val = piv * a(i, j) - lead * a(k, j);
        mpz_divexact(val.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(val);
      }
      a(i, c) = 0;
    }
    prev = piv;
    pivots.push_back(c);
    ++k;
  }
  return {std::move(a), std::move(pivots)};
}

IntMatrix clear_denominators(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Integer& d = a(r, c).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Rational scaled = a(r, c) * l;
      out(r, c) = scaled.get_num();
    }
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Rational(a(r, c));
  return out;
}

ReducedEchelon reduced_row_echelon(const RatMatrix& a) {
  IntegerEchelon ech = bareiss_echelon(clear_denominators(a));
  const std::size_t r = ech.pivots.size();
  RatMatrix rows(r, a.cols());
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& piv = ech.echelon(i, ech.pivots[i]);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      rows(i, c) = Rational(ech.echelon(i, c), piv);
      rows(i, c).canonicalize();
    }
  }
  // Back-substitute to clear entries above each pivot.
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = ech.pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      const Rational f = rows(k, pc);
      if (f == 0) continue;
      for (std::size_t c = pc; c < a.cols(); ++c) rows(k, c) -= f * rows(i, c);
    }
  }
  return {std::move(rows), std::move(ech.pivots)};
}

std::size_t rank(const IntMatrix& a) { return bareiss_echelon(a).pivots.size(); }

std::size_t rank(const RatMatrix& a) { return rank(clear_denominators(a)); }

RatMatrix nullspace(const RatMatrix& a) {
  const ReducedEchelon rref = reduced_row_echelon(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : rref.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RatMatrix basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < rref.pivots.size(); ++i) basis(rref.pivots[i], k) = -rref.rows(i, f);
  }
  return basis;
}

Integer determinant(const IntMatrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer val = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(val.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(val);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::optional<std::vector<Rational>> solve(const RatMatrix& a, const std::vector<Rational>& b) {
  assert(b.size() == a.rows());
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const ReducedEchelon rref = reduced_row_echelon(aug);
  std::vector<Rational> x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < rref.pivots.size(); ++i) {
    if (rref.pivots[i] == a.cols()) return std::nullopt;
    x[rref.pivots[i]] = rref.rows(i, a.cols());
  }
  return x;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  if (abs(determinant(a)) != 1) return std::nullopt;
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = Rational(a(r, c));
    aug(r, n + r) = 1;
  }
  const ReducedEchelon rref = reduced_row_echelon(aug);
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& q = rref.rows(r, n + c);
      if (q.get_den() != 1) return std::nullopt;
      inv(r, c) = q.get_num();
    }
  return inv;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const Rational& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const Rational& q : v) {
    Rational s = q * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (Integer& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return out;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  assert(a.rows() == b.rows() || a.cols() == 0 || b.cols() == 0);
  const std::size_t rows = a.cols() == 0 ? b.rows() : a.rows();
  RatMatrix out(rows, a.cols() + b.cols());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace coxcalc
