#pragma once

// Dense complex primitives shared by every estimator in the library.
//
// Problem sizes are tiny (M <= 64), so everything is dense Eigen storage
// with dynamic extents. Real-valued problems are represented by zero
// imaginary parts.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dcg {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Thrown when operands of an operation have inconsistent shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by direct_solve when the matrix is not numerically positive definite.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_square(const CMatrix& R, const char* what) {
  if (R.rows() != R.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(R.rows()) + "x" +
                         std::to_string(R.cols()) + ", expected square");
  }
}

inline void require_dim(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(got) +
                         " does not match " + std::to_string(expected));
  }
}

}  // namespace detail

/// True when every entry is finite (no NaN or inf in either component).
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

/// Exact conjugate symmetry check, entry by entry.
inline bool is_hermitian(const CMatrix& R) {
  if (R.rows() != R.cols()) return false;
  for (Eigen::Index j = 0; j < R.cols(); ++j) {
    for (Eigen::Index i = j; i < R.rows(); ++i) {
      if (R(i, j) != std::conj(R(j, i))) return false;
    }
  }
  return true;
}

/// Copies the strict lower triangle onto the upper one (conjugated) and
/// zeroes the diagonal imaginary parts.
inline void mirror_lower(CMatrix& R) {
  const Eigen::Index n = R.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    R(j, j) = Complex(R(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) R(j, i) = std::conj(R(i, j));
  }
}

/// Exponentially weighted correlation update, R <- lambda*R + x x^H.
///
/// Only the lower triangle is computed; the upper triangle is its mirror,
/// so the result is Hermitian bit for bit.
inline CMatrix corr_update(const CMatrix& R, const CVector& x, double lambda) {
  detail::require_square(R, "corr_update");
  detail::require_dim(R.rows(), x.size(), "corr_update");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("corr_update: forgetting factor must lie in (0, 1]");
  }
  const Eigen::Index n = R.rows();
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j, j) = Complex(lambda * R(j, j).real() + std::norm(x(j)), 0.0);
    const Complex xj = std::conj(x(j));
    for (Eigen::Index i = j + 1; i < n; ++i) out(i, j) = lambda * R(i, j) + x(i) * xj;
  }
  mirror_lower(out);
  return out;
}

/// Cross-correlation update, b <- lambda*b + conj(d) x.
inline CVector cross_update(const CVector& b, Complex d, const CVector& x, double lambda) {
  detail::require_dim(b.size(), x.size(), "cross_update");
  return lambda * b + std::conj(d) * x;
}

/// Solves R w = b for Hermitian positive definite R via an L L^H factorization.
///
/// Used as a reference oracle. A pivot at or below 1e-12 is treated as a
/// failure of positive definiteness.
inline CVector direct_solve(const CMatrix& R, const CVector& b) {
  detail::require_square(R, "direct_solve");
  detail::require_dim(R.rows(), b.size(), "direct_solve");
  constexpr double kMinPivot = 1e-12;
  const Eigen::Index n = R.rows();
  CMatrix L = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = R(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(L(j, k));
    if (!(pivot > kMinPivot)) {
      throw SingularMatrixError("direct_solve: non-positive pivot " + std::to_string(pivot) +
                                " at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    L(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = R(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
      L(i, j) = s / ljj;
    }
  }
  // Forward solve L y = b, then back solve L^H w = y.
  CVector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= L(i, k) * y(k);
    y(i) = s / L(i, i).real();
  }
  CVector w(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Complex s = y(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= std::conj(L(k, i)) * w(k);
    w(i) = s / L(i, i).real();
  }
  return w;
}

/// Quadratic cost 1/2 w^H R w - Re(b^H w). The imaginary part of the
/// quadratic form is round-off only and is discarded.
inline double quad_cost(const CMatrix& R, const CVector& b, const CVector& w) {
  detail::require_square(R, "quad_cost");
  detail::require_dim(R.rows(), w.size(), "quad_cost");
  detail::require_dim(b.size(), w.size(), "quad_cost");
  const Complex quad = w.dot(R * w);  // Eigen's dot conjugates the left operand
  return 0.5 * quad.real() - b.dot(w).real();
}

}  // namespace dcg
