#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

#include "x0p2/rational.hpp"

namespace x0p2 {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

namespace detail {

// Fraction-free (Bareiss) row echelon, in place, over any exact field.
// Over integer entries all intermediates stay integral, which keeps GMP
// rationals from churning through gcd-heavy reductions. Only columns
// < lhs_cols are eligible pivots; trailing columns ride along as the
// augmented block. Returns the pivot columns (rank = size()).
template <class Scalar>
std::vector<int> echelon(Matrix<Scalar>& a, int lhs_cols) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivots;
  Scalar prev(1);
  int r = 0;
  for (int c = 0; c < lhs_cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i) {
      if (a(i, c) != Scalar(0)) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != r) a.row(pr).swap(a.row(r));
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = Scalar(0);
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Back-substitution on an echelon form produced above: solves for the pivot
// variables of column `rhs` of the augmented block, free variables already
// placed in x.
template <class Scalar>
void back_substitute(const Matrix<Scalar>& a, const std::vector<int>& pivots,
                     int lhs_cols, int rhs, Vector<Scalar>& x) {
  for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
    const int c = pivots[i];
    Scalar s = a(i, rhs);
    for (int j = c + 1; j < lhs_cols; ++j) s -= a(i, j) * x(j);
    x(c) = s / a(i, c);
  }
}

}  // namespace detail

// Exact solution of m x = b: a particular solution with free variables set
// to zero, or nullopt when inconsistent. Throws std::invalid_argument on a
// row-count mismatch.
template <class Scalar>
std::optional<Vector<Scalar>> solve_linear(const Matrix<Scalar>& m,
                                           const Vector<Scalar>& b) {
  if (m.rows() != b.rows())
    throw std::invalid_argument("solve_linear: dimension mismatch");
  const int n = static_cast<int>(m.cols());
  Matrix<Scalar> a(m.rows(), n + 1);
  a.leftCols(n) = m;
  a.col(n) = b;
  const std::vector<int> pivots = detail::echelon(a, n);
  for (int i = static_cast<int>(pivots.size()); i < a.rows(); ++i)
    if (a(i, n) != Scalar(0)) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  detail::back_substitute(a, pivots, n, n, x);
  return x;
}

// Basis of the right kernel, one vector per free column in column order,
// each normalized with a 1 in its own free coordinate.
template <class Scalar>
std::vector<Vector<Scalar>> kernel_basis(const Matrix<Scalar>& m) {
  const int n = static_cast<int>(m.cols());
  Matrix<Scalar> a = m;
  const std::vector<int> pivots = detail::echelon(a, n);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vector<Scalar>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<Scalar> x = Vector<Scalar>::Zero(n);
    x(f) = Scalar(1);
    // Solve the homogeneous echelon system with this free column active.
    for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
      const int c = pivots[i];
      Scalar s(0);
      for (int j = c + 1; j < n; ++j) s -= a(i, j) * x(j);
      x(c) = s / a(i, c);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class Scalar>
int rank(const Matrix<Scalar>& m) {
  Matrix<Scalar> a = m;
  return static_cast<int>(detail::echelon(a, static_cast<int>(a.cols())).size());
}

// Exact inverse, or nullopt for a singular matrix.
template <class Scalar>
std::optional<Matrix<Scalar>> invert(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("invert: matrix not square");
  const int n = static_cast<int>(m.rows());
  Matrix<Scalar> a(n, 2 * n);
  a.leftCols(n) = m;
  a.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const std::vector<int> pivots = detail::echelon(a, n);
  if (static_cast<int>(pivots.size()) < n) return std::nullopt;
  Matrix<Scalar> inv(n, n);
  Vector<Scalar> x(n);
  for (int k = 0; k < n; ++k) {
    x.setZero();
    detail::back_substitute(a, pivots, n, n + k, x);
    inv.col(k) = x;
  }
  return inv;
}

template <class Scalar>
bool is_symmetric(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

}  // namespace x0p2
