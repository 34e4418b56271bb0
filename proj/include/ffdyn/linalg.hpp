#pragma once

#include "ffdyn/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ffdyn {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Fraction-free (Bareiss) determinant over an integral domain. `exact`
/// performs exact division; `is_zero` tests for zero; `one` is the unit.
template <class T, class ExactDiv, class IsZero>
T bareiss_determinant(Matrix<T> m, const T& one, ExactDiv exact, IsZero is_zero) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  bool negate = false;
  T prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && is_zero(m[swap_row][k])) ++swap_row;
      if (swap_row == n) return one - one;
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = one - one;
    }
    prev = m[k][k];
  }
  T det = m[n - 1][n - 1];
  return negate ? T(one - one - det) : det;
}

/// Integer matrix determinant via Bareiss.
Integer determinant(const Matrix<Integer>& m);

/// Basis of the right kernel of m (exact), in reduced echelon form.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m);

/// Some solution of m x = rhs, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, const std::vector<Rational>& rhs);

struct SemidefiniteVerdict {
  bool negative_semidefinite;
  // On failure: the pivot index and its value (positive pivot, or a zero
  // pivot with a nonzero entry in its row).
  std::size_t witness_index = 0;
  Rational witness_value = 0;
  std::vector<Rational> pivots;  // D of the symmetric LDL^T elimination
};

/// Exact symmetric elimination deciding whether a rational symmetric matrix
/// is negative semidefinite.
SemidefiniteVerdict check_negative_semidefinite(const Matrix<Rational>& m);

Matrix<Rational> to_rational(const Matrix<Integer>& m);

}  // namespace ffdyn
