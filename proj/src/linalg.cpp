#include "ffdyn/linalg.hpp"

namespace ffdyn {

Integer determinant(const Matrix<Integer>& m) {
  return bareiss_determinant<Integer>(
      m, Integer(1), [](const Integer& a, const Integer& b) { return Integer(a / b); },
      [](const Integer& a) { return a == 0; });
}

namespace {

// Returns pivot columns; m is reduced in place to RREF.
std::vector<std::size_t> rref(Matrix<Rational>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  Matrix<Rational> a = m;
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, const std::vector<Rational>& rhs) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  Matrix<Rational> a = m;
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(rhs[i]);
  auto pivots = rref(a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (a[r][cols] != 0) return std::nullopt;
  std::vector<Rational> x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

SemidefiniteVerdict check_negative_semidefinite(const Matrix<Rational>& m) {
  // Eliminate on A = -M and require every pivot >= 0, with zero pivots only
  // on rows that are already zero.
  const std::size_t n = m.size();
  Matrix<Rational> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = -m[i][j];
  SemidefiniteVerdict verdict{true, 0, 0, {}};
  for (std::size_t k = 0; k < n; ++k) {
    const Rational d = a[k][k];
    verdict.pivots.push_back(-d);
    if (d < 0) {
      verdict = {false, k, -d, verdict.pivots};
      return verdict;
    }
    if (d == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] != 0) {
          verdict = {false, k, -a[k][j], verdict.pivots};
          return verdict;
        }
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / d;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return verdict;
}

Matrix<Rational> to_rational(const Matrix<Integer>& m) {
  Matrix<Rational> r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& x : m[i]) r[i].push_back(Rational(x));
  return r;
}

}  // namespace ffdyn
