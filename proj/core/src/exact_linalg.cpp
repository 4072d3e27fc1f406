#include "cuntz/exact_linalg.hpp"

#include <algorithm>

#include "cuntz/error.hpp"

namespace cuntz {

std::vector<int> row_reduce(RationalMatrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = a[r][c].reciprocal();
    for (int k = c; k < cols; ++k) a[r][k] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational factor = a[i][c];
      for (int k = c; k < cols; ++k) {
        if (!a[r][k].is_zero()) a[i][k] -= factor * a[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(RationalMatrix a) { return static_cast<int>(row_reduce(a).size()); }

std::vector<std::vector<Rational>> nullspace(RationalMatrix a, int columns) {
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != columns) throw ValidationError("ragged matrix");
  }
  std::vector<int> pivots = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(columns), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < columns; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(columns));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[static_cast<std::size_t>(pivots[r])] = -a[r][static_cast<std::size_t>(free)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw ValidationError("dimension mismatch in solve");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw ValidationError("solve expects a square matrix");
    a[i].push_back(b[i]);
  }
  std::vector<int> pivots = row_reduce(a);
  if (pivots.size() != n || pivots.back() == static_cast<int>(n)) {
    throw DomainError("singular linear system");
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace cuntz
