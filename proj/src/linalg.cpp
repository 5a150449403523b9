#include "rootmirror/linalg.hpp"

#include <utility>

namespace rootmirror {

EchelonForm reduced_row_echelon(RationalMatrix m) {
  EchelonForm out;
  if (m.empty()) return out;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = m[row][col].inverse();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  RationalMatrix augmented;
  augmented.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalVector row = a[i];
    row.push_back(b[i]);
    augmented.push_back(std::move(row));
  }
  const EchelonForm ef = reduced_row_echelon(std::move(augmented));
  RationalVector x(cols);
  for (std::size_t i = 0; i < ef.rows.size(); ++i) {
    if (ef.pivots[i] == cols) return std::nullopt;
    x[ef.pivots[i]] = ef.rows[i][cols];
  }
  return x;
}

RationalMatrix kernel_basis(const RationalMatrix& a, std::size_t columns) {
  const EchelonForm ef = reduced_row_echelon(a);
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t p : ef.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(columns);
    v[free] = 1;
    for (std::size_t i = 0; i < ef.rows.size(); ++i) v[ef.pivots[i]] = -ef.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rootmirror
