#include "negame/linalg.hpp"

#include <stdexcept>

namespace negame {

LinearSystemResult solve_linear_system(const std::vector<LinearRow>& rows) {
  std::size_t n = rows.empty() ? 0 : rows[0].coefficients.size();
  for (const auto& r : rows)
    if (r.coefficients.size() != n)
      throw std::invalid_argument("solve_linear_system: ragged rows");

  std::size_t m = rows.size();
  std::vector<std::vector<Rational>> a(m);
  std::vector<Rational> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = rows[i].coefficients;
    b[i] = rows[i].rhs;
  }

  std::vector<int> pivot_col;  // pivot column of row r (row echelon order)
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col].sign() == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    Rational inv = Rational(1) / a[rank][col];
    for (std::size_t j = col; j < n; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][col].sign() == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }

  for (std::size_t i = rank; i < m; ++i)
    if (b[i].sign() != 0)
      return {LinearSystemResult::Status::Inconsistent, {}, 0};

  LinearSystemResult res;
  res.assignment.assign(n, Rational(0));
  for (std::size_t r = 0; r < rank; ++r)
    res.assignment[pivot_col[r]] = b[r];  // free variables stay 0
  res.free_variables = static_cast<int>(n - rank);
  res.status = res.free_variables == 0 ? LinearSystemResult::Status::Unique
                                       : LinearSystemResult::Status::Underdetermined;
  return res;
}

}  // namespace negame
