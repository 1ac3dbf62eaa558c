#include "simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace boole::detail {

std::optional<std::vector<double>> find_feasible_point(const std::vector<std::vector<double>>& a,
                                                       const std::vector<double>& b, double tol) {
  const std::size_t rows = a.size();
  if (rows == 0 || b.size() != rows) throw std::invalid_argument("simplex: shape mismatch");
  const std::size_t vars = a.front().size();
  const std::size_t cols = vars + rows;  // originals, then one artificial per row
  constexpr double kPivotEps = 1e-12;

  // tableau[r] = [coefficients..., rhs]
  std::vector<std::vector<double>> tableau(rows, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != vars) throw std::invalid_argument("simplex: ragged matrix");
    const double sign = b[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < vars; ++j) tableau[r][j] = sign * a[r][j];
    tableau[r][vars + r] = 1.0;
    tableau[r][cols] = sign * b[r];
    basis[r] = vars + r;
  }

  // Reduced costs for minimizing the sum of artificials.
  auto reduced_cost = [&](std::size_t j) {
    double cost = j >= vars ? 1.0 : 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] >= vars) cost -= tableau[r][j];
    }
    return cost;
  };

  for (std::size_t iter = 0; iter < 1000; ++iter) {
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced_cost(j) < -kPivotEps) {
        entering = j;
        break;
      }
    }
    if (entering == cols) break;

    std::size_t leaving = rows;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double coef = tableau[r][entering];
      if (coef <= kPivotEps) continue;
      const double ratio = tableau[r][cols] / coef;
      if (leaving == rows || ratio < best_ratio - kPivotEps ||
          (std::abs(ratio - best_ratio) <= kPivotEps && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving == rows) throw std::logic_error("simplex: phase-one objective unbounded");

    const double pivot = tableau[leaving][entering];
    for (double& v : tableau[leaving]) v /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leaving) continue;
      const double factor = tableau[r][entering];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) tableau[r][j] -= factor * tableau[leaving][j];
    }
    basis[leaving] = entering;
  }

  double infeasibility = 0.0;
  std::vector<double> x(vars, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] >= vars) {
      infeasibility += tableau[r][cols];
    } else {
      x[basis[r]] = tableau[r][cols];
    }
  }
  if (infeasibility > tol) return std::nullopt;
  for (double& v : x) {
    if (v < 0.0) v = 0.0;  // roundoff
  }
  return x;
}

}  // namespace boole::detail
