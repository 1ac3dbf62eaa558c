#pragma once

#include <optional>
#include <vector>

namespace boole::detail {

/// Phase-one simplex for { x >= 0 : A x = b } on a small dense system.
/// Returns a basic feasible point, or nullopt when the minimal total
/// infeasibility exceeds `tol`. Bland's rule; no cycling.
std::optional<std::vector<double>> find_feasible_point(const std::vector<std::vector<double>>& a,
                                                       const std::vector<double>& b, double tol);

}  // namespace boole::detail
