#pragma once

#include <span>

namespace mgrit::apps {

/// Thomas elimination for a tridiagonal system. `lower[0]` and
/// `upper[n-1]` are ignored. `rhs` is overwritten with the solution.
/// Throws PropagationError on a zero pivot.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

}  // namespace mgrit::apps
