#include "mgrit/apps/tridiagonal.hpp"

#include <cmath>
#include <vector>

#include "mgrit/errors.hpp"

namespace mgrit::apps {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw StructureError("tridiagonal system with inconsistent sizes");
  }
  if (n == 0) return;
  std::vector<double> c(n);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw PropagationError("zero pivot in tridiagonal solve");
  c[0] = upper[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw PropagationError("zero pivot in tridiagonal solve");
    }
    c[i] = upper[i] / pivot;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace mgrit::apps
