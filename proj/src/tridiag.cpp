#include "caslab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caslab/errors.hpp"

namespace caslab {

namespace {

double gershgorin_bound(const std::vector<double>& diag,
                        const std::vector<double>& off, double corner,
                        bool upper) {
  const size_t n = diag.size();
  double bound = upper ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (n == 2) {
      radius = std::abs(off[0] + corner);  // both couplings share one entry
    } else {
      if (i > 0) radius += std::abs(off[i - 1]);
      if (i + 1 < n) radius += std::abs(off[i]);
      if (n > 2 && (i == 0 || i == n - 1)) radius += std::abs(corner);
    }
    if (upper)
      bound = std::max(bound, diag[i] + radius);
    else
      bound = std::min(bound, diag[i] - radius);
  }
  return bound;
}

}  // namespace

int eigenvalue_count_below(const std::vector<double>& diag,
                           const std::vector<double>& off, double corner,
                           double x) {
  const size_t n = diag.size();
  if (n == 0) return 0;
  if (off.size() + 1 != n)
    throw InvalidArgumentError("eigenvalue_count_below: off.size() != n-1");
  if (n == 1) return diag[0] - x < 0.0 ? 1 : 0;
  if (n == 2) {
    // Corner and off-diagonal act on the same entry.
    const double b = off[0] + corner;
    const double a0 = diag[0] - x, a1 = diag[1] - x;
    const double tr = a0 + a1, det = a0 * a1 - b * b;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double l0 = 0.5 * (tr - disc), l1 = 0.5 * (tr + disc);
    return (l0 < 0.0 ? 1 : 0) + (l1 < 0.0 ? 1 : 0);
  }

  // LDL^T pivots of (M - xI).  The corner fill propagates down the last
  // column: v starts at `corner`, and the genuine off-diagonal entry joins
  // at row n-2.  Sylvester's law: count = number of negative pivots.
  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (double e : off) scale = std::max(scale, std::abs(e));
  scale = std::max(scale, std::abs(corner));
  const double tiny =
      std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double pivot_floor =
      std::max(tiny, scale * std::numeric_limits<double>::epsilon() *
                         std::numeric_limits<double>::epsilon());

  int negatives = 0;
  double p = diag[0] - x;
  if (std::abs(p) < pivot_floor) p = -pivot_floor;
  if (p < 0.0) ++negatives;
  double v = corner;           // fill in column n-1 at current row
  double schur = diag[n - 1] - x;
  schur -= v * v / p;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double b = off[i - 1];
    double vnext = -(b / p) * v;
    if (i == n - 2) vnext += off[n - 2];
    double pnext = diag[i] - x - b * b / p;
    if (std::abs(pnext) < pivot_floor) pnext = -pivot_floor;
    if (pnext < 0.0) ++negatives;
    schur -= vnext * vnext / pnext;
    p = pnext;
    v = vnext;
  }
  if (std::abs(schur) < pivot_floor) schur = -pivot_floor;
  if (schur < 0.0) ++negatives;
  return negatives;
}

std::vector<double> lowest_eigenvalues(const std::vector<double>& diag,
                                       const std::vector<double>& off,
                                       double corner, int count) {
  const size_t n = diag.size();
  if (count < 1) throw InvalidArgumentError("lowest_eigenvalues: count < 1");
  if (static_cast<size_t>(count) > n)
    throw InvalidArgumentError("lowest_eigenvalues: count exceeds dimension");

  double lo = gershgorin_bound(diag, off, corner, false);
  double hi = gershgorin_bound(diag, off, corner, true);
  const double pad = 1e-12 * (std::abs(lo) + std::abs(hi) + 1.0);
  lo -= pad;
  hi += pad;

  std::vector<double> eigs(count);
  double left = lo;
  for (int j = 0; j < count; ++j) {
    // Smallest x with count_below(x) >= j+1, located by bisection.
    double a = left, b = hi;
    for (int iter = 0; iter < 120; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (eigenvalue_count_below(diag, off, corner, mid) >= j + 1)
        b = mid;
      else
        a = mid;
      if (b - a <= 1e-14 * (std::abs(a) + std::abs(b)) + 1e-300) break;
    }
    eigs[j] = 0.5 * (a + b);
    left = a;  // eigenvalues are found in ascending order
  }
  return eigs;
}

}  // namespace caslab
