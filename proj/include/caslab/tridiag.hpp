#pragma once

#include <vector>

namespace caslab {

// Eigenvalue counting and bisection for real symmetric tridiagonal matrices,
// optionally with a corner coupling M(0,n-1) = M(n-1,0) = corner as produced
// by periodic finite-difference stencils.  Only eigenvalues are computed.

// Number of eigenvalues strictly below x (matrix inertia via an LDL^T sweep;
// the corner entry is carried as a dense spike in the last row/column).
int eigenvalue_count_below(const std::vector<double>& diag,
                           const std::vector<double>& off, double corner,
                           double x);

// The `count` smallest eigenvalues, ascending, each located by bisection on
// the Sturm count.  Degenerate eigenvalues are returned with repetition.
std::vector<double> lowest_eigenvalues(const std::vector<double>& diag,
                                       const std::vector<double>& off,
                                       double corner, int count);

}  // namespace caslab
