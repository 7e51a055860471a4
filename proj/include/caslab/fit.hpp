#pragma once

#include <string>
#include <vector>

namespace caslab {

// Ordinary least squares for small column sets, with columns scaled to unit
// Euclidean norm before factorization.  `coefficients` are reported in the
// caller's (unscaled) basis; `scaled_coefficients` are the coefficients of
// the unit-norm columns and measure each term's contribution over the grid.
struct LinearFit {
  std::vector<double> coefficients;
  std::vector<double> scaled_coefficients;
  std::vector<double> std_errors;  // per coefficient, unscaled basis
  double residual_norm = 0.0;
  double condition_number = 0.0;  // of the scaled design matrix
};

LinearFit least_squares(const std::vector<std::vector<double>>& columns,
                        const std::vector<double>& rhs);

}  // namespace caslab
