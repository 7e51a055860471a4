#pragma once

#include <functional>
#include <span>
#include <vector>

namespace caslab {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated panel error estimate
  int panels = 0;
};

// Adaptive Gauss7/Kronrod15 quadrature on [a, b] to an absolute tolerance.
// Throws NumericalFailureError if the panel budget is exhausted before the
// error estimate drops below tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts = {});

// Same, but starting from user-supplied panel breakpoints (ascending).
// Useful when the integrand has known scales, e.g. log-spaced panels toward
// an endpoint.
QuadratureResult integrate_breakpoints(const std::function<double(double)>& f,
                                       std::span<const double> breakpoints,
                                       const QuadratureOptions& opts = {});

std::vector<double> log_spaced(double lo, double hi, int n);
std::vector<double> lin_spaced(double lo, double hi, int n);

}  // namespace caslab
