#include "caslab/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "caslab/errors.hpp"
#include "caslab/quadrature.hpp"

namespace caslab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double heat_trace(const ModeSpectrum& spectrum, double t) {
  if (!(t > 0.0)) throw InvalidArgumentError("heat_trace: t must be > 0");
  if (!spectrum.complete()) {
    const double om = spectrum.max_valid_omega();
    if (!(om * om * t >= 30.0)) {
      std::ostringstream msg;
      msg << "heat_trace: t=" << t << " below the truncation-safe floor; "
          << "minimum usable t for '" << spectrum.label() << "' is "
          << (om > 0.0 ? 30.0 / (om * om)
                       : std::numeric_limits<double>::infinity());
      throw TruncationError(msg.str());
    }
  }
  double sum = 0.0;
  // Descending order accumulates the small terms first.
  const auto& modes = spectrum.modes();
  for (auto it = modes.rbegin(); it != modes.rend(); ++it)
    sum += static_cast<double>(it->multiplicity) *
           std::exp(-it->omega * it->omega * t);
  return sum;
}

std::vector<double> default_t_grid(const ModeSpectrum& spectrum, int points,
                                   double span_decades) {
  const double om = spectrum.max_valid_omega();
  if (!(om > 0.0))
    throw InvalidArgumentError("default_t_grid: spectrum has no positive "
                               "trusted modes");
  const double t_min = 30.0 / (om * om);
  return log_spaced(t_min, t_min * std::pow(10.0, span_decades), points);
}

SdwExpansion sdw_fit(const ModeSpectrum& spectrum, int d, int N,
                     const std::vector<double>& t_grid) {
  if (d < 1) throw InvalidArgumentError("sdw_fit: d must be >= 1");
  if (N < 0 || N > d + 1)
    throw InvalidArgumentError("sdw_fit: need 0 <= N <= d+1");
  if (t_grid.size() < static_cast<size_t>(2 * (N + 1)))
    throw InvalidArgumentError("sdw_fit: grid must hold >= 2(N+1) points");
  double prev = 0.0;
  for (double t : t_grid) {
    if (!(t > prev))
      throw InvalidArgumentError("sdw_fit: t grid must be ascending, > 0");
    prev = t;
  }

  const size_t n = t_grid.size();
  std::vector<double> rhs(n);
  for (size_t j = 0; j < n; ++j)
    rhs[j] = heat_trace(spectrum, t_grid[j]) *
             std::pow(4.0 * kPi * t_grid[j], 0.5 * d);

  std::vector<std::vector<double>> columns;
  for (int i = 0; i <= N; ++i) {
    std::vector<double> col(n);
    for (size_t j = 0; j < n; ++j) col[j] = std::pow(t_grid[j], 0.5 * i);
    columns.push_back(std::move(col));
  }

  LinearFit fit = least_squares(columns, rhs);
  if (!std::isfinite(fit.condition_number) || fit.condition_number > 1e8)
    throw ConditioningError(
        "sdw_fit: basis ill-conditioned on the given grid (condition " +
        std::to_string(fit.condition_number) +
        "); shrink the t span or reduce N");

  SdwExpansion out;
  out.dimension_d = d;
  out.coefficients = fit.coefficients;
  out.std_errors = fit.std_errors;
  out.fit_residual = fit.residual_norm;
  out.t_window = {t_grid.front(), t_grid.back()};
  out.condition_number = fit.condition_number;
  return out;
}

DivergenceFit divergence_fit(const RegularizedSweep& sweep, int d) {
  if (d < 0) throw InvalidArgumentError("divergence_fit: d < 0");
  const size_t n = sweep.omega_grid.size();
  if (n < static_cast<size_t>(d + 5))
    throw InvalidArgumentError("divergence_fit: need at least d+5 samples");
  if (!(sweep.omega_grid.back() >=
        std::pow(10.0, 1.5) * 0.999 * sweep.omega_grid.front()))
    throw InvalidArgumentError(
        "divergence_fit: sweep must span at least 1.5 decades");

  std::vector<std::vector<double>> columns;
  for (int i = 0; i <= d; ++i) {
    const int p = d + 1 - i;
    std::vector<double> col(n);
    for (size_t j = 0; j < n; ++j)
      col[j] = std::pow(sweep.omega_grid[j], p);
    columns.push_back(std::move(col));
  }
  {
    std::vector<double> col(n);
    for (size_t j = 0; j < n; ++j)
      col[j] = 2.0 * std::log(sweep.omega_grid[j]);
    columns.push_back(std::move(col));
  }
  columns.push_back(std::vector<double>(n, 1.0));

  LinearFit fit = least_squares(columns, sweep.values);
  if (!std::isfinite(fit.condition_number) || fit.condition_number > 1e8)
    throw ConditioningError(
        "divergence_fit: basis ill-conditioned on the given grid "
        "(condition " + std::to_string(fit.condition_number) +
        "); widen the Omega span");

  DivergenceFit out;
  out.power_coefficients.assign(fit.coefficients.begin(),
                                fit.coefficients.begin() + d + 1);
  out.log_coefficient = fit.coefficients[d + 1];
  out.constant = fit.coefficients[d + 2];
  out.std_errors = fit.std_errors;
  out.residual_norm = fit.residual_norm;
  out.condition_number = fit.condition_number;
  return out;
}

std::string dominant_divergence(const DivergenceFit& fit, int d,
                                double omega_ref) {
  double best = -1.0;
  std::string name = "none";
  for (int i = 0; i <= d; ++i) {
    const int p = d + 1 - i;
    const double contrib =
        std::abs(fit.power_coefficients[i]) * std::pow(omega_ref, p);
    if (contrib > best) {
      best = contrib;
      name = "Omega^" + std::to_string(p);
    }
  }
  const double logc =
      std::abs(fit.log_coefficient) * 2.0 * std::log(omega_ref);
  if (logc > best) {
    best = logc;
    name = "log(Omega^2)";
  }
  return name;
}

}  // namespace caslab
