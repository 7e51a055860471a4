#pragma once

#include <string>
#include <utility>
#include <vector>

#include "caslab/fit.hpp"
#include "caslab/regularization.hpp"
#include "caslab/spectra.hpp"

namespace caslab {

// Heat-kernel trace K(t) = sum_n mult_n e^{-omega_n^2 t}.  Truncation-safe
// only when the trusted spectrum reaches omega_max^2 t >= 30 (or the spectrum
// is complete); below that the stored tail no longer dominates the sum.
double heat_trace(const ModeSpectrum& spectrum, double t);

// Small-t expansion coefficients a_{i/2} of
//   K(t) = (4 pi t)^{-d/2} sum_i a_{i/2} t^{i/2},
// fitted by least squares of K(t) (4 pi t)^{d/2} against {t^{i/2}}.
struct SdwExpansion {
  int dimension_d = 0;
  std::vector<double> coefficients;  // a_0, a_{1/2}, ..., a_{N/2}
  std::vector<double> std_errors;
  double fit_residual = 0.0;
  std::pair<double, double> t_window{0.0, 0.0};
  double condition_number = 0.0;
};

SdwExpansion sdw_fit(const ModeSpectrum& spectrum, int d, int N,
                     const std::vector<double>& t_grid);

// 24 log-spaced points from the truncation-safety floor 30/omega_max^2
// upward over `span_decades` decades.
std::vector<double> default_t_grid(const ModeSpectrum& spectrum,
                                   int points = 24,
                                   double span_decades = 2.5);

// Divergence structure of a regularized sweep in the cutoff scale:
//   S(Omega) = sum_{i=0..d} p_i Omega^{d+1-i} + c_log ln(Omega^2) + const.
// The power coefficients are cutoff-dependent products k_i a_{i/2}; the log
// coefficient is cutoff-independent.
struct DivergenceFit {
  std::vector<double> power_coefficients;  // i = 0..d
  double log_coefficient = 0.0;
  double constant = 0.0;
  std::vector<double> std_errors;  // matches [powers..., log, constant]
  double residual_norm = 0.0;
  double condition_number = 0.0;
};

DivergenceFit divergence_fit(const RegularizedSweep& sweep, int d);

// Name of the divergent term ("Omega^p" or "log(Omega^2)") with the largest
// contribution at omega_ref; the constant is excluded.
std::string dominant_divergence(const DivergenceFit& fit, int d,
                                double omega_ref);

}  // namespace caslab
