#pragma once

#include <string>
#include <utility>
#include <vector>

#include "caslab/cutoffs.hpp"
#include "caslab/fit.hpp"
#include "caslab/spectra.hpp"

namespace caslab {

// Sampled regularized sums S(Omega) = sum_n mult_n omega_n f(omega_n/Omega)
// over an ascending cutoff-scale grid.  The Casimir energy convention is
// E = S/2 (hbar = 1).
struct RegularizedSweep {
  std::vector<double> omega_grid;
  std::vector<double> values;
  std::string cutoff_name;
  std::string spectrum_labels;
};

// Residual of the exact difference-kernel identity
//   omega - omega* = (4 pi)^{-1/2} int_0^inf dt t^{-3/2}
//                    (e^{-omega*^2 t} - e^{-omega^2 t}),
// with the right side evaluated by adaptive quadrature.
double verify_lemma1(double omega, double omega_star, double quad_tol = 1e-12);

// Residual of the exact erfc regulator identity
//   omega erfc(omega/Omega) = (Omega/sqrt(pi)) e^{-omega^2/Omega^2}
//     - (4 pi)^{-1/2} int_{Omega^{-2}}^inf dt t^{-3/2} e^{-omega^2 t}.
double verify_erfc_identity(double omega, double Omega,
                            double quad_tol = 1e-12);

double erfc_regularized_sum(const ModeSpectrum& spectrum, double Omega);
double f_regularized_sum(const ModeSpectrum& spectrum,
                         const CutoffSpec& cutoff, double Omega);

RegularizedSweep single_sweep(const ModeSpectrum& spectrum,
                              const CutoffSpec& cutoff,
                              const std::vector<double>& omega_grid);
RegularizedSweep difference_sweep(const ModeSpectrum& spectrum_a,
                                  const ModeSpectrum& spectrum_b,
                                  const CutoffSpec& cutoff,
                                  const std::vector<double>& omega_grid);

// Pointwise weighted combination of sweeps sharing a grid.
RegularizedSweep combine_sweeps(const std::vector<double>& weights,
                                const std::vector<RegularizedSweep>& sweeps);

struct ExtrapolationResult {
  double finite_part = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  // Fitted divergent terms (physical coefficients), e.g. {"Omega^2", c}.
  std::vector<std::pair<std::string, double>> divergent_slots;
  LinearFit fit;
};

// Fits the sweep to sum_{i=0..d} c_i Omega^{d+1-i} + c_log ln(Omega^2) + c_inf
// and reports c_inf as the finite part.  `converged` holds when every
// divergent term's unit-norm-column coefficient stays below
// threshold_scale * max|values|.
ExtrapolationResult extrapolate_finite_part(const RegularizedSweep& sweep,
                                            int d,
                                            double threshold_scale = 1e-6);

enum class ResumMethod { ErfcExtrapolate, Abel, RieszMean };

// Resums sum_n (omega_a,n - omega_b,n) with modes paired by sorted index
// after multiplicity expansion.  The caller is responsible for knowing the
// difference is finite (e.g. via a finiteness certificate); regular methods
// agree on the value exactly in that case.
double resum_difference(const ModeSpectrum& spectrum_a,
                        const ModeSpectrum& spectrum_b, ResumMethod method,
                        int riesz_order = 2);

}  // namespace caslab
