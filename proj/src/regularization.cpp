#include "caslab/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "caslab/errors.hpp"
#include "caslab/quadrature.hpp"

namespace caslab {

namespace {

constexpr double kPi = std::numbers::pi;

const CutoffSpec& pure_erfc_singleton() {
  static const CutoffSpec c = CutoffSpec::pure_erfc();
  return c;
}

void check_truncation_safe(const ModeSpectrum& s, const CutoffSpec& cutoff,
                           double Omega) {
  if (s.complete()) return;
  const double needed = cutoff.safe_truncation_ratio() * Omega;
  const double have = s.max_valid_omega();
  if (have >= needed) return;
  // Required mode count estimated from the current spectral density.
  const auto n_have = static_cast<double>(s.total_multiplicity());
  const double ratio = have > 0.0 ? needed / have : 0.0;
  std::ostringstream msg;
  msg << "truncation-unsafe spectrum '" << s.label() << "': largest trusted "
      << "omega " << have << " < " << cutoff.safe_truncation_ratio()
      << " * Omega = " << needed << "; need approximately "
      << (have > 0.0
              ? static_cast<long long>(std::ceil(
                    n_have * std::pow(ratio, s.dimension())))
              : -1)
      << " modes";
  throw TruncationError(msg.str());
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgumentError("empty Omega grid");
  double prev = 0.0;
  for (double w : grid) {
    if (!(w > prev))
      throw InvalidArgumentError(
          "Omega grid must be strictly increasing and positive");
    prev = w;
  }
}

// Richardson table on a halving parameter: estimates[j] computed at
// eps0 / 2^j; successive columns eliminate integer powers.
double richardson_halving(const std::vector<double>& estimates,
                          double* spread_out) {
  const size_t m = estimates.size();
  std::vector<std::vector<double>> t(m);
  t[0] = estimates;
  for (size_t col = 1; col < m; ++col) {
    t[col].resize(m - col);
    const double p = std::pow(2.0, static_cast<double>(col));
    for (size_t i = 0; i < m - col; ++i)
      t[col][i] = (p * t[col - 1][i + 1] - t[col - 1][i]) / (p - 1.0);
  }
  if (spread_out && m >= 2) {
    *spread_out =
        std::abs(t[m - 1][0] - t[m - 2][0]);
  }
  return t[m - 1][0];
}

double abel_resum(const std::vector<double>& delta,
                  const std::vector<double>& mean_omega) {
  // A(eps) = sum delta_n exp(-eps mean_n), Richardson-extrapolated to 0.
  const double omega_cap = mean_omega.back();
  if (!(omega_cap > 0.0))
    throw InvalidArgumentError("abel resummation: empty spectra");
  const int levels = 7;
  const double eps_min = 40.0 / omega_cap;
  std::vector<double> a(levels);
  for (int j = 0; j < levels; ++j) {
    const double eps = eps_min * std::pow(2.0, levels - 1 - j);
    double sum = 0.0;
    for (size_t i = 0; i < delta.size(); ++i)
      sum += delta[i] * std::exp(-eps * mean_omega[i]);
    a[j] = sum;
  }
  // Non-Cauchy guard: the raw sequence must settle before acceleration.
  const double scale =
      std::max({std::abs(a[levels - 1]), std::abs(a[0]), 1e-300});
  if (std::abs(a[levels - 1] - a[levels - 2]) >
      2.5 * std::abs(a[levels - 2] - a[levels - 3]) + 1e-12 * scale)
    throw NonConvergenceError(
        "abel resummation: partial sums show no Cauchy behavior (is the "
        "difference certified finite?)");
  double spread = 0.0;
  const double value = richardson_halving(a, &spread);
  if (!(std::abs(spread) <= 0.05 * std::abs(value) + 1e-9))
    throw NonConvergenceError(
        "abel resummation: Richardson table did not settle");
  return value;
}

double riesz_resum(const std::vector<double>& delta, int order) {
  if (order < 1)
    throw InvalidArgumentError("riesz resummation: order must be >= 1");
  const size_t n = delta.size();
  size_t N0 = 1024;
  while (N0 * 2 > n && N0 > 8) N0 /= 2;
  int levels = 0;
  while ((N0 << (levels + 1)) <= n) ++levels;
  if (levels < 3)
    throw InvalidArgumentError(
        "riesz resummation: too few paired modes for doubling");
  std::vector<double> r(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const size_t N = N0 << j;
    double sum = 0.0;
    for (size_t i = 0; i < N; ++i) {
      const double w = 1.0 - static_cast<double>(i + 1) / N;
      sum += delta[i] * std::pow(w, order);
    }
    r[j] = sum;
  }
  const double scale = std::max(std::abs(r[levels]), 1e-300);
  if (std::abs(r[levels] - r[levels - 1]) >
      4.0 * std::abs(r[levels - 1] - r[levels - 2]) + 1e-12 * scale)
    throw NonConvergenceError(
        "riesz resummation: doubled partial sums diverge (is the "
        "difference certified finite?)");
  double spread = 0.0;
  const double value = richardson_halving(r, &spread);
  if (!(std::abs(spread) <= 0.05 * std::abs(value) + 1e-9))
    throw NonConvergenceError("riesz resummation: no convergence on doubling");
  return value;
}

}  // namespace

double verify_lemma1(double omega, double omega_star, double quad_tol) {
  if (!(omega >= 0.0) || !(omega_star >= 0.0))
    throw InvalidArgumentError("verify_lemma1: frequencies must be >= 0");
  const double lhs = omega - omega_star;
  const double a = omega_star * omega_star;  // decays e^{-a u^2}
  const double b = omega * omega;
  if (a == 0.0 && b == 0.0) return 0.0;

  // Substituting t = u^2 removes the t -> 0 scale:
  //   rhs = (1/sqrt(pi)) int_0^inf u^{-2} (e^{-a u^2} - e^{-b u^2}) du,
  // whose integrand tends to (b - a) at u = 0.
  const double lo_rate = std::min(a, b);
  const double gap = std::abs(b - a);
  const double sgn = a <= b ? 1.0 : -1.0;
  auto integrand = [lo_rate, gap, sgn](double u) {
    const double u2 = u * u;
    // e^{-a u2} - e^{-b u2} without cancellation; the expm1 argument is
    // kept negative so neither factor can overflow.
    return -sgn * std::exp(-lo_rate * u2) * std::expm1(-gap * u2) / u2;
  };
  const double wmin = std::sqrt(std::min(a, b));
  const double wmax = std::sqrt(std::max(a, b));
  const double U = 7.0 / (wmin > 0.0 ? wmin : wmax);

  std::vector<double> pts{0.0};
  for (double c : {0.3 / wmax, 1.0 / wmax, 3.0 / wmax,
                   wmin > 0.0 ? 1.0 / wmin : U})
    if (c > 0.0 && c < U) pts.push_back(c);
  pts.push_back(U);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  QuadratureOptions opts;
  opts.abs_tol = quad_tol * std::max(1.0, wmax);
  double integral = integrate_breakpoints(integrand, pts, opts).value;
  // Tail beyond U: if one frequency vanishes its exponential is exactly 1
  // and the u^{-2} tail integrates to 1/U; the decaying part is below
  // e^{-49} and is dropped.
  if (wmin == 0.0) integral += (a == 0.0 ? 1.0 : -1.0) / U;

  const double rhs = integral / std::sqrt(kPi);
  return std::abs(lhs - rhs);
}

double verify_erfc_identity(double omega, double Omega, double quad_tol) {
  if (!(Omega > 0.0))
    throw InvalidArgumentError("verify_erfc_identity: Omega must be > 0");
  if (!(omega >= 0.0))
    throw InvalidArgumentError("verify_erfc_identity: omega must be >= 0");
  const double lhs = omega * std::erfc(omega / Omega);
  const double T0 = 1.0 / (Omega * Omega);
  const double a = omega * omega;

  double integral;
  if (a == 0.0) {
    // int_T0^inf t^{-3/2} dt has the closed value 2 / sqrt(T0).
    integral = 2.0 / std::sqrt(T0);
  } else {
    auto integrand = [a](double t) {
      return std::exp(-a * t) / (t * std::sqrt(t));
    };
    const double U = std::max(49.0 / a, 2.0 * T0);
    std::vector<double> pts = log_spaced(T0, U, 40);
    QuadratureOptions opts;
    opts.abs_tol = quad_tol * std::max(1.0, Omega);
    integral = integrate_breakpoints(integrand, pts, opts).value;
    // Remainder beyond U is below e^{-a U} * 2 / sqrt(U) <= e^{-49}-level.
  }

  const double rhs = (Omega / std::sqrt(kPi)) * std::exp(-a * T0) -
                     integral / std::sqrt(4.0 * kPi);
  return std::abs(lhs - rhs);
}

double erfc_regularized_sum(const ModeSpectrum& spectrum, double Omega) {
  return f_regularized_sum(spectrum, pure_erfc_singleton(), Omega);
}

double f_regularized_sum(const ModeSpectrum& spectrum,
                         const CutoffSpec& cutoff, double Omega) {
  if (!(Omega > 0.0))
    throw InvalidArgumentError("f_regularized_sum: Omega must be > 0");
  if (spectrum.empty()) return 0.0;
  check_truncation_safe(spectrum, cutoff, Omega);
  double sum = 0.0;
  for (const Mode& m : spectrum.modes()) {
    if (m.omega == 0.0) continue;  // zero modes carry no zero-point weight
    sum += static_cast<double>(m.multiplicity) * m.omega *
           cutoff(m.omega / Omega);
  }
  return sum;
}

RegularizedSweep single_sweep(const ModeSpectrum& spectrum,
                              const CutoffSpec& cutoff,
                              const std::vector<double>& omega_grid) {
  check_grid(omega_grid);
  RegularizedSweep sweep;
  sweep.omega_grid = omega_grid;
  sweep.values.reserve(omega_grid.size());
  for (double w : omega_grid)
    sweep.values.push_back(f_regularized_sum(spectrum, cutoff, w));
  sweep.cutoff_name = cutoff.name();
  sweep.spectrum_labels = spectrum.label();
  return sweep;
}

RegularizedSweep difference_sweep(const ModeSpectrum& spectrum_a,
                                  const ModeSpectrum& spectrum_b,
                                  const CutoffSpec& cutoff,
                                  const std::vector<double>& omega_grid) {
  if (spectrum_a.dimension() != spectrum_b.dimension())
    throw InvalidArgumentError(
        "difference_sweep: spectra must share dimension_d");
  check_grid(omega_grid);
  RegularizedSweep sweep;
  sweep.omega_grid = omega_grid;
  sweep.values.reserve(omega_grid.size());
  for (double w : omega_grid)
    sweep.values.push_back(f_regularized_sum(spectrum_a, cutoff, w) -
                           f_regularized_sum(spectrum_b, cutoff, w));
  sweep.cutoff_name = cutoff.name();
  sweep.spectrum_labels =
      spectrum_a.label() + " - " + spectrum_b.label();
  return sweep;
}

RegularizedSweep combine_sweeps(const std::vector<double>& weights,
                                const std::vector<RegularizedSweep>& sweeps) {
  if (weights.size() != sweeps.size() || sweeps.empty())
    throw InvalidArgumentError("combine_sweeps: need matching nonempty lists");
  RegularizedSweep out;
  out.omega_grid = sweeps.front().omega_grid;
  out.values.assign(out.omega_grid.size(), 0.0);
  out.cutoff_name = sweeps.front().cutoff_name;
  std::ostringstream label;
  for (size_t k = 0; k < sweeps.size(); ++k) {
    if (sweeps[k].omega_grid != out.omega_grid)
      throw InvalidArgumentError("combine_sweeps: grids differ");
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += weights[k] * sweeps[k].values[i];
    if (k) label << " + ";
    label << weights[k] << "*(" << sweeps[k].spectrum_labels << ")";
  }
  out.spectrum_labels = label.str();
  return out;
}

ExtrapolationResult extrapolate_finite_part(const RegularizedSweep& sweep,
                                            int d, double threshold_scale) {
  if (d < 0) throw InvalidArgumentError("extrapolate_finite_part: d < 0");
  const size_t n = sweep.omega_grid.size();
  if (n < static_cast<size_t>(d + 4))
    throw InvalidArgumentError(
        "extrapolate_finite_part: need at least d+4 sweep samples");
  if (!(sweep.omega_grid.back() >= 10.0 * sweep.omega_grid.front()))
    throw InvalidArgumentError(
        "extrapolate_finite_part: sweep must span at least one decade");

  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;
  for (int i = 0; i <= d; ++i) {
    const int p = d + 1 - i;
    std::vector<double> col(n);
    for (size_t j = 0; j < n; ++j)
      col[j] = std::pow(sweep.omega_grid[j], p);
    columns.push_back(std::move(col));
    names.push_back("Omega^" + std::to_string(p));
  }
  {
    std::vector<double> col(n);
    for (size_t j = 0; j < n; ++j)
      col[j] = 2.0 * std::log(sweep.omega_grid[j]);
    columns.push_back(std::move(col));
    names.push_back("log(Omega^2)");
  }
  columns.push_back(std::vector<double>(n, 1.0));

  LinearFit fit = least_squares(columns, sweep.values);
  if (!std::isfinite(fit.condition_number) || fit.condition_number > 1e10)
    throw ConditioningError(
        "extrapolate_finite_part: ill-conditioned fit (condition " +
        std::to_string(fit.condition_number) +
        "); widen the Omega grid span or add samples");

  double max_abs = 0.0;
  for (double v : sweep.values) max_abs = std::max(max_abs, std::abs(v));
  const double threshold = threshold_scale * max_abs;

  ExtrapolationResult result;
  result.fit = fit;
  result.finite_part = fit.coefficients.back();
  result.error_estimate = fit.std_errors.back();
  result.converged = true;
  for (size_t j = 0; j + 1 < columns.size(); ++j) {
    result.divergent_slots.emplace_back(names[j], fit.coefficients[j]);
    if (std::abs(fit.scaled_coefficients[j]) > threshold)
      result.converged = false;
  }
  return result;
}

double resum_difference(const ModeSpectrum& spectrum_a,
                        const ModeSpectrum& spectrum_b, ResumMethod method,
                        int riesz_order) {
  if (method == ResumMethod::ErfcExtrapolate) {
    const double cap = std::min(spectrum_a.max_valid_omega(),
                                spectrum_b.max_valid_omega());
    if (!(cap > 0.0))
      throw InvalidArgumentError("resum_difference: empty spectra");
    const double hi = cap / pure_erfc_singleton().safe_truncation_ratio();
    const double lo = hi / 20.0;
    if (!(lo > 0.0) || !(hi > lo))
      throw InvalidArgumentError(
          "resum_difference: spectra too short for an erfc sweep");
    RegularizedSweep sweep = difference_sweep(
        spectrum_a, spectrum_b, pure_erfc_singleton(), log_spaced(lo, hi, 16));
    return extrapolate_finite_part(sweep, spectrum_a.dimension()).finite_part;
  }

  // Index pairing after multiplicity expansion.
  std::vector<double> ea = spectrum_a.expand();
  std::vector<double> eb = spectrum_b.expand();
  const size_t n = std::min(ea.size(), eb.size());
  if (n == 0) throw InvalidArgumentError("resum_difference: empty spectra");
  std::vector<double> delta(n), mean(n);
  for (size_t i = 0; i < n; ++i) {
    delta[i] = ea[i] - eb[i];
    mean[i] = 0.5 * (ea[i] + eb[i]);
  }
  if (method == ResumMethod::Abel) return abel_resum(delta, mean);
  return riesz_resum(delta, riesz_order);
}

}  // namespace caslab
